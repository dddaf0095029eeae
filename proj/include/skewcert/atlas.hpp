#pragma once

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace skewcert {

inline constexpr int kFixtureSchema = 1;

/// Where a fixture value comes from: printed in the literature, immediate
/// from the definitions, or computed by an independent oracle.
enum class Source { Published, Trivial, Derived };
std::string to_string(Source s);
Source parse_source(const std::string& s);

struct Erratum {
  std::string id;
  std::string title;
  nlohmann::json published;       // the printed value
  nlohmann::json published_args;  // argument overrides for the printed version
  std::string note;
};

struct Expectation {
  std::string id;
  std::string op;
  nlohmann::json args = nlohmann::json::object();
  nlohmann::json expect;
  double tol = 0;
  Source source = Source::Derived;
  std::string oracle;  // required for derived values
  std::optional<Erratum> erratum;
};

struct Fixture {
  std::string name;
  std::string kind;  // lattice, map or combined
  std::string summary;
  nlohmann::json lattice;  // LatticeSystem spec or null
  nlohmann::json map;      // FieldEndo spec or null
  std::vector<Expectation> expectations;

  /// Validates the schema version, source tags and erratum fields.
  static Fixture from_json(const nlohmann::json& j);
  static Fixture load(const std::filesystem::path& file);
};

/// Fixture directory: the explicit override if given, then $SKEWCERT_FIXTURES,
/// then the directory compiled into the library.
std::filesystem::path fixture_dir(const std::optional<std::filesystem::path>& override_dir = std::nullopt);

struct FixtureSummary {
  std::string name;
  std::string kind;
  std::string summary;
};

/// Sorted by name.
std::vector<FixtureSummary> list_fixtures(const std::filesystem::path& dir);
/// Throws "unknown fixture" for a name without a file.
Fixture load_fixture(const std::filesystem::path& dir, const std::string& name);

/// Runs one operation against a fixture's inputs and returns the computed value.
nlohmann::json evaluate_op(const Fixture& fx, const std::string& op, const nlohmann::json& args);

/// Structural comparison: objects compare the expected keys only, a key
/// "k_head" compares a prefix of the array "k", numbers use `tol`, and strings
/// that read as quadratic numbers compare as numbers.
bool matches(const nlohmann::json& expected, const nlohmann::json& actual, double tol = 0);

struct ExpectationResult {
  std::string id;
  std::string op;
  Source source = Source::Derived;
  std::string oracle;
  bool passed = false;
  nlohmann::json expected;
  nlohmann::json actual;
  std::string error;
  std::optional<Erratum> erratum;
  nlohmann::json published_actual;
  bool published_matches = false;  // the printed value reproduced (not expected for errata)
  std::string published_error;
};

struct FixtureReport {
  std::string name;
  std::vector<ExpectationResult> results;
  bool passed() const;
  std::size_t failures() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

FixtureReport run_fixture(const Fixture& fx);
FixtureReport run_fixture(const std::filesystem::path& dir, const std::string& name);

/// ERRATA.md content from every erratum note under dir; each pair is executed.
std::string errata_markdown(const std::filesystem::path& dir);

}  // namespace skewcert

#include <doctest.h>

#include "skewcert/atlas.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace skewcert;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("skewcert_atlas_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream out(p);
  out << j.dump(2);
}

json minimal_fixture() {
  return json{{"schema", 1},
              {"name", "tiny"},
              {"kind", "lattice"},
              {"summary", "hyperbolic plane"},
              {"lattice", {{"gram", {{0, 1}, {1, 0}}}, {"pullback", {{2, 0}, {0, 1}}}}},
              {"expectations", json::array()}};
}

}  // namespace

TEST_CASE("every fixture passes") {
  const fs::path dir = fixture_dir();
  auto all = list_fixtures(dir);
  REQUIRE(all.size() >= 7);
  for (const auto& s : all) {
    auto rep = run_fixture(dir, s.name);
    if (!rep.passed()) std::cerr << rep.to_text() << "\n";
    CHECK_MESSAGE(rep.passed(), s.name);
    for (const auto& r : rep.results) {
      if (r.erratum) CHECK_MESSAGE(!r.published_matches, (s.name + "/" + r.id));
    }
  }
}

TEST_CASE("fixture listing is sorted and complete") {
  auto all = list_fixtures(fixture_dir());
  std::vector<std::string> names;
  for (const auto& s : all) names.push_back(s.name);
  CHECK(std::is_sorted(names.begin(), names.end()));
  for (const char* want : {"abelian-ExE", "cremona-involution", "henon", "identity-map", "k3-pic3",
                           "monomial-x-xy", "wehler-pic2"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
}

TEST_CASE("unknown fixture") {
  CHECK_THROWS_WITH(load_fixture(fixture_dir(), "no-such-thing"), "unknown fixture 'no-such-thing'");
}

TEST_CASE("fixture_dir override order") {
  CHECK(fixture_dir(fs::path("/tmp/x")) == fs::path("/tmp/x"));
  setenv("SKEWCERT_FIXTURES", "/tmp/y", 1);
  CHECK(fixture_dir() == fs::path("/tmp/y"));
  CHECK(fixture_dir(fs::path("/tmp/x")) == fs::path("/tmp/x"));
  unsetenv("SKEWCERT_FIXTURES");
  CHECK(fixture_dir() != fs::path("/tmp/y"));
}

TEST_CASE("matches") {
  CHECK(matches(json(3), json(3)));
  CHECK_FALSE(matches(json(3), json(4)));
  CHECK(matches(json(1.0), json(1.0 + 1e-9), 1e-6));
  CHECK_FALSE(matches(json(1.0), json(1.1), 1e-6));
  CHECK(matches(json{{"a", 1}}, json{{"a", 1}, {"b", 2}}));
  CHECK_FALSE(matches(json{{"a", 1}, {"c", 0}}, json{{"a", 1}, {"b", 2}}));
  CHECK(matches(json{{"v_head", {1, 2}}}, json{{"v", {1, 2, 3}}}));
  CHECK_FALSE(matches(json{{"v_head", {1, 3}}}, json{{"v", {1, 2, 3}}}));
  CHECK_FALSE(matches(json{{"v_head", {1, 2, 3, 4}}}, json{{"v", {1, 2, 3}}}));
  CHECK(matches(json("7+4*sqrt(3)"), json("7 + 4*sqrt(3)")));
  CHECK(matches(json(6), json("6")));
  CHECK(matches(json("12/5"), json("24/10")));
  CHECK_FALSE(matches(json("2*sqrt(3)"), json("2*sqrt(5)")));
  CHECK(matches(json{1, "1/2"}, json{"1", "2/4"}));
  CHECK_FALSE(matches(json{1, 2}, json{1, 2, 3}));
  CHECK(matches(json(true), json(true)));
  CHECK_FALSE(matches(json(true), json(false)));
  CHECK(matches(json("FreeUpTo(3)"), json("FreeUpTo(3)")));
  CHECK_FALSE(matches(json("FreeUpTo(3)"), json("FreeUpTo(2)")));
}

TEST_CASE("schema validation") {
  const fs::path dir = scratch_dir("schema");
  json fx = minimal_fixture();
  CHECK_NOTHROW(Fixture::from_json(fx));

  json bad = fx;
  bad["schema"] = 2;
  CHECK_THROWS(Fixture::from_json(bad));

  bad = fx;
  bad["expectations"] = {{{"id", "x"}, {"op", "signature"}, {"expect", {1, 1}}}};
  CHECK_THROWS(Fixture::from_json(bad));  // no source

  bad["expectations"][0]["source"] = "folklore";
  CHECK_THROWS(Fixture::from_json(bad));

  bad["expectations"][0]["source"] = "derived";
  CHECK_THROWS(Fixture::from_json(bad));  // no oracle

  bad["expectations"][0]["oracle"] = "congruence diagonalization";
  CHECK_NOTHROW(Fixture::from_json(bad));

  json er = bad;
  er["expectations"][0]["source"] = "published";
  er["expectations"][0]["erratum"] = {{"id", "E1"}, {"title", "t"}, {"published", {2, 0}}, {"note", "n"}};
  CHECK_THROWS(Fixture::from_json(er));  // errata belong to derived values
}

TEST_CASE("scratch fixture runs and errata are generated") {
  const fs::path dir = scratch_dir("run");
  json fx = minimal_fixture();
  fx["expectations"] = {
      {{"id", "signature"}, {"op", "signature"}, {"expect", {1, 1}}, {"source", "trivial"}},
      {{"id", "radius"},
       {"op", "spectral_radius"},
       {"expect", {{"exact", "2"}}},
       {"source", "derived"},
       {"oracle", "diagonal matrix"},
       {"erratum", {{"id", "E1"}, {"title", "Radius"}, {"published", {{"exact", "3"}}}, {"note", "two, not three"}}}},
      {{"id", "wrong"}, {"op", "signature"}, {"expect", {2, 0}}, {"source", "trivial"}},
  };
  write_json(dir / "tiny.json", fx);
  auto rep = run_fixture(dir, "tiny");
  REQUIRE(rep.results.size() == 3);
  CHECK(rep.results[0].passed);
  CHECK(rep.results[1].passed);
  CHECK_FALSE(rep.results[1].published_matches);
  CHECK_FALSE(rep.results[2].passed);
  CHECK(rep.failures() == 1);
  CHECK_FALSE(rep.passed());
  CHECK(rep.to_json()["results"].size() == 3);
  CHECK(rep.to_text().find("FAIL") != std::string::npos);

  std::string md = errata_markdown(dir);
  CHECK(md.rfind("# Errata", 0) == 0);
  CHECK(md.find("E1. Radius") != std::string::npos);
  CHECK(md.find("two, not three") != std::string::npos);
}

TEST_CASE("unknown operations are rejected at load") {
  json fx = minimal_fixture();
  fx["expectations"] = {{{"id", "nope"}, {"op", "no_such_op"}, {"expect", 0}, {"source", "trivial"}}};
  CHECK_THROWS_WITH(Fixture::from_json(fx), "tiny/nope: unknown operation 'no_such_op'");
}

TEST_CASE("operation errors are reported, not thrown") {
  const fs::path dir = scratch_dir("badop");
  json fx = minimal_fixture();
  fx["expectations"] = {{{"id", "split"}, {"op", "hyperbolic_split"}, {"args", {{"H", "missing"}}},
                         {"expect", 0}, {"source", "trivial"}}};
  write_json(dir / "tiny.json", fx);
  auto rep = run_fixture(dir, "tiny");
  REQUIRE(rep.results.size() == 1);
  CHECK_FALSE(rep.results[0].passed);
  CHECK_FALSE(rep.results[0].error.empty());
}

TEST_CASE("repository errata cover every erratum") {
  std::string md = errata_markdown(fixture_dir());
  for (int i = 1; i <= 10; ++i) CHECK_MESSAGE(md.find("## E" + std::to_string(i) + ". ") != std::string::npos, (i));
  CHECK(md.find("ABBA") != std::string::npos);
}

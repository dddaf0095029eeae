#pragma once

#include "skewcert/fieldendo.hpp"
#include "skewcert/skewring.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace skewcert {

/// A rational curve s -> (x_1(s), .., x_n(s)) with the checks made on it.
struct CurveRestriction {
  Vars param_vars;              // {"s"}
  std::vector<RatFunc> param;   // one univariate image per map variable
  std::vector<std::string> validity_log;

  /// Comma separated coordinates in s, e.g. "s,3" or "s,2*s+1".
  static CurveRestriction parse(const std::string& text, std::size_t nvars);
  /// x = s, y = c.
  static CurveRestriction horizontal_line(const Rational& c);
  std::string to_string() const;
};

/// Degree of a univariate rational function as a map to P^1.
int map_degree(const RatFunc& g);

struct Restricted {
  RatFunc value;
  int degree = 0;
};

/// Throws "curve inside polar locus" when f's denominator vanishes on C.
Restricted restrict_to_curve(const RatFunc& f, const CurveRestriction& C);

enum class RankRoute { Proportional, Symbolic, LineModular };
std::string to_string(RankRoute r);

struct WitnessTerm {
  std::string word;
  Integer coeff;
};

/// Result for the words of length j+1.
struct LevelResult {
  unsigned j = 0;
  std::size_t dim = 0;
  std::size_t words = 0;
  RankRoute route = RankRoute::Symbolic;
  std::string detail;
  /// First dependency in word order (symbolic route only).
  std::vector<WitnessTerm> witness;
};

struct DimensionOptions {
  /// Largest total term count of cached iterates the symbolic route may build.
  std::size_t symbolic_term_budget = 60000;
  /// Largest estimated total term count over all word products of one level.
  std::size_t product_term_budget = 3000000;
  bool allow_symbolic = true;
  bool allow_line = true;
  /// Prefer the restricted-line route even when the symbolic route fits.
  bool prefer_line = false;
  unsigned line_attempts = 6;
};

/// Graded dimensions of k{a t^n, b t^n}. Two routes:
///  - symbolic: words as cleared polynomials, exact integer rank by incremental
///    fraction-free elimination in word order (also yields dependency witnesses);
///  - line: words restricted to a line and reduced mod a 31-bit prime. Full rank
///    there certifies full rank over Q; anything less falls back to the symbolic route.
class DimensionEngine {
 public:
  DimensionEngine(FieldEndo sigma, RatFunc a, RatFunc b, unsigned n, DimensionOptions opts = {});
  ~DimensionEngine();
  DimensionEngine(const DimensionEngine&) = delete;
  DimensionEngine& operator=(const DimensionEngine&) = delete;

  bool proportional() const { return proportional_; }
  const LevelResult& level(unsigned j);

 private:
  struct LineState;
  struct SymbolicState;
  std::optional<LevelResult> symbolic_level(unsigned j);
  std::optional<LevelResult> line_level(unsigned j);
  bool symbolic_feasible(unsigned j);

  FieldEndo sigma_;
  RatFunc a_, b_;
  unsigned n_;
  DimensionOptions opts_;
  bool proportional_ = false;
  Rational ratio_;  // b = ratio * a when proportional
  std::map<unsigned, LevelResult> levels_;
  std::vector<std::unique_ptr<LineState>> lines_;
  std::unique_ptr<SymbolicState> sym_;
};

std::size_t graded_dimension(const FieldEndo& sigma, const RatFunc& a, const RatFunc& b, unsigned n,
                             unsigned j, const DimensionOptions& opts = {});

struct FreenessCertificate {
  nlohmann::json map_spec;
  RatFunc a{make_vars({})}, b{make_vars({})};
  unsigned step = 1;
  unsigned depth = 0;
  std::vector<std::size_t> dims;
  bool free = true;
  long at_degree = 0;  // t-degree of the first deficient component
  std::vector<WitnessTerm> witness;
  std::vector<LevelResult> levels;

  std::string verdict() const;
  nlohmann::json to_json() const;
};

FreenessCertificate certify_free(const FieldEndo& sigma, const RatFunc& a, const RatFunc& b,
                                 unsigned n, unsigned j_max, const DimensionOptions& opts = {});

/// sum coeff_w * (word w as a ring product); zero for a sound witness.
SkewElement expand_witness(const std::vector<WitnessTerm>& witness, const RatFunc& a,
                           const RatFunc& b, const FieldEndo& sigma, unsigned n);

struct DoublingProfile {
  std::vector<int> degrees;
  bool holds = false;
  bool curve_contracted = false;
  std::string reason;
  std::vector<std::string> validity_log;
  nlohmann::json to_json() const;
};

/// d_j = deg(sigma^(n j)(h) restricted to C) for j = 0..j_max. Holds when every
/// d_j >= 1 and d_(j+1) >= 2 d_j.
DoublingProfile doubling_profile(const FieldEndo& sigma, const RatFunc& h, CurveRestriction C,
                                 unsigned n, unsigned j_max);

/// First horizontal line y = c (c from a fixed list) on which every
/// sigma^(n j)(h), j <= j_max, restricts to a nonzero finite function.
CurveRestriction select_line(const FieldEndo& sigma, const RatFunc& h, unsigned n, unsigned j_max);

struct Lemma63Report {
  std::size_t dim_T = 0;
  std::size_t dim_TU = 0;
  bool hypothesis_verified = false;
  std::optional<bool> verdict;  // set only when the hypothesis is verified
  std::string status;
};

/// U = span{1, f}; checks dim(TU) = 2 dim(T) under deg f > deg g for g in span(T).
Lemma63Report lemma63_check(const std::vector<RatFunc>& T, const RatFunc& f);

struct PowerLiftReport {
  FreenessCertificate antecedent;  // step i, depth m * j_max
  FreenessCertificate consequent;  // step i*m, depth j_max
  bool implication_holds = false;
  std::string status;
  nlohmann::json to_json() const;
};

/// Freeness of k{a t^i, b t^i} on words up to length m j_max + 1 forces freeness
/// of k{a t^(im), b t^(im)} on words up to length j_max + 1.
PowerLiftReport power_lift_check(const FieldEndo& sigma, const RatFunc& a, const RatFunc& b,
                                 unsigned i, unsigned m, unsigned j_max,
                                 const DimensionOptions& opts = {});

struct GrowthProfile {
  std::vector<std::size_t> dims;  // dims[m-1] = dim V^m
  std::vector<double> ratios;
  bool exponential = false;
  double estimate = 0;  // growth ratio when exponential, fitted degree otherwise
  std::string summary;
  nlohmann::json to_json() const;
};

/// dim of V^m (V = span of the generators, each placed in t-degree n) for m = 1..N.
GrowthProfile growth_profile(const FieldEndo& sigma, const std::vector<RatFunc>& generators,
                             unsigned N, unsigned n = 1, const DimensionOptions& opts = {});

}  // namespace skewcert

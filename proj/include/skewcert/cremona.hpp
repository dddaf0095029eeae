#pragma once

#include "skewcert/fieldendo.hpp"
#include "skewcert/multipoly.hpp"
#include "skewcert/quadext.hpp"
#include "skewcert/unipoly.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace skewcert {

/// The variable list x, y, z shared by every plane map.
const Vars& plane_vars();

/// Rational self-map of P^2 as a triple of coprime forms of equal degree.
/// Triples are normalized: integer coefficients with content 1 across all
/// three, first nonzero form with positive leading coefficient. Two maps are
/// equal iff their normalized triples are.
class PlaneMap {
 public:
  /// Divides out the common factor; throws for zero triples or forms of
  /// unequal degree.
  explicit PlaneMap(std::array<MultiPoly, 3> forms);

  static PlaneMap identity();
  /// {"forms": [f1, f2, f3], "vars"?: [x, y, z]} or an affine map in the
  /// FieldEndo format {"vars": [x, y], "images": [...]}.
  static PlaneMap from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;

  const std::array<MultiPoly, 3>& forms() const { return forms_; }
  const MultiPoly& operator[](std::size_t i) const { return forms_[i]; }
  int degree() const { return degree_; }
  bool is_identity() const;
  std::size_t term_count() const;

  bool operator==(const PlaneMap& o) const { return forms_ == o.forms_; }
  bool operator!=(const PlaneMap& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  std::array<MultiPoly, 3> forms_;
  int degree_ = 0;
};

/// (x, y) -> (f, g) read on the chart z = 1. Throws "degenerate map" when the
/// image is a curve or a point.
PlaneMap homogenize(const RatFunc& f, const RatFunc& g);
/// Two-variable endomorphism given by its images.
PlaneMap homogenize(const FieldEndo& sigma);

/// sigma o tau: tau's forms substituted into sigma's, common factor removed.
PlaneMap compose_primitive(const PlaneMap& sigma, const PlaneMap& tau);

struct CremonaOptions {
  int max_degree = 512;
  std::size_t max_terms = 2'000'000;  // summed over the three forms
};

struct DegreeSequence {
  std::vector<int> degrees;  // deg sigma^n for n = 1..
  std::vector<int> drops;    // n with d_(n+1) < d_1 d_n
  /// d_n = c_1 d_(n-1) + ... + c_k d_(n-k) for n > start + k (1-based n).
  std::optional<std::vector<Integer>> recurrence;
  int recurrence_start = 0;
  double root_estimate = 0;  // d_N^(1/N)
  /// Dominant root of the recurrence, exact when quadratic or rational.
  std::optional<QuadExt> recurrence_lambda;
  std::optional<double> recurrence_estimate;
  double lambda_estimate = 0;
  bool partial = false;
  std::string note;

  nlohmann::json to_json() const;
};

/// Degrees of sigma^1..sigma^N by iterated compose_primitive. Stops with a
/// partial sequence once the next iterate would exceed the budget.
DegreeSequence degree_sequence(const PlaneMap& sigma, unsigned N, const CremonaOptions& opts = {});

/// Shortest integer linear recurrence of order <= max_order matching every
/// term from some start on; at least two checks beyond the defining equations.
std::optional<std::pair<std::vector<Integer>, int>> fit_recurrence(const std::vector<int>& d,
                                                                   int max_order = 4);

/// pi^-1 o sigma o pi, after checking that pi_inv inverts pi on both sides.
PlaneMap conjugate_map(const PlaneMap& sigma, const PlaneMap& pi, const PlaneMap& pi_inv);

struct FactorPower {
  MultiPoly factor;
  int multiplicity = 1;
};

struct ContractedCurves {
  MultiPoly jacobian{plane_vars()};
  Rational unit;                     // jacobian = unit * prod factor^multiplicity
  std::vector<FactorPower> factors;  // pairwise coprime, square-free
  nlohmann::json to_json() const;
};

/// Square-free split of a nonzero polynomial: coprime square-free factors
/// with multiplicities. Monomial parts are split variable by variable.
std::pair<Rational, std::vector<FactorPower>> square_free_factors(const MultiPoly& f);

/// Jacobian determinant of the three forms with its square-free split; the
/// factors cut out the candidate contracted curves. Throws "map not
/// birational" when the determinant vanishes.
ContractedCurves contracted_curves(const PlaneMap& sigma);

struct NongeometricReport {
  std::optional<QuadExt> lambda;
  std::vector<Rational> minimal_polynomial;
  bool algebraic_integer = false;
  bool unit = false;  // root of a monic integer polynomial with constant term +-1
  bool obstruction = false;
  std::string explanation;
  nlohmann::json to_json() const;
};

/// Whether lambda can be the spectral radius of a lattice isometry: such a
/// radius is a root of a monic integer characteristic polynomial with
/// constant term +-1, so lambda must be an algebraic unit.
NongeometricReport henon_nongeometric_report(const QuadExt& lambda);
/// Uses the exact recurrence root; inconclusive without one.
NongeometricReport henon_nongeometric_report(const DegreeSequence& seq);

}  // namespace skewcert

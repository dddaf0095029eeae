#pragma once

#include "skewcert/linalg.hpp"
#include "skewcert/quadext.hpp"
#include "skewcert/unipoly.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skewcert {

using QuadMatrix = Matrix<QuadExt>;
using RatVector = std::vector<Rational>;
using QuadVector = std::vector<QuadExt>;

/// Gram matrix of the intersection form plus the pullback (and optionally the
/// pushforward) on a finite-rank lattice, with named classes.
struct LatticeSystem {
  RatMatrix gram;
  RatMatrix pullback;
  std::optional<RatMatrix> pushforward;
  std::map<std::string, RatVector> classes;

  std::size_t rank() const { return gram.rows(); }
  const RatVector& cls(const std::string& name) const;

  /// {"gram": [[...]], "pullback": [[...]], "pushforward"?: [[...]], "classes": {"H": [...]}}
  static LatticeSystem from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;
};

RatMatrix matrix_from_json(const nlohmann::json& rows);
nlohmann::json matrix_to_json(const RatMatrix& m);
QuadMatrix to_quad(const RatMatrix& m);
QuadVector to_quad(const RatVector& v);

/// u^T G v
Rational pairing(const RatMatrix& G, const RatVector& u, const RatVector& v);
QuadExt pairing(const QuadMatrix& G, const QuadVector& u, const QuadVector& v);

struct Inertia {
  std::size_t positive = 0, negative = 0, zero = 0;
};

/// Inertia of a symmetric matrix by congruence diagonalization.
Inertia inertia(const RatMatrix& G);
Inertia inertia(const QuadMatrix& G);

struct Signature {
  std::size_t p = 0, q = 0;
  bool operator==(const Signature& o) const { return p == o.p && q == o.q; }
};

/// Throws for a degenerate G, listing a kernel basis.
Signature signature(const RatMatrix& G);

/// M^T G M == G exactly.
bool is_isometry(const RatMatrix& M, const RatMatrix& G);
/// (M u).v == u.(P v) for all u, v, i.e. M^T G == G P.
bool is_adjoint(const RatMatrix& M, const RatMatrix& P, const RatMatrix& G);

struct SpectralRadius {
  UniPoly charpoly;
  /// Set when the dominant modulus is a rational or quadratic irrational.
  std::optional<QuadExt> exact;
  /// Real eigenvalue of maximal modulus when it attains the spectral radius
  /// (may be negative); exact when `exact` is set.
  std::optional<QuadExt> dominant_root;
  /// Certified enclosure lo <= rho <= hi.
  Rational lo, hi;
  bool attained_by_real_root = false;
  bool simple = false;
  std::string method;

  double approx() const;
  nlohmann::json to_json() const;
};

/// Spectral radius of a square rational matrix: exact in Q(sqrt d) when the
/// dominant root has degree <= 2, otherwise an enclosure narrower than 10^-20.
SpectralRadius spectral_radius(const RatMatrix& M);

/// [H] = e_+ + e_- + w with M e_+- = lambda^(+-1) e_+-, w orthogonal to both.
struct HyperbolicSplit {
  QuadExt lambda;
  QuadVector H, e_plus, e_minus, w;
  QuadExt pairing;  // e_+ . e_-
  QuadExt ww;       // w . w
  std::vector<std::string> checks;
  nlohmann::json to_json() const;
};

HyperbolicSplit hyperbolic_split(const RatMatrix& M, const RatMatrix& G, const RatVector& H);

/// Largest dimension of a totally isotropic subspace containing the isotropic
/// vector e (1 for a hyperbolic form).
std::size_t isotropic_extension_dimension(const RatMatrix& G, const QuadVector& e);

struct IntersectionSequence {
  std::vector<Rational> values;  // (M^j H) . C
  bool doubling_holds = false;
  std::optional<unsigned> failed_at;  // first j with s_(j+1) <= 2 s_j
  std::vector<std::string> log;
  nlohmann::json to_json() const;
};

/// s_j = (M^j H) . C for j = 0..j_max by integer powering; doubling holds iff
/// s_(j+1) > 2 s_j for all j < j_max.
IntersectionSequence intersection_sequence(const RatMatrix& M, const RatMatrix& G, const RatVector& H,
                                           const RatVector& C, unsigned j_max);

/// (lambda^j + lambda^-j)(e_+ . e_-) + (M^j w) . w, equal to (M^j H) . H.
QuadExt closed_form_intersection(const HyperbolicSplit& s, const RatMatrix& M, const RatMatrix& G,
                                 unsigned j);

struct CauchySchwarzRow {
  unsigned j = 0;
  QuadExt mjw_w;  // (M^j w) . w
  bool bound_holds = false;
  bool equality = false;
  QuadExt lhs, rhs;  // both sides of the strict growth inequality at j
  bool growth_holds = false;
};

struct CauchySchwarzReport {
  std::vector<CauchySchwarzRow> rows;
  bool bounds_hold = true;
  bool growth_holds = true;
  nlohmann::json to_json() const;
};

/// Checks |(M^j w).w| <= |w.w| and
/// lambda^(j+1) + lambda^-(j+1) + (M^(j+1) w).w / p > 2 (lambda^j + lambda^-j + (M^j w).w / p)
/// with p = e_+ . e_-, for j = 0..j_max.
CauchySchwarzReport cauchy_schwarz_check(const RatMatrix& M, const RatMatrix& G,
                                         const HyperbolicSplit& split, unsigned j_max);

enum class Threshold { Main, Improved };
/// 5 + 2 sqrt 6 (Main) or 2 + sqrt 3 (Improved).
QuadExt threshold_value(Threshold t);
Threshold parse_threshold(const std::string& name);

struct ThresholdResult {
  std::optional<unsigned> n;
  bool boundary = false;  // lambda^n equals the bound exactly
  std::string note;
};

/// Smallest n with lambda^n >= bound (>= passes, boundary flagged).
ThresholdResult threshold_min_power(const QuadExt& lambda, Threshold t);
/// Same for an enclosure lo <= lambda <= hi; throws "precision exhausted" when
/// the enclosure straddles the decision.
ThresholdResult threshold_min_power(const Rational& lo, const Rational& hi, Threshold t);

struct CorImproveReport {
  bool applies = false;
  UniPoly charpoly;           // of M^n
  std::size_t unit_multiplicity = 0;  // power of (x - 1)
  UniPoly rest;               // charpoly / (x - 1)^k
  std::string report;
  nlohmann::json to_json() const;
};

/// True iff the eigenvalues of M^n are 1 (any multiplicity) and one reciprocal
/// pair lambda^n, lambda^-n with lambda^n > 1.
CorImproveReport cor_improve_applies(const RatMatrix& M, unsigned n);

}  // namespace skewcert

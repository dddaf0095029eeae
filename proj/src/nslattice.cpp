#include "skewcert/nslattice.hpp"

#include "skewcert/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skewcert {

namespace {

int sign_of(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }
int sign_of(const QuadExt& q) { return q.sign(); }

Rational json_rational(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw Error("lattice entries must be integers or rational strings, got " + v.dump());
}

nlohmann::json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return skewcert::to_string(q);
}

std::string vector_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + skewcert::to_string(v[i]);
  return s + ")";
}

template <class T>
Inertia inertia_impl(Matrix<T> A) {
  if (!A.is_symmetric()) throw Error("Gram matrix is not symmetric");
  const std::size_t n = A.rows();
  Inertia r;
  auto swap_index = [&](std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(A(i, c), A(k, c));
    for (std::size_t c = 0; c < n; ++c) std::swap(A(c, i), A(c, k));
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (sign_of(A(i, i)) != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // Zero diagonal: add row/column j to i where A(i, j) != 0.
      for (std::size_t i = k; i < n && piv == n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (i != j && sign_of(A(i, j)) != 0) {
            for (std::size_t c = 0; c < n; ++c) A(i, c) = A(i, c) + A(j, c);
            for (std::size_t c = 0; c < n; ++c) A(c, i) = A(c, i) + A(c, j);
            piv = i;
            break;
          }
      if (piv == n) {
        r.zero = n - k;
        return r;
      }
    }
    swap_index(piv, k);
    const T d = A(k, k);
    (sign_of(d) > 0 ? r.positive : r.negative)++;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sign_of(A(i, k)) == 0) continue;
      T f = A(i, k) / d;
      for (std::size_t c = k; c < n; ++c) A(i, c) = A(i, c) - f * A(k, c);
      for (std::size_t c = k; c < n; ++c) A(c, i) = A(c, i) - f * A(c, k);
    }
  }
  return r;
}

void check_square(const RatMatrix& M, const char* what) {
  if (!M.is_square()) throw Error(std::string(what) + " must be square");
}

void check_vector(const RatMatrix& M, const RatVector& v, const char* what) {
  if (v.size() != M.rows()) throw Error(std::string(what) + " has the wrong length");
}

// floor(sqrt(q) * 2^k) / 2^k and the matching upper bound.
std::pair<Rational, Rational> sqrt_bounds(const Rational& q, unsigned k) {
  if (q < 0) throw Error("square root of a negative number");
  Integer scale = Integer(1) << (2 * k);
  Rational s = q * Rational(scale);
  Integer fl = s.get_num() / s.get_den();
  Integer lo = isqrt(fl);
  Integer hi = lo;
  Integer ce = fl + (s.get_den() == 1 ? 0 : 1);
  while (hi * hi < ce) ++hi;
  Integer den = Integer(1) << k;
  return {make_rational(lo, den), make_rational(hi, den)};
}

Rational two_pow(int e) {
  if (e >= 0) return Rational(Integer(1) << e);
  return make_rational(1, Integer(1) << (-e));
}

QuadExt rounded(const Rational& q) {
  // nearest integer
  Rational h = q + Rational(1, 2);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return QuadExt(Rational(f));
}

bool in_interval(const QuadExt& x, const RootInterval& r) {
  if (r.exact()) return x == QuadExt(r.lo);
  return QuadExt(r.lo) < x && x <= QuadExt(r.hi);
}

QuadVector mat_vec(const QuadMatrix& M, const QuadVector& v) { return M.apply(v); }

}  // namespace

// ---------------------------------------------------------------- lattice data

const RatVector& LatticeSystem::cls(const std::string& name) const {
  auto it = classes.find(name);
  if (it == classes.end()) throw Error("lattice has no class named '" + name + "'");
  return it->second;
}

RatMatrix matrix_from_json(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty()) throw Error("matrix must be a nonempty array of rows");
  const std::size_t r = rows.size(), c = rows[0].size();
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = json_rational(rows[i][j]);
  }
  return m;
}

nlohmann::json matrix_to_json(const RatMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

QuadMatrix to_quad(const RatMatrix& m) {
  return m.map<QuadExt>([](const Rational& q) { return QuadExt(q); });
}

QuadVector to_quad(const RatVector& v) { return QuadVector(v.begin(), v.end()); }

LatticeSystem LatticeSystem::from_json(const nlohmann::json& spec) {
  LatticeSystem L;
  L.gram = matrix_from_json(spec.at("gram"));
  L.pullback = matrix_from_json(spec.at("pullback"));
  check_square(L.gram, "gram");
  if (!L.gram.is_symmetric()) throw Error("gram must be symmetric");
  if (L.pullback.rows() != L.rank() || L.pullback.cols() != L.rank())
    throw Error("pullback shape does not match gram");
  if (spec.contains("pushforward")) {
    L.pushforward = matrix_from_json(spec.at("pushforward"));
    if (L.pushforward->rows() != L.rank() || L.pushforward->cols() != L.rank())
      throw Error("pushforward shape does not match gram");
  }
  if (spec.contains("classes"))
    for (const auto& [name, v] : spec.at("classes").items()) {
      RatVector x;
      for (const auto& e : v) x.push_back(json_rational(e));
      if (x.size() != L.rank()) throw Error("class '" + name + "' has the wrong length");
      L.classes[name] = x;
    }
  return L;
}

nlohmann::json LatticeSystem::to_json() const {
  nlohmann::json j;
  j["gram"] = matrix_to_json(gram);
  j["pullback"] = matrix_to_json(pullback);
  if (pushforward) j["pushforward"] = matrix_to_json(*pushforward);
  nlohmann::json cl = nlohmann::json::object();
  for (const auto& [name, v] : classes) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(rational_json(x));
    cl[name] = a;
  }
  j["classes"] = cl;
  return j;
}

Rational pairing(const RatMatrix& G, const RatVector& u, const RatVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s += u[i] * G(i, j) * v[j];
  return s;
}

QuadExt pairing(const QuadMatrix& G, const QuadVector& u, const QuadVector& v) {
  QuadExt s(0);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s += u[i] * G(i, j) * v[j];
  return s;
}

Inertia inertia(const RatMatrix& G) { return inertia_impl(G); }
Inertia inertia(const QuadMatrix& G) { return inertia_impl(G); }

Signature signature(const RatMatrix& G) {
  check_square(G, "gram");
  Inertia in = inertia(G);
  if (in.zero > 0) {
    std::string basis;
    for (const auto& v : nullspace(G)) basis += (basis.empty() ? "" : ", ") + vector_string(v);
    throw Error("degenerate Gram matrix; kernel basis: " + basis);
  }
  return {in.positive, in.negative};
}

bool is_isometry(const RatMatrix& M, const RatMatrix& G) {
  if (M.rows() != G.rows() || M.cols() != G.cols()) throw Error("pullback shape does not match gram");
  return M.transpose() * G * M == G;
}

bool is_adjoint(const RatMatrix& M, const RatMatrix& P, const RatMatrix& G) {
  return M.transpose() * G == G * P;
}

// ---------------------------------------------------------------- spectral radius

double SpectralRadius::approx() const { return to_double((lo + hi) / 2); }

nlohmann::json SpectralRadius::to_json() const {
  nlohmann::json j;
  j["charpoly"] = charpoly.to_string();
  if (exact) j["exact"] = exact->to_string();
  if (dominant_root) j["dominant_root"] = dominant_root->to_string();
  j["lo"] = skewcert::to_string(lo);
  j["hi"] = skewcert::to_string(hi);
  j["approx"] = approx();
  j["attained_by_real_root"] = attained_by_real_root;
  j["simple"] = simple;
  j["method"] = method;
  return j;
}

SpectralRadius spectral_radius(const RatMatrix& M) {
  check_square(M, "matrix");
  const std::size_t n = M.rows();
  if (n == 0) throw Error("spectral radius of an empty matrix");
  SpectralRadius R;
  R.charpoly = charpoly(M);
  const Rational tiny = two_pow(-80);

  // rho^2 is the largest real root of the characteristic polynomial of M (x) M,
  // whose roots are the products of pairs of eigenvalues.
  RatMatrix K(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) K(i * n + k, j * n + l) = M(i, j) * M(k, l);
  UniPoly sq = square_free_part(charpoly(K));
  auto sq_roots = isolate_real_roots(sq);
  const RootInterval rho2_isolating = sq_roots.back();
  RootInterval rho2 = rho2_isolating;
  refine_root(sq, rho2, tiny);

  UniPoly ps = square_free_part(R.charpoly);
  auto roots = isolate_real_roots(ps);
  std::optional<RootInterval> top;
  for (auto& r : roots) {
    refine_root(ps, r, tiny);
    if (!top || abs(r.mid()) > abs(top->mid()) ||
        (abs(r.mid()) == abs(top->mid()) && r.mid() > top->mid()))
      top = r;
  }
  if (top) {
    // top^2 is a root of sq; it is rho^2 iff it lies in rho^2's isolating interval.
    Rational a = top->lo * top->lo, b = top->hi * top->hi;
    Rational l2 = std::min(a, b), h2 = std::max(a, b);
    if (top->lo < 0 && top->hi > 0) l2 = 0;
    bool inside = rho2_isolating.exact() ? (l2 == rho2_isolating.lo && h2 == rho2_isolating.lo)
                                          : (l2 > rho2_isolating.lo && h2 <= rho2_isolating.hi);
    R.attained_by_real_root = inside;
  }

  if (R.attained_by_real_root) {
    const RootInterval& r = *top;
    // Integer monic model: roots of P~(y) = a^(n-1) P(y/a) are a * roots.
    UniPoly P = R.charpoly.primitive();
    const Rational a = P.lc();
    std::vector<Rational> mc(P.coeffs().size());
    for (std::size_t k = 0; k < mc.size(); ++k) {
      Rational f = P.coeffs()[k];
      for (std::size_t e = k; e + 1 < mc.size(); ++e) f *= a;
      mc[k] = f / a;
    }
    UniPoly Pm(mc);
    std::optional<QuadExt> lambda;
    QuadExt c = rounded(a * r.mid());
    if (Pm(c) == QuadExt(0) && in_interval(c / QuadExt(a), r)) {
      lambda = c / QuadExt(a);
      R.method = "exact: linear factor x - " + lambda->to_string();
    }
    for (const auto& other : roots) {
      if (lambda) break;
      if (other.lo == r.lo && other.hi == r.hi) continue;
      Rational s = rounded(a * (r.mid() + other.mid())).a();
      Rational p = rounded(a * a * r.mid() * other.mid()).a();
      UniPoly q({p, -s, Rational(1)});
      if (!divrem(Pm, q).second.is_zero()) continue;
      Rational disc = s * s - 4 * p;
      if (disc <= 0) continue;
      QuadExt root = QuadExt(s / 2, Rational(1, 2), disc.get_num());
      if (r.mid() < other.mid()) root = QuadExt(s / 2, Rational(-1, 2), disc.get_num());
      QuadExt cand = root / QuadExt(a);
      if (in_interval(cand, r)) {
        lambda = cand;
        R.method = "exact: quadratic factor " + q.to_string() +
                   (a == 1 ? "" : " (scaled by " + skewcert::to_string(a) + ")");
      }
    }
    R.lo = r.mid() < 0 ? -r.hi : r.lo;
    R.hi = r.mid() < 0 ? -r.lo : r.hi;
    if (lambda) {
      R.dominant_root = lambda;
      R.exact = lambda->sign() < 0 ? -*lambda : *lambda;
      R.simple = R.charpoly.derivative()(*lambda) != QuadExt(0);
    } else {
      R.method = "dominant real root isolated by Sturm bisection to width < 2^-80";
      UniPoly g = gcd(R.charpoly, R.charpoly.derivative());
      R.simple = g.degree() <= 0 || SturmSequence(square_free_part(g)).count(r.lo, r.hi) == 0;
    }
  } else {
    auto lo = sqrt_bounds(rho2.lo, 90).first;
    auto hi = sqrt_bounds(rho2.hi, 90).second;
    R.lo = lo;
    R.hi = hi;
    R.method = "largest real root of the Kronecker-square characteristic polynomial, square-rooted";
  }
  return R;
}

// ---------------------------------------------------------------- split

nlohmann::json HyperbolicSplit::to_json() const {
  auto vec = [](const QuadVector& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(x.to_string());
    return a;
  };
  return {{"lambda", lambda.to_string()}, {"H", vec(H)},         {"e_plus", vec(e_plus)},
          {"e_minus", vec(e_minus)},      {"w", vec(w)},         {"e_plus.e_minus", pairing.to_string()},
          {"w.w", ww.to_string()},        {"checks", checks}};
}

HyperbolicSplit hyperbolic_split(const RatMatrix& M, const RatMatrix& G, const RatVector& H) {
  check_square(M, "pullback");
  check_vector(M, H, "H");
  if (!is_isometry(M, G)) throw Error("pullback is not an isometry of the intersection form");
  SpectralRadius R = spectral_radius(M);
  if (R.hi <= 1 || (R.exact && *R.exact <= QuadExt(1))) throw Error("not hyperbolic");
  if (!R.exact || !R.dominant_root)
    throw Error("precision exhausted: the dominant eigenvalue is not quadratic and no exact split "
                "exists; retry with interval arithmetic at higher precision");
  if (pairing(G, H, H) <= 0) throw Error("H.H must be positive");

  HyperbolicSplit S;
  S.lambda = *R.dominant_root;
  const QuadMatrix Mq = to_quad(M), Gq = to_quad(G);
  const std::size_t d = M.rows();
  auto eigenvector = [&](const QuadExt& mu) {
    QuadMatrix A = Mq;
    for (std::size_t i = 0; i < d; ++i) A(i, i) = A(i, i) - mu;
    auto ns = nullspace(A);
    if (ns.size() != 1) throw Error("eigenvalue " + mu.to_string() + " is not simple");
    return ns[0];
  };
  QuadVector ep = eigenvector(S.lambda), em = eigenvector(QuadExt(1) / S.lambda);
  QuadVector Hq = to_quad(H);
  QuadExt p = pairing(Gq, ep, em);
  if (p == QuadExt(0)) throw Error("e_+ . e_- = 0: eigenlines span a totally isotropic plane");
  QuadExt alpha = pairing(Gq, Hq, em) / p, beta = pairing(Gq, Hq, ep) / p;
  if (alpha == QuadExt(0) || beta == QuadExt(0)) throw Error("H has no component along an eigenvector");
  for (auto& x : ep) x = x * alpha;
  for (auto& x : em) x = x * beta;
  S.H = Hq;
  S.e_plus = ep;
  S.e_minus = em;
  S.w.resize(d);
  for (std::size_t i = 0; i < d; ++i) S.w[i] = Hq[i] - ep[i] - em[i];
  S.pairing = pairing(Gq, ep, em);
  S.ww = pairing(Gq, S.w, S.w);

  auto require = [&](bool ok, const std::string& what) {
    if (!ok) throw Error("split check failed: " + what);
    S.checks.push_back(what);
  };
  QuadVector Mep = mat_vec(Mq, ep), Mem = mat_vec(Mq, em);
  bool eig = true;
  for (std::size_t i = 0; i < d; ++i)
    eig = eig && Mep[i] == S.lambda * ep[i] && Mem[i] == em[i] / S.lambda;
  require(eig, "M e_+ = lambda e_+ and M e_- = lambda^-1 e_-");
  require(pairing(Gq, ep, ep) == QuadExt(0), "e_+ . e_+ = 0");
  require(pairing(Gq, em, em) == QuadExt(0), "e_- . e_- = 0");
  require(pairing(Gq, S.w, ep) == QuadExt(0) && pairing(Gq, S.w, em) == QuadExt(0),
          "w orthogonal to e_+ and e_-");
  require(S.ww <= QuadExt(0), "w . w <= 0");
  require(alpha * beta * p > QuadExt(0), "alpha beta (e_+ . e_-) > 0 before rescaling");
  return S;
}

std::size_t isotropic_extension_dimension(const RatMatrix& G, const QuadVector& e) {
  const QuadMatrix Gq = to_quad(G);
  const std::size_t d = G.rows();
  if (pairing(Gq, e, e) != QuadExt(0)) throw Error("vector is not isotropic");
  // Basis of e^perp: nullspace of the 1 x d row e^T G.
  QuadMatrix row(1, d);
  for (std::size_t j = 0; j < d; ++j) {
    QuadExt s(0);
    for (std::size_t i = 0; i < d; ++i) s += e[i] * Gq(i, j);
    row(0, j) = s;
  }
  auto basis = nullspace(row);
  QuadMatrix R(basis.size(), basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) R(a, b) = pairing(Gq, basis[a], basis[b]);
  Inertia in = inertia(R);
  // Radical plus the isotropic part of a nondegenerate remainder of inertia (p, q).
  return in.zero + std::min(in.positive, in.negative);
}

// ---------------------------------------------------------------- sequences

nlohmann::json IntersectionSequence::to_json() const {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : values) v.push_back(rational_json(x));
  nlohmann::json j{{"values", v}, {"doubling_holds", doubling_holds}, {"log", log}};
  if (failed_at) j["failed_at"] = *failed_at;
  return j;
}

IntersectionSequence intersection_sequence(const RatMatrix& M, const RatMatrix& G, const RatVector& H,
                                           const RatVector& C, unsigned j_max) {
  check_square(M, "pullback");
  check_vector(M, H, "H");
  check_vector(M, C, "C");
  IntersectionSequence S;
  RatVector v = H;
  for (unsigned j = 0; j <= j_max; ++j) {
    S.values.push_back(pairing(G, v, C));
    v = M.apply(v);
  }
  S.doubling_holds = true;
  for (unsigned j = 0; j < j_max; ++j) {
    const Rational& a = S.values[j];
    const Rational& b = S.values[j + 1];
    if (b == 2 * a) S.log.push_back("boundary at j=" + std::to_string(j) + ": s_(j+1) = 2 s_j");
    if (!(b > 2 * a) && S.doubling_holds) {
      S.doubling_holds = false;
      S.failed_at = j;
    }
  }
  return S;
}

QuadExt closed_form_intersection(const HyperbolicSplit& s, const RatMatrix& M, const RatMatrix& G,
                                 unsigned j) {
  const QuadMatrix Mq = to_quad(M), Gq = to_quad(G);
  QuadVector v = s.w;
  for (unsigned k = 0; k < j; ++k) v = Mq.apply(v);
  return (s.lambda.pow(long(j)) + s.lambda.pow(-long(j))) * s.pairing + pairing(Gq, v, s.w);
}

nlohmann::json CauchySchwarzReport::to_json() const {
  nlohmann::json r = nlohmann::json::array();
  for (const auto& x : rows)
    r.push_back({{"j", x.j},
                 {"Mjw.w", x.mjw_w.to_string()},
                 {"bound_holds", x.bound_holds},
                 {"equality", x.equality},
                 {"lhs", x.lhs.to_string()},
                 {"rhs", x.rhs.to_string()},
                 {"growth_holds", x.growth_holds}});
  return {{"rows", r}, {"bounds_hold", bounds_hold}, {"growth_holds", growth_holds}};
}

CauchySchwarzReport cauchy_schwarz_check(const RatMatrix& M, const RatMatrix& G,
                                         const HyperbolicSplit& split, unsigned j_max) {
  const QuadMatrix Mq = to_quad(M), Gq = to_quad(G);
  std::vector<QuadExt> x;
  QuadVector v = split.w;
  for (unsigned j = 0; j <= j_max + 1; ++j) {
    x.push_back(pairing(Gq, v, split.w));
    v = Mq.apply(v);
  }
  const QuadExt ww2 = split.ww * split.ww;
  const QuadExt& p = split.pairing;
  CauchySchwarzReport R;
  for (unsigned j = 0; j <= j_max; ++j) {
    CauchySchwarzRow row;
    row.j = j;
    row.mjw_w = x[j];
    QuadExt sq = x[j] * x[j];
    row.bound_holds = sq <= ww2;
    row.equality = sq == ww2;
    const QuadExt& l = split.lambda;
    row.lhs = l.pow(long(j) + 1) + l.pow(-long(j) - 1) + x[j + 1] / p;
    row.rhs = (l.pow(long(j)) + l.pow(-long(j)) + x[j] / p) * QuadExt(2);
    row.growth_holds = row.lhs > row.rhs;
    R.bounds_hold = R.bounds_hold && row.bound_holds;
    R.growth_holds = R.growth_holds && row.growth_holds;
    R.rows.push_back(row);
  }
  return R;
}

// ---------------------------------------------------------------- thresholds

QuadExt threshold_value(Threshold t) {
  return t == Threshold::Main ? QuadExt(5, 2, 6) : QuadExt(2, 1, 3);
}

Threshold parse_threshold(const std::string& name) {
  if (name == "main" || name == "5+2sqrt6") return Threshold::Main;
  if (name == "improved" || name == "2+sqrt3") return Threshold::Improved;
  throw Error("unknown threshold '" + name + "' (use main or improved)");
}

ThresholdResult threshold_min_power(const QuadExt& lambda, Threshold t) {
  const QuadExt bound = threshold_value(t);
  if (lambda < QuadExt(1)) throw Error("lambda below 1");
  ThresholdResult r;
  if (lambda == QuadExt(1)) {
    r.note = "lambda = 1: no power reaches " + bound.to_string();
    return r;
  }
  long n = std::max(1L, long(std::ceil(std::log(bound.to_double()) / std::log(lambda.to_double()))));
  while (n > 1 && lambda.pow(n - 1) >= bound) --n;
  while (lambda.pow(n) < bound) ++n;
  r.n = unsigned(n);
  r.boundary = lambda.pow(n) == bound;
  r.note = "lambda^" + std::to_string(n) + (r.boundary ? " = " : " > ") + bound.to_string();
  if (r.boundary) r.note += " (boundary: passes with >=)";
  return r;
}

ThresholdResult threshold_min_power(const Rational& lo, const Rational& hi, Threshold t) {
  if (lo > hi) throw Error("empty enclosure");
  if (lo == hi) return threshold_min_power(QuadExt(lo), t);
  if (hi < 1) throw Error("lambda below 1");
  if (lo <= 1) throw Error("precision exhausted: enclosure contains 1; refine lambda and retry");
  const QuadExt bound = threshold_value(t);
  long n = std::max(1L, long(std::ceil(std::log(bound.to_double()) / std::log(to_double(lo)))));
  auto pw = [](const Rational& x, long e) {
    Rational r = 1;
    for (long i = 0; i < e; ++i) r *= x;
    return r;
  };
  while (n > 1 && QuadExt(pw(lo, n - 1)) >= bound) --n;
  while (QuadExt(pw(lo, n)) < bound) ++n;
  // lo^n >= bound certifies lambda^n >= bound; need lambda^(n-1) < bound too.
  if (n > 1 && !(QuadExt(pw(hi, n - 1)) < bound))
    throw Error("precision exhausted: enclosure straddles the threshold; refine lambda and retry");
  ThresholdResult r;
  r.n = unsigned(n);
  r.note = "certified from the enclosure: lo^" + std::to_string(n) + " >= " + bound.to_string();
  return r;
}

// ---------------------------------------------------------------- improved criterion

nlohmann::json CorImproveReport::to_json() const {
  return {{"applies", applies},
          {"charpoly", charpoly.to_string()},
          {"unit_multiplicity", unit_multiplicity},
          {"rest", rest.to_string()},
          {"report", report}};
}

CorImproveReport cor_improve_applies(const RatMatrix& M, unsigned n) {
  check_square(M, "pullback");
  if (n == 0) throw Error("power must be positive");
  CorImproveReport R;
  R.charpoly = charpoly(M.pow(n));
  R.rest = R.charpoly;
  while (R.rest.degree() > 0 && R.rest(Rational(1)) == 0) {
    R.rest = divrem(R.rest, UniPoly::linear(1)).first;
    ++R.unit_multiplicity;
  }
  const UniPoly& q = R.rest;
  R.applies = q.degree() == 2 && q.coeff(2) == 1 && q.coeff(0) == 1 && -q.coeff(1) > 2;
  std::ostringstream os;
  os << "charpoly of M^" << n << " = " << R.charpoly.to_string() << "; ";
  if (R.unit_multiplicity) os << "eigenvalue 1 with multiplicity " << R.unit_multiplicity << "; ";
  os << "remaining factor " << q.to_string();
  os << (R.applies ? " is x^2 - (lambda^n + lambda^-n) x + 1" : " is not a single reciprocal pair");
  R.report = os.str();
  return R;
}

}  // namespace skewcert

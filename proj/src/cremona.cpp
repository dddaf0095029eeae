#include "skewcert/cremona.hpp"

#include "skewcert/error.hpp"
#include "skewcert/linalg.hpp"
#include "skewcert/nslattice.hpp"
#include "skewcert/parser.hpp"
#include "skewcert/polygcd.hpp"

#include <algorithm>
#include <cmath>

namespace skewcert {

namespace {

MultiPoly det3(const std::array<std::array<MultiPoly, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

MultiPoly jacobian(const std::array<MultiPoly, 3>& f) {
  std::array<std::array<MultiPoly, 3>, 3> m{
      {{f[0].derivative(0), f[0].derivative(1), f[0].derivative(2)},
       {f[1].derivative(0), f[1].derivative(1), f[1].derivative(2)},
       {f[2].derivative(0), f[2].derivative(1), f[2].derivative(2)}}};
  return det3(m);
}

// Lifts a polynomial in two variables to a form of degree d in x, y, z.
MultiPoly homogenize_to(const MultiPoly& p, int d) {
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    int deg = int(t.exps[0] + t.exps[1]);
    terms.push_back({{t.exps[0], t.exps[1], std::uint32_t(d - deg)}, t.coeff});
  }
  return MultiPoly::from_terms(plane_vars(), std::move(terms));
}

MultiPoly lcm(const MultiPoly& a, const MultiPoly& b) { return divide_exact(a, gcd(a, b)) * b; }

// Makes p primitive with positive leading coefficient; returns the factor removed.
Rational make_primitive(MultiPoly& p) {
  Rational c = p.content();
  if (p.leading_coeff() < 0) c = -c;
  p = p * Rational(1 / c);
  return c;
}

}  // namespace

const Vars& plane_vars() {
  static const Vars v = make_vars({"x", "y", "z"});
  return v;
}

PlaneMap::PlaneMap(std::array<MultiPoly, 3> forms) : forms_(std::move(forms)) {
  degree_ = -1;
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!same_vars(forms_[i].vars(), plane_vars())) forms_[i] = forms_[i].with_vars(plane_vars());
    if (forms_[i].is_zero()) continue;
    if (!forms_[i].is_homogeneous()) throw Error("plane map component is not homogeneous");
    int d = forms_[i].total_degree();
    if (degree_ >= 0 && d != degree_) throw Error("plane map components have different degrees");
    degree_ = d;
    live.push_back(i);
  }
  if (live.empty()) throw Error("plane map with all components zero");

  // Monomial part first: it is the whole common factor for the usual examples.
  Exponents m = forms_[live[0]].min_exponents();
  for (std::size_t i : live) {
    Exponents e = forms_[i].min_exponents();
    for (std::size_t v = 0; v < 3; ++v) m[v] = std::min(m[v], e[v]);
  }
  if (m[0] + m[1] + m[2] > 0)
    for (std::size_t i : live) forms_[i] = forms_[i].divide_monomial(m);

  std::vector<MultiPoly> parts;
  for (std::size_t i : live) parts.push_back(forms_[i]);
  std::sort(parts.begin(), parts.end(),
            [](const MultiPoly& a, const MultiPoly& b) { return a.term_count() < b.term_count(); });
  if (!parts.front().is_constant()) {
    MultiPoly g = gcd(parts);
    if (!g.is_constant())
      for (std::size_t i : live) forms_[i] = divide_exact(forms_[i], g);
  }

  Integer den = 1, num = 0;
  for (std::size_t i : live)
    for (const auto& t : forms_[i].terms()) {
      den = skewcert::lcm(den, t.coeff.get_den());
      num = skewcert::gcd(num, t.coeff.get_num());
    }
  Rational scale = make_rational(den, num);
  if (forms_[live[0]].leading_coeff() < 0) scale = -scale;
  for (std::size_t i : live) forms_[i] = forms_[i] * scale;
  degree_ = forms_[live[0]].total_degree();
}

PlaneMap PlaneMap::identity() {
  const Vars& v = plane_vars();
  return PlaneMap({MultiPoly::variable(v, 0), MultiPoly::variable(v, 1), MultiPoly::variable(v, 2)});
}

PlaneMap PlaneMap::from_json(const nlohmann::json& spec) {
  if (spec.contains("forms")) {
    Vars vars = spec.contains("vars") ? make_vars(spec.at("vars").get<std::vector<std::string>>()) : plane_vars();
    if (vars->size() != 3) throw Error("plane map forms need three variables");
    const auto& f = spec.at("forms");
    if (!f.is_array() || f.size() != 3) throw Error("plane map needs three forms");
    std::array<MultiPoly, 3> forms{MultiPoly(vars), MultiPoly(vars), MultiPoly(vars)};
    for (std::size_t i = 0; i < 3; ++i) forms[i] = parse_poly(f[i].get<std::string>(), vars).with_vars(plane_vars());
    return PlaneMap(std::move(forms));
  }
  return homogenize(FieldEndo::from_json(spec));
}

nlohmann::json PlaneMap::to_json() const {
  return {{"vars", *plane_vars()},
          {"forms", {forms_[0].to_string(), forms_[1].to_string(), forms_[2].to_string()}},
          {"degree", degree_}};
}

bool PlaneMap::is_identity() const { return *this == identity(); }

std::size_t PlaneMap::term_count() const {
  return forms_[0].term_count() + forms_[1].term_count() + forms_[2].term_count();
}

std::string PlaneMap::to_string() const {
  return "(" + forms_[0].to_string() + " : " + forms_[1].to_string() + " : " + forms_[2].to_string() + ")";
}

PlaneMap homogenize(const RatFunc& f, const RatFunc& g) {
  if (f.nvars() != 2 || g.nvars() != 2) throw Error("homogenize expects a map of the affine plane");
  RatFunc gg = g.with_vars(f.vars());
  MultiPoly D = lcm(f.den(), gg.den());
  MultiPoly a = f.num() * divide_exact(D, f.den());
  MultiPoly b = gg.num() * divide_exact(D, gg.den());
  int d = std::max({a.total_degree(), b.total_degree(), D.total_degree()});
  std::array<MultiPoly, 3> forms{homogenize_to(a, d), homogenize_to(b, d), homogenize_to(D, d)};
  if (jacobian(forms).is_zero()) throw Error("degenerate map: image has dimension < 2");
  return PlaneMap(std::move(forms));
}

PlaneMap homogenize(const FieldEndo& sigma) {
  if (sigma.nvars() != 2) throw Error("plane maps need exactly two affine variables");
  return homogenize(sigma.images()[0], sigma.images()[1]);
}

PlaneMap compose_primitive(const PlaneMap& sigma, const PlaneMap& tau) {
  std::array<MultiPoly, 3> out{MultiPoly(plane_vars()), MultiPoly(plane_vars()), MultiPoly(plane_vars())};
  for (std::size_t i = 0; i < 3; ++i) out[i] = sigma[i].substitute(tau.forms());
  if (out[0].is_zero() && out[1].is_zero() && out[2].is_zero())
    throw Error("composite vanishes identically");
  return PlaneMap(std::move(out));
}

std::optional<std::pair<std::vector<Integer>, int>> fit_recurrence(const std::vector<int>& d, int max_order) {
  const int N = int(d.size());
  for (int k = 1; k <= max_order; ++k) {
    for (int s = 0; N - s - k >= k + 2; ++s) {
      // Equations d[n] = sum c_i d[n-i] for n = s+k .. N-1; the first k define c.
      RatMatrix A(std::size_t(k), std::size_t(k + 1));
      for (int r = 0; r < k; ++r) {
        int n = s + k + r;
        for (int i = 1; i <= k; ++i) A(std::size_t(r), std::size_t(i - 1)) = d[std::size_t(n - i)];
        A(std::size_t(r), std::size_t(k)) = d[std::size_t(n)];
      }
      auto piv = row_reduce(A);
      if (piv.size() != std::size_t(k) || piv.back() == std::size_t(k)) continue;
      std::vector<Integer> c;
      bool integral = true;
      for (int i = 0; i < k && integral; ++i) {
        Rational v = A(std::size_t(i), std::size_t(k));
        integral = is_integer(v);
        c.push_back(v.get_num());
      }
      if (!integral) continue;
      bool ok = true;
      for (int n = s + k; n < N && ok; ++n) {
        Integer acc = 0;
        for (int i = 1; i <= k; ++i) acc += c[std::size_t(i - 1)] * d[std::size_t(n - i)];
        ok = acc == d[std::size_t(n)];
      }
      if (ok) return std::make_pair(std::move(c), s);
    }
  }
  return std::nullopt;
}

DegreeSequence degree_sequence(const PlaneMap& sigma, unsigned N, const CremonaOptions& opts) {
  if (N == 0) throw Error("degree sequence needs N >= 1");
  DegreeSequence S;
  PlaneMap cur = sigma;
  S.degrees.push_back(cur.degree());
  while (S.degrees.size() < N) {
    if (sigma.degree() * cur.degree() > opts.max_degree || cur.term_count() > opts.max_terms) {
      S.partial = true;
      S.note = "stopped after n=" + std::to_string(S.degrees.size()) + ": next iterate exceeds the budget";
      break;
    }
    cur = compose_primitive(sigma, cur);
    S.degrees.push_back(cur.degree());
  }
  const int d1 = S.degrees[0];
  for (std::size_t n = 0; n + 1 < S.degrees.size(); ++n)
    if (S.degrees[n + 1] < d1 * S.degrees[n]) S.drops.push_back(int(n + 1));
  S.root_estimate = std::pow(double(S.degrees.back()), 1.0 / double(S.degrees.size()));
  S.lambda_estimate = S.root_estimate;

  if (auto fit = fit_recurrence(S.degrees)) {
    S.recurrence = fit->first;
    S.recurrence_start = fit->second;
    const std::size_t k = fit->first.size();
    RatMatrix C(k, k);
    for (std::size_t j = 0; j < k; ++j) C(0, j) = Rational(fit->first[j]);
    for (std::size_t i = 1; i < k; ++i) C(i, i - 1) = 1;
    SpectralRadius r = spectral_radius(C);
    if (r.exact) S.recurrence_lambda = r.exact;
    S.recurrence_estimate = r.exact ? r.exact->to_double() : r.approx();
    S.lambda_estimate = *S.recurrence_estimate;
  }
  return S;
}

nlohmann::json DegreeSequence::to_json() const {
  nlohmann::json j;
  j["degrees"] = degrees;
  j["drops"] = drops;
  j["lambda_estimate"] = lambda_estimate;
  j["root_estimate"] = root_estimate;
  if (recurrence) {
    std::vector<std::string> c;
    for (const auto& x : *recurrence) c.push_back(skewcert::to_string(x));
    j["recurrence"] = {{"coefficients", c}, {"start", recurrence_start + 1}};
    if (recurrence_lambda) j["recurrence"]["lambda"] = recurrence_lambda->to_string();
    j["recurrence"]["lambda_approx"] = *recurrence_estimate;
  }
  j["partial"] = partial;
  if (!note.empty()) j["note"] = note;
  return j;
}

PlaneMap conjugate_map(const PlaneMap& sigma, const PlaneMap& pi, const PlaneMap& pi_inv) {
  if (!compose_primitive(pi, pi_inv).is_identity() || !compose_primitive(pi_inv, pi).is_identity())
    throw Error("supplied inverse does not invert the conjugating map");
  return compose_primitive(pi_inv, compose_primitive(sigma, pi));
}

std::pair<Rational, std::vector<FactorPower>> square_free_factors(const MultiPoly& f0) {
  if (f0.is_zero()) throw Error("square-free split of the zero polynomial");
  std::vector<FactorPower> out;
  MultiPoly f = f0;
  Exponents m = f.min_exponents();
  for (std::size_t v = 0; v < f.nvars(); ++v)
    if (m[v] > 0) out.push_back({MultiPoly::variable(f.vars(), v), int(m[v])});
  f = f.divide_monomial(m);
  make_primitive(f);

  // Yun's algorithm in one variable at a time; the content in that variable
  // goes back on the work list.
  std::vector<MultiPoly> work{f};
  while (!work.empty()) {
    MultiPoly g = work.back();
    work.pop_back();
    if (g.is_constant()) continue;
    std::size_t v = 0;
    while (!g.depends_on(v)) ++v;
    MultiPoly cont = gcd(g.coefficients_in(v));
    if (!cont.is_constant()) {
      work.push_back(cont);
      g = divide_exact(g, cont);
    }
    MultiPoly dg = g.derivative(v);
    MultiPoly a = gcd(g, dg);
    MultiPoly b = divide_exact(g, a);
    MultiPoly c = divide_exact(dg, a) - b.derivative(v);
    for (int i = 1; !b.is_constant(); ++i) {
      MultiPoly h = gcd(b, c);
      b = divide_exact(b, h);
      c = divide_exact(c, h) - b.derivative(v);
      if (!h.is_constant()) {
        make_primitive(h);
        out.push_back({h, i});
      }
    }
  }

  MultiPoly prod = MultiPoly::constant(f0.vars(), 1);
  for (const auto& fp : out) prod = prod * fp.factor.pow(unsigned(fp.multiplicity));
  auto q = try_divide(f0, prod);
  if (!q || !q->is_constant()) throw Error("square-free split failed its product check");
  return {q->constant_value(), out};
}

ContractedCurves contracted_curves(const PlaneMap& sigma) {
  ContractedCurves R;
  R.jacobian = jacobian(sigma.forms());
  if (R.jacobian.is_zero()) throw Error("map not birational: Jacobian determinant vanishes");
  auto [u, f] = square_free_factors(R.jacobian);
  R.unit = u;
  R.factors = std::move(f);
  return R;
}

nlohmann::json ContractedCurves::to_json() const {
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : factors) fs.push_back({{"factor", f.factor.to_string()}, {"multiplicity", f.multiplicity}});
  return {{"jacobian", jacobian.to_string()}, {"unit", skewcert::to_string(unit)}, {"factors", fs}};
}

NongeometricReport henon_nongeometric_report(const QuadExt& lambda) {
  NongeometricReport R;
  R.lambda = lambda;
  R.minimal_polynomial = lambda.minimal_polynomial();
  R.algebraic_integer = std::all_of(R.minimal_polynomial.begin(), R.minimal_polynomial.end(),
                                    [](const Rational& c) { return is_integer(c); });
  R.unit = R.algebraic_integer && abs(R.minimal_polynomial.front()) == 1;
  const std::string mp = UniPoly(R.minimal_polynomial).to_string();
  if (lambda <= QuadExt(1)) {
    R.explanation = "lambda <= 1: no growth, nothing to obstruct";
  } else if (R.unit) {
    R.explanation = "minimal polynomial " + mp +
                    " is monic integral with constant term +-1, so lambda can be the spectral radius of a "
                    "lattice isometry; no obstruction";
  } else {
    R.obstruction = true;
    R.explanation = "minimal polynomial " + mp +
                    (R.algebraic_integer ? " has constant term other than +-1" : " is not integral") +
                    ": lambda is not an algebraic unit, so x - lambda divides no characteristic polynomial of "
                    "an isometry of a (1, d-1) lattice and no smooth model makes the map an automorphism "
                    "with this spectral radius";
  }
  return R;
}

NongeometricReport henon_nongeometric_report(const DegreeSequence& seq) {
  if (seq.recurrence_lambda) return henon_nongeometric_report(*seq.recurrence_lambda);
  NongeometricReport R;
  R.explanation = "inconclusive: the degree sequence gives no exact value for lambda";
  return R;
}

nlohmann::json NongeometricReport::to_json() const {
  nlohmann::json j;
  if (lambda) j["lambda"] = lambda->to_string();
  if (!minimal_polynomial.empty()) j["minimal_polynomial"] = UniPoly(minimal_polynomial).to_string();
  j["algebraic_integer"] = algebraic_integer;
  j["unit"] = unit;
  j["obstruction"] = obstruction;
  j["explanation"] = explanation;
  return j;
}

}  // namespace skewcert

#include "skewcert/atlas.hpp"

#include "skewcert/cremona.hpp"
#include "skewcert/error.hpp"
#include "skewcert/fieldendo.hpp"
#include "skewcert/freecert.hpp"
#include "skewcert/nslattice.hpp"
#include "skewcert/parser.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#ifndef SKEWCERT_FIXTURE_DIR
#define SKEWCERT_FIXTURE_DIR "fixtures"
#endif

namespace skewcert {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(Source s) {
  switch (s) {
    case Source::Published: return "published";
    case Source::Trivial: return "trivial";
    case Source::Derived: return "derived";
  }
  return "derived";
}

Source parse_source(const std::string& s) {
  if (s == "published") return Source::Published;
  if (s == "trivial") return Source::Trivial;
  if (s == "derived") return Source::Derived;
  throw Error("unknown source tag '" + s + "'");
}

namespace {

json rat_json(const Rational& q) {
  if (is_integer(q) && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return skewcert::to_string(q);
}

QuadExt quad_from_json(const json& v) {
  if (v.is_number_integer()) return QuadExt(Rational(v.get<long>()));
  if (v.is_string()) return parse_quadext(v.get<std::string>());
  throw Error("expected a number or a quadratic number string, got " + v.dump());
}

json quad_json(const QuadExt& q) {
  if (q.is_rational()) return rat_json(q.a());
  return q.to_string();
}

json vec_json(const QuadVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(quad_json(x));
  return a;
}

RatVector to_rational(const QuadVector& v) {
  RatVector r;
  for (const auto& x : v) {
    if (!x.is_rational()) throw Error("expected a rational vector");
    r.push_back(x.a());
  }
  return r;
}

// Context for one fixture: lazily built inputs.
struct Inputs {
  const Fixture& fx;
  std::optional<LatticeSystem> lat;
  std::optional<FieldEndo> sigma;
  std::optional<PlaneMap> plane;

  const LatticeSystem& lattice() {
    if (!lat) {
      if (fx.lattice.is_null()) throw Error("fixture has no lattice");
      lat = LatticeSystem::from_json(fx.lattice);
    }
    return *lat;
  }
  const FieldEndo& map() {
    if (!sigma) {
      if (fx.map.is_null()) throw Error("fixture has no map");
      sigma = FieldEndo::from_json(fx.map);
    }
    return *sigma;
  }
  const PlaneMap& plane_map() {
    if (!plane) {
      if (fx.map.is_null()) throw Error("fixture has no map");
      plane = PlaneMap::from_json(fx.map);
    }
    return *plane;
  }

  RatFunc func(const json& v) { return parse_ratfunc(v.get<std::string>(), map().vars()); }

  // A vector given inline or as a class name.
  QuadVector vector(const json& v) {
    if (v.is_string()) return to_quad(lattice().cls(v.get<std::string>()));
    QuadVector out;
    for (const auto& x : v) out.push_back(quad_from_json(x));
    if (out.size() != lattice().rank()) throw Error("vector length does not match the lattice rank");
    return out;
  }
  RatVector rat_vector(const json& v) { return to_rational(vector(v)); }

  RatMatrix matrix(const json& args) {
    if (!args.contains("matrix") || args["matrix"] == "pullback") return lattice().pullback;
    if (args["matrix"] == "pushforward") {
      if (!lattice().pushforward) throw Error("fixture lattice has no pushforward");
      return *lattice().pushforward;
    }
    return matrix_from_json(args["matrix"]);
  }
};

unsigned uarg(const json& args, const char* key, unsigned dflt) {
  return args.contains(key) ? args[key].get<unsigned>() : dflt;
}

QuadExt qdot(const RatMatrix& G, const QuadVector& u, const QuadVector& v) { return pairing(to_quad(G), u, v); }

QuadVector qapply(const RatMatrix& M, const QuadVector& v) {
  QuadVector r(M.rows(), QuadExt(0));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) r[i] += QuadExt(M(i, j)) * v[j];
  return r;
}

// Coefficients c with sum c_i basis_i = target, over Q(sqrt d).
QuadVector solve(const std::vector<QuadVector>& basis, const QuadVector& target) {
  const std::size_t n = target.size(), k = basis.size();
  QuadMatrix A(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) A(i, j) = basis[j][i];
    A(i, k) = target[i];
  }
  auto piv = row_reduce(A);
  if (piv.size() != k || (!piv.empty() && piv.back() == k)) throw Error("target is not a unique combination");
  QuadVector c(k);
  for (std::size_t r = 0; r < k; ++r) c[piv[r]] = A(r, k);
  return c;
}

json spectral_json(const SpectralRadius& s) {
  json j = s.to_json();
  if (s.exact) j["exact"] = quad_json(*s.exact);
  return j;
}

SpectralRadius charpoly_root(const json& coeffs_high_to_low) {
  std::vector<Rational> c;
  for (const auto& x : coeffs_high_to_low) c.push_back(quad_from_json(x).a());
  if (c.size() < 2 || c.front() != 1) throw Error("charpoly_root expects monic coefficients, highest first");
  const std::size_t k = c.size() - 1;
  RatMatrix C(k, k);
  for (std::size_t j = 0; j < k; ++j) C(0, j) = -c[j + 1];
  for (std::size_t i = 1; i < k; ++i) C(i, i - 1) = 1;
  return spectral_radius(C);
}

ThresholdResult threshold_from_args(Inputs& in, const json& args) {
  Threshold t = parse_threshold(args.value("threshold", std::string("main")));
  const json& l = args.at("lambda");
  if (l == "spectral_radius" || l == "charpoly_root") {
    SpectralRadius s = l == "spectral_radius" ? spectral_radius(in.matrix(args)) : charpoly_root(args.at("charpoly"));
    if (s.exact) return threshold_min_power(*s.exact, t);
    return threshold_min_power(s.lo, s.hi, t);
  }
  return threshold_min_power(quad_from_json(l), t);
}

using OpFn = std::function<json(Inputs&, const json&)>;

const std::map<std::string, OpFn>& ops() {
  static const std::map<std::string, OpFn> table = {
      // lattice
      {"charpoly", [](Inputs& in, const json& a) -> json { return charpoly(in.matrix(a)).to_string(); }},
      {"matrix_product",
       [](Inputs&, const json& a) -> json {
         const auto& f = a.at("factors");
         if (f.empty()) throw Error("matrix_product needs factors");
         RatMatrix P = matrix_from_json(f[0]);
         for (std::size_t i = 1; i < f.size(); ++i) P = P * matrix_from_json(f[i]);
         return matrix_to_json(P);
       }},
      {"eigenvalues",
       [](Inputs& in, const json& a) -> json {
         // prod (x - v) over the listed values against the characteristic polynomial.
         UniPoly p = charpoly(in.matrix(a));
         std::vector<QuadExt> prod{QuadExt(1)};
         for (const auto& v : a.at("values")) {
           QuadExt r = quad_from_json(v);
           std::vector<QuadExt> next(prod.size() + 1, QuadExt(0));
           for (std::size_t i = 0; i < prod.size(); ++i) {
             next[i + 1] += prod[i];
             next[i] -= prod[i] * r;
           }
           prod = next;
         }
         bool equal = prod.size() == p.coeffs().size();
         for (std::size_t i = 0; equal && i < prod.size(); ++i) equal = prod[i] == QuadExt(p.coeffs()[i]);
         bool roots = true;
         for (const auto& v : a.at("values")) roots = roots && p(quad_from_json(v)) == QuadExt(0);
         return {{"all_roots", roots}, {"product_equals_charpoly", equal}};
       }},
      {"spectral_radius", [](Inputs& in, const json& a) -> json { return spectral_json(spectral_radius(in.matrix(a))); }},
      {"charpoly_root", [](Inputs&, const json& a) -> json { return spectral_json(charpoly_root(a.at("coefficients"))); }},
      {"is_isometry", [](Inputs& in, const json& a) -> json { return is_isometry(in.matrix(a), in.lattice().gram); }},
      {"signature",
       [](Inputs& in, const json&) -> json {
         Signature s = signature(in.lattice().gram);
         return {s.p, s.q};
       }},
      {"hodge_index",
       [](Inputs& in, const json&) -> json {
         Signature s = signature(in.lattice().gram);
         return s.p == 1 && s.q + 1 == in.lattice().rank();
       }},
      {"hyperbolic_split",
       [](Inputs& in, const json& a) -> json {
         const auto& L = in.lattice();
         auto s = hyperbolic_split(in.matrix(a), L.gram, in.rat_vector(a.at("H")));
         json j;
         j["lambda"] = quad_json(s.lambda);
         j["e_plus"] = vec_json(s.e_plus);
         j["e_minus"] = vec_json(s.e_minus);
         j["w"] = vec_json(s.w);
         j["e_plus.e_minus"] = quad_json(s.pairing);
         j["w.w"] = quad_json(s.ww);
         j["e_plus_isotropic"] = qdot(L.gram, s.e_plus, s.e_plus) == QuadExt(0);
         j["e_minus_isotropic"] = qdot(L.gram, s.e_minus, s.e_minus) == QuadExt(0);
         j["w_nonpositive"] = s.ww <= QuadExt(0);
         j["checks"] = s.checks;
         return j;
       }},
      {"intersection_sequence",
       [](Inputs& in, const json& a) -> json {
         const auto& L = in.lattice();
         auto s = intersection_sequence(in.matrix(a), L.gram, in.rat_vector(a.at("H")),
                                        in.rat_vector(a.value("C", a.at("H"))), uarg(a, "j_max", 10));
         return s.to_json();
       }},
      {"trace_identity",
       [](Inputs& in, const json& a) -> json {
         // s_j = c * trace(M^j) for j <= j_max.
         const auto& L = in.lattice();
         RatMatrix M = in.matrix(a);
         Rational c = quad_from_json(a.at("factor")).a();
         unsigned jm = uarg(a, "j_max", 10);
         RatVector H = in.rat_vector(a.at("H"));
         auto s = intersection_sequence(M, L.gram, H, in.rat_vector(a.value("C", a.at("H"))), jm);
         RatMatrix P = RatMatrix::identity(M.rows());
         for (unsigned j = 0; j <= jm; ++j, P = P * M) {
           Rational tr = 0;
           for (std::size_t i = 0; i < P.rows(); ++i) tr += P(i, i);
           if (s.values[j] != c * tr) return false;
         }
         return true;
       }},
      {"closed_form",
       [](Inputs& in, const json& a) -> json {
         // (M^n H).H = A (lambda^n + lambda^-n) + B (-1)^(n+1), with B = -w.w when M w = -w.
         const auto& L = in.lattice();
         RatMatrix M = in.matrix(a);
         auto s = hyperbolic_split(M, L.gram, in.rat_vector(a.at("H")));
         QuadVector Mw = qapply(M, s.w), negw;
         for (const auto& x : s.w) negw.push_back(-x);
         if (Mw != negw) throw Error("M w != -w; no two-term closed form");
         const QuadExt B = -s.ww;
         auto seq = intersection_sequence(M, L.gram, to_rational(s.H), to_rational(s.H), 10);
         bool ok = true;
         for (unsigned n = 0; n <= 10 && ok; ++n)
           ok = s.pairing * (s.lambda.pow(long(n)) + s.lambda.pow(-long(n))) + B * QuadExt(n % 2 ? 1 : -1) ==
                QuadExt(seq.values[n]);
         return {{"A", quad_json(s.pairing)}, {"B", quad_json(B)}, {"matches_sequence", ok}};
       }},
      {"closed_form_value",
       [](Inputs& in, const json& a) -> json {
         // A (lambda^n + lambda^-n) + B (-1)^(n+1) for given A, B.
         QuadExt lam = quad_from_json(a.at("lambda"));
         QuadExt A = quad_from_json(a.at("A")), B = quad_from_json(a.value("B", json(0)));
         long n = a.value("n", 0L);
         QuadExt v = A * (lam.pow(n) + lam.pow(-n)) + B * QuadExt(n % 2 ? 1 : -1);
         auto seq = intersection_sequence(in.matrix(a), in.lattice().gram, in.rat_vector(a.at("H")),
                                          in.rat_vector(a.at("H")), unsigned(n));
         return {{"formula", quad_json(v)}, {"sequence", rat_json(seq.values[std::size_t(n)])}};
       }},
      {"pairing",
       [](Inputs& in, const json& a) -> json {
         return quad_json(qdot(in.lattice().gram, in.vector(a.at("u")), in.vector(a.at("v"))));
       }},
      {"vector_sum",
       [](Inputs& in, const json& a) -> json {
         QuadVector s(in.lattice().rank(), QuadExt(0));
         for (const auto& v : a.at("vectors")) {
           QuadVector x = in.vector(v);
           for (std::size_t i = 0; i < s.size(); ++i) s[i] += x[i];
         }
         return vec_json(s);
       }},
      {"decompose",
       [](Inputs& in, const json& a) -> json {
         std::vector<QuadVector> basis;
         for (const auto& v : a.at("basis")) basis.push_back(in.vector(v));
         return vec_json(solve(basis, in.vector(a.at("target"))));
       }},
      {"is_eigenvector",
       [](Inputs& in, const json& a) -> json {
         QuadVector v = in.vector(a.at("vector"));
         QuadExt l = quad_from_json(a.at("eigenvalue"));
         QuadVector Mv = qapply(in.matrix(a), v);
         for (std::size_t i = 0; i < v.size(); ++i)
           if (Mv[i] != l * v[i]) return false;
         return v != QuadVector(v.size(), QuadExt(0));
       }},
      {"cauchy_schwarz",
       [](Inputs& in, const json& a) -> json {
         const auto& L = in.lattice();
         RatMatrix M = in.matrix(a);
         auto s = hyperbolic_split(M, L.gram, in.rat_vector(a.at("H")));
         auto r = cauchy_schwarz_check(M, L.gram, s, uarg(a, "j_max", 10));
         return {{"bounds_hold", r.bounds_hold}, {"growth_holds", r.growth_holds}};
       }},
      {"isotropic_extension",
       [](Inputs& in, const json& a) -> json {
         const auto& L = in.lattice();
         auto s = hyperbolic_split(in.matrix(a), L.gram, in.rat_vector(a.at("H")));
         return isotropic_extension_dimension(L.gram, s.e_plus);
       }},
      {"cor_improve",
       [](Inputs& in, const json& a) -> json { return cor_improve_applies(in.matrix(a), uarg(a, "n", 1)).to_json(); }},
      {"threshold",
       [](Inputs& in, const json& a) -> json {
         auto r = threshold_from_args(in, a);
         json j = {{"boundary", r.boundary}, {"note", r.note}};
         j["n"] = r.n ? json(*r.n) : json(nullptr);
         return j;
       }},
      // maps
      {"certify_free",
       [](Inputs& in, const json& a) -> json {
         auto c = certify_free(in.map(), in.func(a.at("a")), in.func(a.at("b")), uarg(a, "step", 1), uarg(a, "depth", 3));
         json j = c.to_json();
         std::vector<std::string> words;
         for (const auto& w : c.witness) words.push_back(w.word);
         std::sort(words.begin(), words.end());
         j["witness_words"] = words;
         if (!c.free) j["witness_expands_to_zero"] = expand_witness(c.witness, c.a, c.b, in.map(), c.step).is_zero();
         return j;
       }},
      {"doubling_profile",
       [](Inputs& in, const json& a) -> json {
         RatFunc h = in.func(a.at("h"));
         unsigned n = uarg(a, "step", 1), jm = uarg(a, "depth", 3);
         std::string curve = a.value("curve", std::string("auto"));
         CurveRestriction C = curve == "auto" ? select_line(in.map(), h, n, jm)
                                              : CurveRestriction::parse(curve, in.map().nvars());
         json j = doubling_profile(in.map(), h, C, n, jm).to_json();
         j["curve"] = C.to_string();
         return j;
       }},
      {"power_lift",
       [](Inputs& in, const json& a) -> json {
         return power_lift_check(in.map(), in.func(a.at("a")), in.func(a.at("b")), uarg(a, "i", 1), uarg(a, "m", 2),
                                 uarg(a, "depth", 3))
             .to_json();
       }},
      {"growth_profile",
       [](Inputs& in, const json& a) -> json {
         std::vector<RatFunc> gens;
         for (const auto& g : a.at("gens")) gens.push_back(in.func(g));
         return growth_profile(in.map(), gens, uarg(a, "N", 6), uarg(a, "step", 1)).to_json();
       }},
      {"degree_sequence",
       [](Inputs& in, const json& a) -> json {
         CremonaOptions o;
         if (a.contains("max_degree")) o.max_degree = a["max_degree"].get<int>();
         auto s = degree_sequence(in.plane_map(), uarg(a, "N", 8), o);
         json j = s.to_json();
         if (s.recurrence_lambda) j["lambda"] = quad_json(*s.recurrence_lambda);
         if (s.recurrence_estimate) j["estimates_agree"] = std::abs(*s.recurrence_estimate - s.root_estimate) < 1e-3;
         return j;
       }},
      {"homogenize", [](Inputs& in, const json&) -> json { return in.plane_map().to_json(); }},
      {"compose_self",
       [](Inputs& in, const json&) -> json {
         PlaneMap c = compose_primitive(in.plane_map(), in.plane_map());
         return {{"degree", c.degree()}, {"is_identity", c.is_identity()}, {"forms", c.to_json()["forms"]}};
       }},
      {"contracted_curves", [](Inputs& in, const json&) -> json { return contracted_curves(in.plane_map()).to_json(); }},
      {"nongeometric",
       [](Inputs& in, const json& a) -> json {
         if (a.contains("lambda")) return henon_nongeometric_report(quad_from_json(a["lambda"])).to_json();
         return henon_nongeometric_report(degree_sequence(in.plane_map(), uarg(a, "N", 8))).to_json();
       }},
  };
  return table;
}

bool numbers_match(double e, double a, double tol) { return std::abs(e - a) <= tol; }

std::optional<QuadExt> as_quad(const json& v) {
  try {
    if (v.is_number_integer() || v.is_string()) return quad_from_json(v);
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

Expectation read_expectation(const json& j, const std::string& fixture) {
  Expectation e;
  e.id = j.at("id").get<std::string>();
  e.op = j.at("op").get<std::string>();
  if (!ops().count(e.op)) throw Error(fixture + "/" + e.id + ": unknown operation '" + e.op + "'");
  e.args = j.value("args", json::object());
  e.expect = j.at("expect");
  e.tol = j.value("tol", 0.0);
  if (!j.contains("source")) throw Error(fixture + "/" + e.id + ": missing source tag");
  e.source = parse_source(j.at("source").get<std::string>());
  e.oracle = j.value("oracle", std::string());
  if (e.source == Source::Derived && e.oracle.empty())
    throw Error(fixture + "/" + e.id + ": derived values must name their oracle");
  if (j.contains("erratum")) {
    const json& r = j["erratum"];
    if (e.source != Source::Derived) throw Error(fixture + "/" + e.id + ": an erratum corrects a derived value");
    Erratum x;
    x.id = r.at("id").get<std::string>();
    x.title = r.at("title").get<std::string>();
    x.published = r.at("published");
    x.published_args = r.value("args", json::object());
    x.note = r.at("note").get<std::string>();
    e.erratum = x;
  }
  return e;
}

json merged(json args, const json& overrides) {
  for (auto it = overrides.begin(); it != overrides.end(); ++it) args[it.key()] = it.value();
  return args;
}

}  // namespace

bool matches(const json& expected, const json& actual, double tol) {
  if (expected.is_object()) {
    if (!actual.is_object()) return false;
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      const std::string& k = it.key();
      if (k.size() > 5 && k.compare(k.size() - 5, 5, "_head") == 0) {
        const std::string base = k.substr(0, k.size() - 5);
        if (!actual.contains(base) || !actual[base].is_array() || !it.value().is_array()) return false;
        if (actual[base].size() < it.value().size()) return false;
        for (std::size_t i = 0; i < it.value().size(); ++i)
          if (!matches(it.value()[i], actual[base][i], tol)) return false;
        continue;
      }
      if (!actual.contains(k) || !matches(it.value(), actual[k], tol)) return false;
    }
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (!matches(expected[i], actual[i], tol)) return false;
    return true;
  }
  if (expected.is_boolean() || actual.is_boolean()) return expected == actual;
  if (expected.is_null() || actual.is_null()) return expected.is_null() && actual.is_null();
  if (expected.is_number_float() || actual.is_number_float()) {
    if (!expected.is_number() || !actual.is_number()) return false;
    return numbers_match(expected.get<double>(), actual.get<double>(), tol);
  }
  auto e = as_quad(expected), a = as_quad(actual);
  if (e && a) return *e == *a;
  return expected == actual;
}

Fixture Fixture::from_json(const json& j) {
  if (j.value("schema", 0) != kFixtureSchema)
    throw Error("fixture schema " + std::to_string(j.value("schema", 0)) + " is not supported (expected " +
                std::to_string(kFixtureSchema) + ")");
  Fixture f;
  f.name = j.at("name").get<std::string>();
  f.kind = j.at("kind").get<std::string>();
  if (f.kind != "lattice" && f.kind != "map" && f.kind != "combined")
    throw Error(f.name + ": unknown fixture kind '" + f.kind + "'");
  f.summary = j.value("summary", std::string());
  f.lattice = j.value("lattice", json());
  f.map = j.value("map", json());
  for (const auto& e : j.at("expectations")) f.expectations.push_back(read_expectation(e, f.name));
  return f;
}

Fixture Fixture::load(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open fixture file " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(file.string() + ": " + e.what());
  }
  return from_json(j);
}

fs::path fixture_dir(const std::optional<fs::path>& override_dir) {
  if (override_dir) return *override_dir;
  if (const char* env = std::getenv("SKEWCERT_FIXTURES"); env && *env) return env;
  return SKEWCERT_FIXTURE_DIR;
}

std::vector<FixtureSummary> list_fixtures(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("fixture directory not found: " + dir.string());
  std::vector<FixtureSummary> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    Fixture f = Fixture::load(entry.path());
    out.push_back({f.name, f.kind, f.summary});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

Fixture load_fixture(const fs::path& dir, const std::string& name) {
  fs::path file = dir / (name + ".json");
  if (!fs::exists(file)) throw Error("unknown fixture '" + name + "'");
  Fixture f = Fixture::load(file);
  if (f.name != name) throw Error(file.string() + " declares name '" + f.name + "'");
  return f;
}

json evaluate_op(const Fixture& fx, const std::string& op, const json& args) {
  auto it = ops().find(op);
  if (it == ops().end()) throw Error("unknown operation '" + op + "'");
  Inputs in{fx, {}, {}, {}};
  return it->second(in, args);
}

namespace {

ExpectationResult run_expectation(Inputs& in, const Expectation& e) {
  ExpectationResult r;
  r.id = e.id;
  r.op = e.op;
  r.source = e.source;
  r.oracle = e.oracle;
  r.expected = e.expect;
  r.erratum = e.erratum;
  const OpFn& fn = ops().at(e.op);
  try {
    r.actual = fn(in, e.args);
    r.passed = matches(e.expect, r.actual, e.tol);
  } catch (const std::exception& ex) {
    r.error = ex.what();
  }
  if (e.erratum) {
    try {
      r.published_actual = fn(in, merged(e.args, e.erratum->published_args));
      r.published_matches = matches(e.erratum->published, r.published_actual, e.tol);
    } catch (const std::exception& ex) {
      r.published_error = ex.what();
    }
  }
  return r;
}

std::string compact(const json& j) {
  std::string s = j.dump();
  return s.size() > 160 ? s.substr(0, 157) + "..." : s;
}

// The keys of `actual` that `shape` names, so errata show like with like.
json restrict_keys(const json& actual, const json& shape) {
  if (!actual.is_object() || !shape.is_object()) return actual;
  json out = json::object();
  for (auto it = shape.begin(); it != shape.end(); ++it)
    if (actual.contains(it.key())) out[it.key()] = actual[it.key()];
  return out;
}

}  // namespace

FixtureReport run_fixture(const Fixture& fx) {
  FixtureReport rep;
  rep.name = fx.name;
  Inputs in{fx, {}, {}, {}};
  for (const auto& e : fx.expectations) rep.results.push_back(run_expectation(in, e));
  return rep;
}

FixtureReport run_fixture(const fs::path& dir, const std::string& name) { return run_fixture(load_fixture(dir, name)); }

bool FixtureReport::passed() const { return failures() == 0; }

std::size_t FixtureReport::failures() const {
  return std::size_t(std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; }));
}

json FixtureReport::to_json() const {
  json rs = json::array();
  for (const auto& r : results) {
    json j = {{"id", r.id},           {"op", r.op},         {"source", skewcert::to_string(r.source)},
              {"status", r.passed ? "pass" : "fail"},       {"expected", r.expected},
              {"actual", r.actual}};
    if (!r.oracle.empty()) j["oracle"] = r.oracle;
    if (!r.error.empty()) j["error"] = r.error;
    if (r.erratum) {
      json x = {{"id", r.erratum->id},
                {"title", r.erratum->title},
                {"published", r.erratum->published},
                {"published_actual", r.published_actual},
                {"published_reproduced", r.published_matches},
                {"note", r.erratum->note}};
      if (!r.published_error.empty()) x["published_error"] = r.published_error;
      j["erratum"] = x;
    }
    rs.push_back(j);
  }
  return {{"fixture", name}, {"passed", passed()}, {"failures", failures()}, {"results", rs}};
}

std::string FixtureReport::to_text() const {
  std::ostringstream os;
  os << "fixture " << name << "\n";
  for (const auto& r : results) {
    os << "  " << (r.passed ? "PASS" : "FAIL") << "  " << r.id << " [" << r.op << ", " << skewcert::to_string(r.source)
       << "]";
    if (!r.passed) os << "\n        expected " << compact(r.expected) << "\n        actual   " << compact(r.actual);
    if (!r.error.empty()) os << "\n        error: " << r.error;
    if (r.erratum)
      os << "\n        erratum " << r.erratum->id << ": published " << compact(r.erratum->published)
         << (r.published_matches ? " (reproduced)" : " (not reproduced)");
    os << "\n";
  }
  os << (passed() ? "ok" : "FAILED") << ": " << results.size() - failures() << "/" << results.size()
     << " expectations\n";
  return os.str();
}

std::string errata_markdown(const fs::path& dir) {
  std::ostringstream os;
  os << "# Errata\n\n"
     << "Generated by `skewcert atlas errata` from the erratum notes in `fixtures/`. Do not edit by hand.\n\n"
     << "Each entry pairs a printed value with the value the engine derives. Both are executed on every run: "
     << "the fixture asserts the derived value, and the printed one is evaluated alongside it.\n";
  struct Row {
    std::string fixture;
    Expectation e;
    ExpectationResult r;
  };
  std::vector<Row> rows;
  for (const auto& s : list_fixtures(dir)) {
    Fixture f = load_fixture(dir, s.name);
    Inputs in{f, {}, {}, {}};
    for (const auto& e : f.expectations)
      if (e.erratum) rows.push_back({f.name, e, run_expectation(in, e)});
  }
  // E2 before E10
  auto key = [](const std::string& id) {
    std::size_t k = id.find_first_of("0123456789");
    long n = k == std::string::npos ? 0 : std::stol(id.substr(k));
    return std::make_pair(id.substr(0, k), n);
  };
  std::sort(rows.begin(), rows.end(),
            [&](const Row& a, const Row& b) { return key(a.e.erratum->id) < key(b.e.erratum->id); });
  for (const auto& row : rows) {
    const Erratum& x = *row.e.erratum;
    os << "\n## " << x.id << ". " << x.title << "\n\n";
    os << "- Fixture: `" << row.fixture << "`, expectation `" << row.e.id << "` (operation `" << row.e.op << "`)\n";
    if (!x.published_args.empty()) os << "- Printed arguments: `" << x.published_args.dump() << "`\n";
    os << "- Printed value: `" << x.published.dump() << "`\n";
    os << "- Derived value: `" << row.e.expect.dump() << "` (oracle: " << row.e.oracle << ")\n";
    os << "- Check: derived value " << (row.r.passed ? "reproduced" : "NOT reproduced") << "; printed value "
       << (row.r.published_matches ? "also reproduced" : "not reproduced");
    if (!row.r.published_error.empty())
      os << " (" << row.r.published_error << ")";
    else if (!row.r.published_matches)
      os << " (evaluates to `" << compact(restrict_keys(row.r.published_actual, x.published)) << "`)";
    os << "\n";
    os << "- Note: " << x.note << "\n";
  }
  return os.str();
}

}  // namespace skewcert

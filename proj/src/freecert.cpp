#include "skewcert/freecert.hpp"

#include "skewcert/linalg.hpp"
#include "skewcert/modular.hpp"
#include "skewcert/parser.hpp"
#include "skewcert/polygcd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

namespace skewcert {

namespace {

const Vars& s_vars() {
  static const Vars v = make_vars({"s"});
  return v;
}

constexpr long kSeeds[] = {3, 5, 7, 2, 11, 13, -2, 17, 19, 23};

// value = scale * poly with poly primitive integral.
struct Factor {
  MultiPoly poly;
  Rational scale;
};

Factor split(const MultiPoly& p) {
  Rational c = p.content();
  return {p * Rational(1 / c), c};
}

std::size_t full_dim(unsigned j) { return std::size_t(1) << (j + 1); }

// Integer multiple of q, primitive, first nonzero entry positive.
std::vector<Integer> primitive_integers(const std::vector<Rational>& q) {
  Integer l = 1, g = 0;
  for (const auto& x : q) l = lcm(l, x.get_den());
  std::vector<Integer> r;
  for (const auto& x : q) {
    Rational v = x * Rational(l);
    r.push_back(v.get_num());
    g = gcd(g, r.back());
  }
  if (g == 0) return r;
  int sign = 1;
  for (const auto& x : r)
    if (x != 0) {
      sign = x < 0 ? -1 : 1;
      break;
    }
  for (auto& x : r) x = x / g * sign;
  return r;
}

MultiPoly poly_lcm(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_constant()) return b;
  if (b.is_constant()) return a;
  MultiPoly g = gcd(a, b);
  return divide_exact(a, g) * b;
}

}  // namespace

// ---------------------------------------------------------------- curves

CurveRestriction CurveRestriction::parse(const std::string& text, std::size_t nvars) {
  CurveRestriction c;
  c.param_vars = s_vars();
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) c.param.push_back(parse_ratfunc(part, s_vars()));
  if (c.param.size() != nvars)
    throw Error("curve has " + std::to_string(c.param.size()) + " coordinates, map has " +
                std::to_string(nvars) + " variables");
  bool moving = std::any_of(c.param.begin(), c.param.end(),
                            [](const RatFunc& f) { return !f.is_constant(); });
  if (!moving) throw Error("curve parametrization is constant");
  return c;
}

CurveRestriction CurveRestriction::horizontal_line(const Rational& c) {
  CurveRestriction r;
  r.param_vars = s_vars();
  r.param = {RatFunc::variable(s_vars(), 0), RatFunc::constant(s_vars(), c)};
  return r;
}

std::string CurveRestriction::to_string() const {
  std::string s = "s -> (";
  for (std::size_t i = 0; i < param.size(); ++i) s += (i ? ", " : "") + param[i].to_string();
  return s + ")";
}

int map_degree(const RatFunc& g) { return std::max(g.num().total_degree(), g.den().total_degree()); }

Restricted restrict_to_curve(const RatFunc& f, const CurveRestriction& C) {
  if (C.param.size() != f.nvars()) throw Error("curve and function have different dimensions");
  RatFunc value(C.param_vars);
  try {
    value = f.substitute(C.param);
  } catch (const Error&) {
    throw Error("curve inside polar locus");
  }
  return {value, map_degree(value)};
}

std::string to_string(RankRoute r) {
  switch (r) {
    case RankRoute::Proportional: return "proportional";
    case RankRoute::Symbolic: return "symbolic";
    case RankRoute::LineModular: return "line-modular";
  }
  return "?";
}

// ---------------------------------------------------------------- engine

struct DimensionEngine::LineState {
  PrimeField F;
  std::vector<std::uint64_t> c, d;
  std::vector<std::vector<ModPoly>> num, den;  // point P_k = sigma_map^k(line)
  std::vector<std::array<ModPoly, 2>> positions;
  bool dead = false;
  std::string label;

  LineState(std::uint64_t p, std::size_t nvars, unsigned k) : F(p) {
    for (std::size_t i = 0; i < nvars; ++i) {
      c.push_back(F.from_int(kSeeds[(k + i) % 10]));
      d.push_back(F.from_int(kSeeds[(k + 3 * i + 1) % 10]));
    }
    std::vector<ModPoly> n0, d0;
    label = "line x_i = c_i + d_i s with c = (";
    for (std::size_t i = 0; i < nvars; ++i) {
      ModPoly v = {c[i], d[i]};
      modpoly::trim(v);
      n0.push_back(v);
      d0.push_back({1});
      label += (i ? "," : "") + std::to_string(kSeeds[(k + i) % 10]);
    }
    label += "), d = (";
    for (std::size_t i = 0; i < nvars; ++i)
      label += (i ? "," : "") + std::to_string(kSeeds[(k + 3 * i + 1) % 10]);
    label += ") mod " + std::to_string(p);
    num.push_back(std::move(n0));
    den.push_back(std::move(d0));
  }

  // g at point k as a reduced fraction; false when undefined mod p.
  bool eval(const RatFunc& g, unsigned k, ModPoly& out_num, ModPoly& out_den) {
    std::vector<unsigned> bounds(g.nvars());
    for (std::size_t v = 0; v < g.nvars(); ++v)
      bounds[v] = unsigned(std::max(g.num().degree_in(v), g.den().degree_in(v)));
    try {
      out_num = modpoly::substitute_cleared(F, g.num(), num[k], den[k], bounds);
      out_den = modpoly::substitute_cleared(F, g.den(), num[k], den[k], bounds);
    } catch (const BadPrime&) {
      return false;
    }
    if (out_den.empty()) return false;
    if (out_den.size() > 1 && out_num.size() > 1) {
      ModPoly g2 = modpoly::gcd(F, out_num, out_den);
      if (g2.size() > 1) {
        out_num = modpoly::divrem(F, out_num, g2).first;
        out_den = modpoly::divrem(F, out_den, g2).first;
      }
    }
    std::uint64_t inv = F.inv(out_den.back());
    out_num = modpoly::scale(F, out_num, inv);
    out_den = modpoly::scale(F, out_den, inv);
    return true;
  }

  bool ensure_point(unsigned k, const std::vector<RatFunc>& images) {
    while (!dead && num.size() <= k) {
      std::size_t last = num.size() - 1;
      std::vector<ModPoly> nn, dd;
      for (const auto& g : images) {
        ModPoly a, b;
        if (!eval(g, unsigned(last), a, b)) {
          dead = true;
          break;
        }
        nn.push_back(std::move(a));
        dd.push_back(std::move(b));
      }
      if (dead) break;
      num.push_back(std::move(nn));
      den.push_back(std::move(dd));
    }
    return !dead;
  }
};

struct DimensionEngine::SymbolicState {
  std::vector<std::array<Factor, 2>> positions;
  // Cleared primitive word products of level words_level, and their scales.
  unsigned words_level = 0;
  std::vector<MultiPoly> words;
  std::vector<Rational> scales;
};

DimensionEngine::DimensionEngine(FieldEndo sigma, RatFunc a, RatFunc b, unsigned n,
                                 DimensionOptions opts)
    : sigma_(std::move(sigma)),
      a_(std::move(a)),
      b_(std::move(b)),
      n_(n),
      opts_(opts),
      sym_(std::make_unique<SymbolicState>()) {
  if (n_ == 0) throw Error("step n must be positive");
  if (a_.is_zero() || b_.is_zero()) throw Error("generators must be nonzero");
  RatFunc q = b_ / a_;
  if (q.is_constant()) {
    proportional_ = true;
    ratio_ = q.constant_value();
  }
}

DimensionEngine::~DimensionEngine() = default;

bool DimensionEngine::symbolic_feasible(unsigned j) {
  auto& S = *sym_;
  while (S.positions.size() <= j) {
    unsigned i = unsigned(S.positions.size());
    auto imgs = sigma_.try_power_images(n_ * i, opts_.symbolic_term_budget);
    if (!imgs) return false;
    RatFunc sa = a_.substitute(*imgs), sb = b_.substitute(*imgs);
    S.positions.push_back({split(sa.num() * sb.den()), split(sb.num() * sa.den())});
  }
  double est = 1, deg = 0;
  for (unsigned i = 0; i <= j; ++i) {
    const auto& p = S.positions[i];
    est *= double(std::max(p[0].poly.term_count(), p[1].poly.term_count()));
    deg += std::max(p[0].poly.total_degree(), p[1].poly.total_degree());
  }
  // Dense bound: monomials of degree <= deg in nvars variables.
  double dense = 1;
  const std::size_t nv = sigma_.nvars();
  for (std::size_t k = 1; k <= nv; ++k) dense = dense * (deg + double(k)) / double(k);
  est = std::min(est, dense);
  return est * double(full_dim(j)) <= double(opts_.product_term_budget);
}

std::optional<LevelResult> DimensionEngine::symbolic_level(unsigned j) {
  if (!symbolic_feasible(j)) return std::nullopt;
  auto& S = *sym_;
  if (S.words.empty() || S.words_level > j) {
    S.words.clear();
    S.scales.clear();
    for (const auto& f : S.positions[0]) {
      S.words.push_back(f.poly);
      S.scales.push_back(f.scale);
    }
    S.words_level = 0;
  }
  while (S.words_level < j) {
    const auto& pos = S.positions[S.words_level + 1];
    std::vector<MultiPoly> next;
    std::vector<Rational> scales;
    next.reserve(2 * S.words.size());
    for (std::size_t w = 0; w < S.words.size(); ++w)
      for (const auto& f : pos) {
        next.push_back(S.words[w] * f.poly);
        scales.push_back(S.scales[w] * f.scale);
      }
    S.words = std::move(next);
    S.scales = std::move(scales);
    ++S.words_level;
  }

  LevelResult r;
  r.j = j;
  r.words = S.words.size();
  r.route = RankRoute::Symbolic;
  MonomialColumns cols;
  SparseEchelon E;
  for (std::size_t w = 0; w < S.words.size(); ++w) {
    auto dep = E.insert(cols.row(S.words[w]));
    if (dep && r.witness.empty()) {
      // word_w * D = scale_w * content_w * row_w for a common D.
      std::vector<Rational> q(dep->size());
      for (std::size_t k = 0; k < dep->size(); ++k)
        q[k] = Rational((*dep)[k]) / (S.scales[k] * S.words[k].content());
      auto ints = primitive_integers(q);
      for (std::size_t k = 0; k < ints.size(); ++k)
        if (ints[k] != 0) r.witness.push_back({word_label(k, j + 1), ints[k]});
    }
  }
  r.dim = E.rank();
  r.detail = "fraction-free elimination over " + std::to_string(cols.size()) + " monomials";
  return r;
}

std::optional<LevelResult> DimensionEngine::line_level(unsigned j) {
  const auto primes = word_primes();
  const auto& images = sigma_.images();
  for (unsigned k = 0; k < opts_.line_attempts; ++k) {
    if (lines_.size() <= k)
      lines_.push_back(std::make_unique<LineState>(primes[k % primes.size()], sigma_.nvars(), k));
    LineState& L = *lines_[k];
    while (!L.dead && L.positions.size() <= j) {
      unsigned i = unsigned(L.positions.size());
      if (!L.ensure_point(n_ * i, images)) break;
      ModPoly an, ad, bn, bd;
      if (!L.eval(a_, n_ * i, an, ad) || !L.eval(b_, n_ * i, bn, bd)) {
        L.dead = true;
        break;
      }
      L.positions.push_back({modpoly::mul(L.F, an, bd), modpoly::mul(L.F, bn, ad)});
    }
    if (L.dead) continue;

    std::vector<ModPoly> words = {L.positions[0][0], L.positions[0][1]};
    for (unsigned i = 1; i <= j; ++i) {
      std::vector<ModPoly> next;
      next.reserve(2 * words.size());
      for (const auto& w : words)
        for (const auto& f : L.positions[i]) next.push_back(modpoly::mul(L.F, w, f));
      words = std::move(next);
    }
    std::size_t width = 0;
    for (const auto& w : words) width = std::max(width, w.size());
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(words.size());
    for (auto& w : words) {
      w.resize(width, 0);
      rows.push_back(std::move(w));
    }
    std::size_t rank = mod_rank(L.F, rows);
    if (rank == full_dim(j)) {
      LevelResult r;
      r.j = j;
      r.words = full_dim(j);
      r.dim = rank;
      r.route = RankRoute::LineModular;
      r.detail = "full rank on " + L.label;
      return r;
    }
  }
  return std::nullopt;
}

const LevelResult& DimensionEngine::level(unsigned j) {
  if (auto it = levels_.find(j); it != levels_.end()) return it->second;
  if (proportional_) {
    LevelResult r;
    r.j = j;
    r.words = full_dim(j);
    r.dim = 1;
    r.route = RankRoute::Proportional;
    r.detail = "b = " + skewcert::to_string(ratio_) + " * a";
    if (j == 0) {
      auto ints = primitive_integers({ratio_, Rational(-1)});
      r.witness = {{"A", ints[0]}, {"B", ints[1]}};
    }
    return levels_.emplace(j, std::move(r)).first->second;
  }

  std::optional<LevelResult> got;
  bool tried_line = false;
  bool feasible = opts_.allow_symbolic && symbolic_feasible(j);
  if (opts_.allow_line && (opts_.prefer_line || !feasible)) {
    tried_line = true;
    got = line_level(j);
  }
  if (!got && feasible) got = symbolic_level(j);
  if (!got && opts_.allow_symbolic && !feasible) {
    // Deficient (or undecided) on lines: retry exactly with a larger budget.
    DimensionOptions saved = opts_;
    opts_.symbolic_term_budget *= 8;
    opts_.product_term_budget *= 8;
    got = symbolic_level(j);
    opts_ = saved;
  }
  if (!got && opts_.allow_line && !tried_line) got = line_level(j);
  if (!got)
    throw BudgetExceeded("graded dimension at j=" + std::to_string(j) +
                         ": not full rank on restricted lines and exact elimination exceeds budget");
  return levels_.emplace(j, std::move(*got)).first->second;
}

std::size_t graded_dimension(const FieldEndo& sigma, const RatFunc& a, const RatFunc& b, unsigned n,
                             unsigned j, const DimensionOptions& opts) {
  DimensionEngine E(sigma, a, b, n, opts);
  return E.level(j).dim;
}

// ---------------------------------------------------------------- certificates

namespace {

nlohmann::json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return skewcert::to_string(z);
}

}  // namespace

std::string FreenessCertificate::verdict() const {
  if (free) return "FreeUpTo(" + std::to_string(depth) + ")";
  return "NotFree(at t-degree " + std::to_string(at_degree) + ")";
}

nlohmann::json FreenessCertificate::to_json() const {
  nlohmann::json j;
  j["map"] = map_spec;
  j["gens"] = {a.to_string(), b.to_string()};
  j["step"] = step;
  j["depth"] = depth;
  j["dims"] = dims;
  j["verdict"] = verdict();
  j["free"] = free;
  if (!free) {
    j["at_degree"] = at_degree;
    nlohmann::json w = nlohmann::json::array();
    for (const auto& t : witness) w.push_back({{"word", t.word}, {"coeff", integer_json(t.coeff)}});
    j["witness"] = w;
  }
  nlohmann::json routes = nlohmann::json::array();
  for (const auto& L : levels)
    routes.push_back({{"j", L.j}, {"dim", L.dim}, {"words", L.words}, {"route", to_string(L.route)},
                      {"detail", L.detail}});
  j["routes"] = routes;
  j["scope"] = "finite window: words of length at most " + std::to_string(depth + 1) +
               "; says nothing about longer words";
  return j;
}

FreenessCertificate certify_free(const FieldEndo& sigma, const RatFunc& a, const RatFunc& b,
                                 unsigned n, unsigned j_max, const DimensionOptions& opts) {
  FreenessCertificate c;
  c.map_spec = sigma.to_json();
  c.a = a;
  c.b = b;
  c.step = n;
  c.depth = j_max;
  DimensionEngine E(sigma, a, b, n, opts);
  for (unsigned j = 0; j <= j_max; ++j) {
    const LevelResult& L = E.level(j);
    c.levels.push_back(L);
    c.dims.push_back(L.dim);
    if (L.dim < full_dim(j)) {
      c.free = false;
      c.at_degree = long(j + 1) * n;
      c.witness = L.witness;
      break;
    }
  }
  return c;
}

SkewElement expand_witness(const std::vector<WitnessTerm>& witness, const RatFunc& a,
                           const RatFunc& b, const FieldEndo& sigma, unsigned n) {
  SkewElement sum(sigma);
  for (const auto& t : witness)
    sum = sum + word_as_product(t.word, a, b, sigma, n) * Rational(t.coeff);
  return sum;
}

// ---------------------------------------------------------------- doubling

nlohmann::json DoublingProfile::to_json() const {
  return {{"degrees", degrees}, {"holds", holds}, {"reason", reason},
          {"curve_contracted", curve_contracted}, {"curve_log", validity_log}};
}

DoublingProfile doubling_profile(const FieldEndo& sigma, const RatFunc& h, CurveRestriction C,
                                 unsigned n, unsigned j_max) {
  if (n == 0) throw Error("step n must be positive");
  if (C.param.size() != sigma.nvars()) throw Error("curve and map have different dimensions");
  DoublingProfile P;
  P.validity_log = C.validity_log;
  P.validity_log.push_back("curve " + C.to_string());
  std::vector<RatFunc> cur = C.param;
  unsigned at = 0;
  bool iterate_curve = true;
  for (unsigned j = 0; j <= j_max; ++j) {
    const unsigned k = n * j;
    std::optional<RatFunc> value;
    if (iterate_curve) {
      try {
        while (at < k) {
          std::vector<RatFunc> next;
          for (const auto& g : sigma.images()) next.push_back(g.substitute(cur));
          cur = std::move(next);
          ++at;
          bool point = std::all_of(cur.begin(), cur.end(), [](const RatFunc& f) { return f.is_constant(); });
          if (point && !P.curve_contracted) {
            P.curve_contracted = true;
            P.validity_log.push_back("C contracted to a point by the map iterate " + std::to_string(at));
          }
        }
        value = h.substitute(cur);
      } catch (const Error&) {
        iterate_curve = false;
        P.validity_log.push_back("j=" + std::to_string(j) +
                                 ": iterated curve meets a polar locus; restricting exact iterates instead");
      }
    }
    if (!value) {
      try {
        value = restrict_to_curve(sigma.apply_power(h, k), C).value;
      } catch (const Error& e) {
        throw Error("j=" + std::to_string(j) + ": " + e.what());
      }
    }
    if (value->is_zero())
      throw Error("j=" + std::to_string(j) + ": sigma^" + std::to_string(k) +
                  "(h) vanishes identically on C");
    int d = map_degree(*value);
    P.degrees.push_back(d);
    P.validity_log.push_back("j=" + std::to_string(j) + ": sigma^" + std::to_string(k) +
                             "(h) and its inverse restrict to finite nonzero functions, degree " +
                             std::to_string(d));
  }
  P.holds = true;
  P.reason = "d_0 >= 1 and d_(j+1) >= 2 d_j throughout";
  for (std::size_t j = 0; j < P.degrees.size(); ++j) {
    if (P.degrees[j] < 1) {
      P.holds = false;
      P.reason = "d_" + std::to_string(j) + " = 0: restriction is constant";
      break;
    }
    if (j + 1 < P.degrees.size() && P.degrees[j + 1] < 2 * P.degrees[j]) {
      P.holds = false;
      P.reason = "d_" + std::to_string(j + 1) + " = " + std::to_string(P.degrees[j + 1]) + " < 2 d_" +
                 std::to_string(j) + " = " + std::to_string(2 * P.degrees[j]);
      break;
    }
  }
  if (P.holds && P.curve_contracted) {
    P.holds = false;
    P.reason = "curve contracted within the window";
  }
  return P;
}

CurveRestriction select_line(const FieldEndo& sigma, const RatFunc& h, unsigned n, unsigned j_max) {
  if (sigma.nvars() != 2) throw Error("default lines are only defined for two variables");
  std::vector<std::string> skipped;
  for (long c : kSeeds) {
    CurveRestriction C = CurveRestriction::horizontal_line(c);
    try {
      auto P = doubling_profile(sigma, h, C, n, j_max);
      if (P.curve_contracted) {
        skipped.push_back("y = " + std::to_string(c) + " (contracted)");
        continue;
      }
    } catch (const Error& e) {
      skipped.push_back("y = " + std::to_string(c) + " (" + e.what() + ")");
      continue;
    }
    std::string note = "line y = " + std::to_string(c) + " chosen from the seed list";
    if (!skipped.empty()) {
      note += "; skipped";
      for (const auto& s : skipped) note += " " + s;
    }
    C.validity_log.push_back(note);
    return C;
  }
  throw Error("no line y = c from the seed list passes the validity checks");
}

// ---------------------------------------------------------------- lemma

namespace {

MultiPoly common_denominator(const std::vector<RatFunc>& fs) {
  MultiPoly L = MultiPoly::constant(fs.front().vars(), 1);
  for (const auto& f : fs) L = poly_lcm(L, f.den());
  return L;
}

std::size_t span_rank(const std::vector<RatFunc>& fs) {
  if (fs.empty()) return 0;
  MultiPoly L = common_denominator(fs);
  MonomialColumns cols;
  SparseEchelon E;
  for (const auto& f : fs) {
    if (f.is_zero()) continue;
    E.insert(cols.row(f.num() * divide_exact(L, f.den())));
  }
  return E.rank();
}

}  // namespace

Lemma63Report lemma63_check(const std::vector<RatFunc>& T, const RatFunc& f) {
  if (f.nvars() != 1) throw Error("lemma check expects univariate functions");
  for (const auto& g : T)
    if (!same_vars(g.vars(), f.vars())) throw Error("lemma check: mixed variables");
  Lemma63Report R;
  std::vector<RatFunc> TU = T;
  for (const auto& g : T) TU.push_back(g * f);
  R.dim_T = span_rank(T);
  R.dim_TU = span_rank(TU);

  const int df = map_degree(f);
  int bound = -1;
  if (R.dim_T > 0) {
    MultiPoly L = common_denominator(T);
    bound = L.total_degree();
    for (const auto& g : T)
      if (!g.is_zero()) bound = std::max(bound, (g.num() * divide_exact(L, g.den())).total_degree());
  }
  if (bound < df) {
    R.hypothesis_verified = true;
    R.status = "hypothesis verified: every g in span(T) has degree <= " + std::to_string(std::max(bound, 0)) +
               " < deg f = " + std::to_string(df);
    R.verdict = R.dim_TU == 2 * R.dim_T;
    return R;
  }
  std::vector<RatFunc> probes;
  for (const auto& g : T)
    if (!g.is_zero()) probes.push_back(g);
  std::mt19937_64 rng(63);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int k = 0; k < 16 && !T.empty(); ++k) {
    RatFunc g(f.vars());
    for (const auto& t : T) g = g + t * Rational(coef(rng));
    if (!g.is_zero()) probes.push_back(g);
  }
  for (const auto& g : probes)
    if (map_degree(g) >= df) {
      R.status = "hypothesis unverified: deg(" + g.to_string() + ") = " + std::to_string(map_degree(g)) +
                 " >= deg f = " + std::to_string(df);
      return R;
    }
  R.status = "hypothesis unverified: degree bound " + std::to_string(bound) +
             " on span(T) is not below deg f = " + std::to_string(df) +
             "; no violation among basis and random combinations";
  return R;
}

// ---------------------------------------------------------------- power lift

nlohmann::json PowerLiftReport::to_json() const {
  return {{"antecedent", antecedent.to_json()},
          {"consequent", consequent.to_json()},
          {"implication_holds", implication_holds},
          {"status", status}};
}

PowerLiftReport power_lift_check(const FieldEndo& sigma, const RatFunc& a, const RatFunc& b,
                                 unsigned i, unsigned m, unsigned j_max, const DimensionOptions& opts) {
  if (i == 0 || m == 0) throw Error("step and multiplier must be positive");
  PowerLiftReport R;
  // The product V s^m(V) .. s^(mJ)(V) is a quotient of W (x) it for W of dimension
  // 2^((m-1)J), onto V s(V) .. s^(mJ)(V); so step-i depth mJ controls step-im depth J.
  R.antecedent = certify_free(sigma, a, b, i, m * j_max, opts);
  R.consequent = certify_free(sigma, a, b, i * m, j_max, opts);
  if (!R.antecedent.free) {
    R.implication_holds = true;
    R.status = "antecedent false";
  } else if (R.consequent.free) {
    R.implication_holds = true;
    R.status = "implication holds";
  } else {
    R.implication_holds = false;
    R.status = "implication fails";
  }
  return R;
}

// ---------------------------------------------------------------- growth

nlohmann::json GrowthProfile::to_json() const {
  return {{"dims", dims}, {"ratios", ratios}, {"exponential", exponential},
          {"estimate", estimate}, {"summary", summary}};
}

namespace {

struct OverBudget {};

std::vector<std::size_t> growth_dims_symbolic(const FieldEndo& sigma, const std::vector<RatFunc>& gens,
                                              unsigned N, unsigned n, const DimensionOptions& opts) {
  std::vector<std::size_t> dims;
  std::vector<MultiPoly> basis;
  for (unsigned m = 1; m <= N; ++m) {
    auto imgs = sigma.try_power_images(n * (m - 1), opts.symbolic_term_budget);
    if (!imgs) throw OverBudget{};
    std::vector<RatFunc> g;
    for (const auto& x : gens) g.push_back(x.substitute(*imgs));
    MultiPoly Q = common_denominator(g);
    std::vector<MultiPoly> F;
    for (const auto& x : g) F.push_back((x.num() * divide_exact(Q, x.den())).primitive_part());
    std::vector<MultiPoly> cands;
    if (m == 1) {
      cands = F;
    } else {
      std::size_t est = 0;
      for (const auto& p : basis)
        for (const auto& f : F) est += p.term_count() * f.term_count();
      if (est > opts.product_term_budget) throw OverBudget{};
      for (const auto& p : basis)
        for (const auto& f : F) cands.push_back(p * f);
    }
    MonomialColumns cols;
    SparseEchelon E;
    std::vector<MultiPoly> next;
    for (auto& c : cands)
      if (!E.insert(cols.row(c))) next.push_back(std::move(c));
    basis = std::move(next);
    dims.push_back(E.rank());
  }
  return dims;
}

}  // namespace

GrowthProfile growth_profile(const FieldEndo& sigma, const std::vector<RatFunc>& generators,
                             unsigned N, unsigned n, const DimensionOptions& opts) {
  if (generators.empty()) throw Error("growth profile needs at least one generator");
  for (const auto& g : generators)
    if (g.is_zero()) throw Error("generators must be nonzero");
  if (n == 0) throw Error("step n must be positive");
  GrowthProfile G;
  try {
    G.dims = growth_dims_symbolic(sigma, generators, N, n, opts);
  } catch (const OverBudget&) {
    if (generators.size() != 2) throw BudgetExceeded("growth profile exceeds the term budget");
    DimensionEngine E(sigma, generators[0], generators[1], n, opts);
    G.dims.clear();
    for (unsigned m = 1; m <= N; ++m) G.dims.push_back(E.level(m - 1).dim);
  }
  for (std::size_t m = 1; m < G.dims.size(); ++m)
    G.ratios.push_back(double(G.dims[m]) / double(G.dims[m - 1]));
  if (G.ratios.empty()) {
    G.summary = "one term only";
    return G;
  }
  double last = G.ratios.back();
  if (last >= 1.5) {
    G.exponential = true;
    G.estimate = last;
    char buf[64];
    std::snprintf(buf, sizeof buf, "exponential, ratio %.3f", last);
    G.summary = buf;
  } else {
    std::size_t M = G.dims.size();
    G.estimate = std::log(double(G.dims[M - 1]) / double(G.dims[M - 2])) / std::log(double(M) / double(M - 1));
    char buf[64];
    std::snprintf(buf, sizeof buf, "polynomial, fitted degree %.3f", G.estimate);
    G.summary = buf;
  }
  return G;
}

}  // namespace skewcert

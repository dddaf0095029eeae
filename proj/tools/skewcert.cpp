#include "skewcert/atlas.hpp"
#include "skewcert/cremona.hpp"
#include "skewcert/error.hpp"
#include "skewcert/freecert.hpp"
#include "skewcert/nslattice.hpp"
#include "skewcert/parser.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace skewcert;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return json::parse(in);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}
std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct CertifyArgs {
  std::string map, gens = "x,y";
  unsigned step = 1, depth = 3;
  bool json = false;
};

int run_certify(const CertifyArgs& a) {
  FieldEndo sigma = FieldEndo::from_json(read_json(a.map));
  auto g = split_list(a.gens);
  if (g.size() != 2) throw Error("--gens takes exactly two generators");
  RatFunc ga = parse_ratfunc(g[0], sigma.vars()), gb = parse_ratfunc(g[1], sigma.vars());
  auto c = certify_free(sigma, ga, gb, a.step, a.depth);
  if (a.json) {
    json j = c.to_json();
    if (!c.free) j["witness_expands_to_zero"] = expand_witness(c.witness, ga, gb, sigma, a.step).is_zero();
    emit(j);
    return 0;
  }
  std::cout << "dims    " << join(c.dims) << "\nverdict " << c.verdict() << "\n";
  for (const auto& L : c.levels)
    std::cout << "  j=" << L.j << " dim " << L.dim << "/" << L.words << " via " << to_string(L.route) << "\n";
  if (!c.free) {
    std::cout << "witness";
    for (const auto& t : c.witness) std::cout << " " << (t.coeff >= 0 ? "+" : "") << t.coeff.get_str() << "*" << t.word;
    std::cout << "\nexpands to zero: "
              << (expand_witness(c.witness, ga, gb, sigma, a.step).is_zero() ? "yes" : "NO") << "\n";
  } else {
    std::cout << "finite window only: words of length <= " << a.depth + 1 << "\n";
  }
  return 0;
}

struct DoublingArgs {
  std::string map, h, curve = "auto";
  unsigned step = 1, depth = 5;
  bool json = false;
};

int run_doubling(const DoublingArgs& a) {
  FieldEndo sigma = FieldEndo::from_json(read_json(a.map));
  RatFunc h = parse_ratfunc(a.h, sigma.vars());
  CurveRestriction C = a.curve == "auto" ? select_line(sigma, h, a.step, a.depth)
                                         : CurveRestriction::parse(a.curve, sigma.vars()->size());
  auto p = doubling_profile(sigma, h, C, a.step, a.depth);
  if (a.json) {
    json j = p.to_json();
    j["curve"] = C.to_string();
    emit(j);
    return 0;
  }
  std::cout << "curve   " << C.to_string() << "\ndegrees " << join(p.degrees) << "\nholds   "
            << (p.holds ? "yes" : "no") << "\n";
  if (!p.reason.empty()) std::cout << "reason  " << p.reason << "\n";
  for (const auto& l : p.validity_log) std::cout << "  " << l << "\n";
  return 0;
}

struct LatticeArgs {
  std::string spec, op = "radius", H = "H", C, threshold = "main";
  unsigned j_max = 10;
  bool json = false;
};

int run_lattice(const LatticeArgs& a) {
  LatticeSystem L = LatticeSystem::from_json(read_json(a.spec));
  json out;
  if (a.op == "radius") {
    out = spectral_radius(L.pullback).to_json();
  } else if (a.op == "signature") {
    auto s = signature(L.gram);
    out = {{"signature", {s.p, s.q}},
           {"isometry", is_isometry(L.pullback, L.gram)},
           {"hodge_index", s.p == 1 && s.q + 1 == L.rank()}};
  } else if (a.op == "split") {
    out = hyperbolic_split(L.pullback, L.gram, L.cls(a.H)).to_json();
  } else if (a.op == "sequence") {
    out = intersection_sequence(L.pullback, L.gram, L.cls(a.H), L.cls(a.C.empty() ? a.H : a.C), a.j_max).to_json();
  } else if (a.op == "threshold") {
    auto s = spectral_radius(L.pullback);
    Threshold t = parse_threshold(a.threshold);
    ThresholdResult r = s.exact ? threshold_min_power(*s.exact, t) : threshold_min_power(s.lo, s.hi, t);
    out = {{"lambda", s.exact ? json(s.exact->to_string()) : json(s.approx())},
           {"threshold", threshold_value(t).to_string()},
           {"n", r.n ? json(*r.n) : json()},
           {"boundary", r.boundary},
           {"note", r.note}};
  } else {
    throw Error("unknown lattice op '" + a.op + "' (radius, signature, split, sequence, threshold)");
  }
  if (a.json) {
    emit(out);
  } else {
    for (auto it = out.begin(); it != out.end(); ++it) std::cout << it.key() << ": " << it.value().dump() << "\n";
  }
  return 0;
}

struct CremonaArgs {
  std::string map, h, curve = "auto";
  unsigned iterations = 8, step = 1, depth = 3;
  int max_degree = 512;
  bool json = false;
};

int run_cremona(const CremonaArgs& a) {
  json spec = read_json(a.map);
  PlaneMap P = PlaneMap::from_json(spec);
  CremonaOptions o;
  o.max_degree = a.max_degree;
  DegreeSequence s = degree_sequence(P, a.iterations, o);
  json out = s.to_json();
  json verified = json::array();
  verified.push_back(s.partial ? "degree sequence (partial)" : "degree sequence");
  if (s.recurrence_lambda) {
    out["lambda"] = s.recurrence_lambda->to_string();
    auto r = threshold_min_power(*s.recurrence_lambda, Threshold::Main);
    out["threshold"] = {{"n", r.n ? json(*r.n) : json()}, {"boundary", r.boundary}, {"note", r.note}};
    verified.push_back("threshold");
  }
  out["nongeometric"] = henon_nongeometric_report(s).to_json();
  if (!a.h.empty()) {
    FieldEndo sigma = FieldEndo::from_json(spec);
    RatFunc h = parse_ratfunc(a.h, sigma.vars());
    CurveRestriction C = a.curve == "auto" ? select_line(sigma, h, a.step, a.depth)
                                           : CurveRestriction::parse(a.curve, sigma.vars()->size());
    auto d = doubling_profile(sigma, h, C, a.step, a.depth);
    out["doubling"] = d.to_json();
    out["doubling"]["curve"] = C.to_string();
    if (d.holds) verified.push_back("doubling on the given curve");
  }
  out["verified"] = verified;
  out["not_built"] = "stable model; the free pair for a non-geometric map is not constructed";
  if (a.json) {
    emit(out);
    return 0;
  }
  std::cout << "map       " << P.to_string() << "\ndegrees   " << join(s.degrees) << (s.partial ? " (partial)" : "")
            << "\ndrops     " << join(s.drops) << "\nd_N^(1/N) " << s.root_estimate << "\n";
  if (s.recurrence) {
    std::cout << "recurrence";
    for (const auto& c : *s.recurrence) std::cout << " " << c.get_str();
    std::cout << " from n=" << s.recurrence_start + 1 << "\n";
  }
  if (out.contains("lambda")) std::cout << "lambda    " << out["lambda"].get<std::string>() << "\n";
  if (out.contains("threshold")) std::cout << "threshold " << out["threshold"].dump() << "\n";
  std::cout << "nongeometric: " << out["nongeometric"]["explanation"].get<std::string>() << "\n";
  if (out.contains("doubling"))
    std::cout << "doubling  " << join(out["doubling"]["degrees"].get<std::vector<int>>()) << " on "
              << out["doubling"]["curve"].get<std::string>() << "\n";
  std::cout << "verified: " << verified.dump() << "\n";
  return 0;
}

struct AtlasArgs {
  std::string name;
  std::optional<std::string> fixtures;
  bool json = false;
  bool all = false;
};

fs::path atlas_dir(const AtlasArgs& a) {
  return fixture_dir(a.fixtures ? std::optional<fs::path>(*a.fixtures) : std::nullopt);
}

int run_atlas_list(const AtlasArgs& a) {
  auto all = list_fixtures(atlas_dir(a));
  if (a.json) {
    json j = json::array();
    for (const auto& s : all) j.push_back({{"name", s.name}, {"kind", s.kind}, {"summary", s.summary}});
    emit(j);
    return 0;
  }
  for (const auto& s : all) std::cout << s.name << "  [" << s.kind << "]  " << s.summary << "\n";
  return 0;
}

int run_atlas_run(const AtlasArgs& a) {
  fs::path dir = atlas_dir(a);
  std::vector<std::string> names;
  if (a.all || a.name.empty()) {
    for (const auto& s : list_fixtures(dir)) names.push_back(s.name);
  } else {
    names.push_back(a.name);
  }
  std::size_t failures = 0;
  json reports = json::array();
  for (const auto& n : names) {
    auto rep = run_fixture(dir, n);
    failures += rep.failures();
    if (a.json)
      reports.push_back(rep.to_json());
    else
      std::cout << rep.to_text() << "\n";
  }
  if (a.json) emit(names.size() == 1 ? reports[0] : reports);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-window freeness certificates, Neron-Severi lattices and plane Cremona maps"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "graded dimensions of k{a t^n, b t^n} up to a depth");
  certify->add_option("--map", ca.map, "map JSON {vars, images}")->required();
  certify->add_option("--gens", ca.gens, "two generators, comma separated");
  certify->add_option("--step", ca.step, "t-degree n of each generator");
  certify->add_option("--depth", ca.depth, "largest j (words of length j+1)");
  certify->add_flag("--json", ca.json);

  DoublingArgs da;
  auto* doubling = app.add_subcommand("doubling", "degrees of sigma^(nj)(h) restricted to a curve");
  doubling->add_option("--map", da.map)->required();
  doubling->add_option("--h", da.h, "rational function h")->required();
  doubling->add_option("--curve", da.curve, "parametrization such as \"s,3\", or auto");
  doubling->add_option("--step", da.step);
  doubling->add_option("--depth", da.depth);
  doubling->add_flag("--json", da.json);

  LatticeArgs la;
  auto* lattice = app.add_subcommand("lattice", "pullback action on a Neron-Severi lattice");
  lattice->add_option("--spec", la.spec, "lattice JSON {gram, pullback, classes}")->required();
  lattice->add_option("--op", la.op)->check(CLI::IsMember({"radius", "signature", "split", "sequence", "threshold"}));
  lattice->add_option("--H", la.H, "class name");
  lattice->add_option("--C", la.C, "class name (defaults to H)");
  lattice->add_option("--j-max", la.j_max);
  lattice->add_option("--threshold", la.threshold)->check(CLI::IsMember({"main", "improved"}));
  lattice->add_flag("--json", la.json);

  CremonaArgs cr;
  auto* cremona = app.add_subcommand("cremona", "degree sequence and dynamical degree of a plane map");
  cremona->add_option("--map", cr.map, "map JSON {vars, images} or {forms}")->required();
  cremona->add_option("--iterations", cr.iterations);
  cremona->add_option("--max-degree", cr.max_degree);
  cremona->add_option("--h", cr.h, "also run the doubling profile for h");
  cremona->add_option("--curve", cr.curve);
  cremona->add_option("--step", cr.step);
  cremona->add_option("--depth", cr.depth);
  cremona->add_flag("--json", cr.json);

  AtlasArgs aa;
  auto* atlas = app.add_subcommand("atlas", "curated fixtures and errata");
  atlas->require_subcommand(1);
  atlas->add_option("--fixtures", aa.fixtures, "fixture directory");
  auto* alist = atlas->add_subcommand("list", "list fixtures");
  alist->add_flag("--json", aa.json);
  auto* arun = atlas->add_subcommand("run", "run one fixture, or all");
  arun->add_option("name", aa.name);
  arun->add_flag("--all", aa.all);
  arun->add_flag("--json", aa.json);
  auto* aerr = atlas->add_subcommand("errata", "print ERRATA.md");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*certify) return run_certify(ca);
    if (*doubling) return run_doubling(da);
    if (*lattice) return run_lattice(la);
    if (*cremona) return run_cremona(cr);
    if (*alist) return run_atlas_list(aa);
    if (*arun) return run_atlas_run(aa);
    if (*aerr) {
      std::cout << errata_markdown(atlas_dir(aa));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

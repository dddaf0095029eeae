#include "skewcert/fieldendo.hpp"

#include "skewcert/error.hpp"
#include "skewcert/parser.hpp"

#include <mutex>

namespace skewcert {

struct FieldEndo::Shared {
  Vars vars;
  std::vector<RatFunc> images[2];
  bool has_inverse = false;
  struct Cache {
    std::mutex m;
    std::vector<std::shared_ptr<const std::vector<RatFunc>>> powers;
  } cache[2];
};

namespace {

std::vector<RatFunc> generators(const Vars& vars) {
  std::vector<RatFunc> g;
  for (std::size_t i = 0; i < vars->size(); ++i) g.push_back(RatFunc::variable(vars, i));
  return g;
}

void check_images(const Vars& vars, const std::vector<RatFunc>& images) {
  if (images.size() != vars->size()) throw Error("map needs one image per variable");
  for (const auto& g : images) {
    if (!same_vars(g.vars(), vars)) throw Error("image over a different variable list");
    if (g.is_zero()) throw Error("a generator image is zero");
  }
}

std::size_t total_terms(const std::vector<RatFunc>& v) {
  std::size_t n = 0;
  for (const auto& f : v) n += f.term_count();
  return n;
}

}  // namespace

FieldEndo::FieldEndo(std::shared_ptr<Shared> shared, bool flipped)
    : shared_(std::move(shared)), flipped_(flipped) {}

FieldEndo::FieldEndo(Vars vars, std::vector<RatFunc> images) : shared_(std::make_shared<Shared>()) {
  check_images(vars, images);
  shared_->vars = std::move(vars);
  shared_->images[0] = std::move(images);
}

FieldEndo::FieldEndo(Vars vars, std::vector<RatFunc> images, std::vector<RatFunc> inverse_images)
    : FieldEndo(vars, std::move(images)) {
  check_images(vars, inverse_images);
  const auto& fwd = shared_->images[0];
  for (std::size_t i = 0; i < vars->size(); ++i) {
    RatFunc x = RatFunc::variable(vars, i);
    if (inverse_images[i].substitute(fwd) != x || fwd[i].substitute(inverse_images) != x)
      throw Error("supplied inverse images do not invert the map");
  }
  shared_->images[1] = std::move(inverse_images);
  shared_->has_inverse = true;
}

FieldEndo FieldEndo::identity(const Vars& vars) {
  auto g = generators(vars);
  return FieldEndo(vars, g, g);
}

FieldEndo FieldEndo::from_json(const nlohmann::json& spec) {
  if (!spec.contains("vars") || !spec.contains("images"))
    throw Error("map spec needs \"vars\" and \"images\"");
  Vars vars = make_vars(spec.at("vars").get<std::vector<std::string>>());
  auto read = [&vars](const nlohmann::json& list) {
    std::vector<RatFunc> out;
    for (const auto& s : list) out.push_back(parse_ratfunc(s.get<std::string>(), vars));
    return out;
  };
  auto images = read(spec.at("images"));
  if (spec.contains("inverse_images") && !spec.at("inverse_images").is_null())
    return FieldEndo(vars, std::move(images), read(spec.at("inverse_images")));
  return FieldEndo(vars, std::move(images));
}

nlohmann::json FieldEndo::to_json() const {
  nlohmann::json j;
  j["vars"] = *vars();
  std::vector<std::string> im;
  for (const auto& f : images()) im.push_back(f.to_string());
  j["images"] = im;
  if (invertible()) {
    std::vector<std::string> inv;
    for (const auto& f : inverse().images()) inv.push_back(f.to_string());
    j["inverse_images"] = inv;
  }
  return j;
}

const Vars& FieldEndo::vars() const { return shared_->vars; }

const std::vector<RatFunc>& FieldEndo::images() const { return shared_->images[flipped_ ? 1 : 0]; }

bool FieldEndo::invertible() const { return shared_->has_inverse; }

FieldEndo FieldEndo::inverse() const {
  if (!shared_->has_inverse) throw Error("σ⁻¹ unavailable");
  return FieldEndo(shared_, !flipped_);
}

RatFunc FieldEndo::apply(const RatFunc& f) const {
  if (!same_vars(f.vars(), vars())) throw Error("element over a different variable list");
  return f.substitute(images());
}

RatFunc FieldEndo::apply_power(const RatFunc& f, long k) const {
  if (k < 0) return inverse().apply_power(f, -k);
  if (k == 0) return f;
  if (k == 1) return apply(f);
  if (!same_vars(f.vars(), vars())) throw Error("element over a different variable list");
  return f.substitute(*power_images(unsigned(k)));
}

std::shared_ptr<const std::vector<RatFunc>> FieldEndo::power_images(unsigned k) const {
  return try_power_images(k, std::size_t(-1));
}

std::shared_ptr<const std::vector<RatFunc>> FieldEndo::try_power_images(
    unsigned k, std::size_t max_terms) const {
  auto& cache = shared_->cache[flipped_ ? 1 : 0];
  std::lock_guard<std::mutex> lock(cache.m);
  auto& p = cache.powers;
  if (p.empty()) p.push_back(std::make_shared<const std::vector<RatFunc>>(generators(vars())));
  const auto& im = images();
  while (p.size() <= k) {
    std::size_t last = total_terms(*p.back());
    if (last > max_terms) return nullptr;
    if (p.size() >= 2) {
      // Assume the next iterate grows by the same factor as the last one.
      double prev = double(total_terms(*p[p.size() - 2]));
      double est = double(last) * double(last) / std::max(prev, 1.0);
      if (est > double(max_terms)) return nullptr;
    }
    auto next = std::make_shared<std::vector<RatFunc>>();
    for (const auto& g : im) next->push_back(g.substitute(*p.back()));
    if (total_terms(*next) > max_terms) {
      p.push_back(std::move(next));
      return nullptr;
    }
    p.push_back(std::move(next));
  }
  return p[k];
}

FieldEndo FieldEndo::power(unsigned k) const {
  auto im = power_images(k);
  if (!invertible()) return FieldEndo(vars(), *im);
  return FieldEndo(vars(), *im, *inverse().power_images(k));
}

bool FieldEndo::equal_images(const FieldEndo& o) const {
  if (!same_vars(vars(), o.vars())) return false;
  return images() == o.images();
}

std::string FieldEndo::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (i) s += ", ";
    s += (*vars())[i] + " -> " + images()[i].to_string();
  }
  return s + ")";
}

FieldEndo compose(const FieldEndo& a, const FieldEndo& b) {
  if (!same_vars(a.vars(), b.vars())) throw Error("composing maps over different variables");
  std::vector<RatFunc> im;
  for (const auto& g : b.images()) im.push_back(a.apply(g));
  if (a.invertible() && b.invertible()) {
    std::vector<RatFunc> inv;
    for (const auto& g : a.inverse().images()) inv.push_back(b.inverse().apply(g));
    return FieldEndo(a.vars(), std::move(im), std::move(inv));
  }
  return FieldEndo(a.vars(), std::move(im));
}

}  // namespace skewcert

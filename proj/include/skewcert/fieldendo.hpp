#pragma once

#include "skewcert/ratfunc.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <vector>

namespace skewcert {

/// Field endomorphism of Q(x_1..x_n) given by the images of the generators,
/// acting by sigma(f) = f(images). Copies share one iterate cache. An inverse is
/// only known when supplied; it is verified in both directions on construction.
class FieldEndo {
 public:
  FieldEndo(Vars vars, std::vector<RatFunc> images);
  FieldEndo(Vars vars, std::vector<RatFunc> images, std::vector<RatFunc> inverse_images);

  static FieldEndo identity(const Vars& vars);
  /// {"vars": [...], "images": [...], "inverse_images": [...]?}
  static FieldEndo from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;

  const Vars& vars() const;
  std::size_t nvars() const { return vars()->size(); }
  const std::vector<RatFunc>& images() const;
  bool invertible() const;
  /// Throws "σ⁻¹ unavailable" when no inverse was supplied.
  FieldEndo inverse() const;

  RatFunc apply(const RatFunc& f) const;
  /// sigma^k(f); negative k goes through the inverse.
  RatFunc apply_power(const RatFunc& f, long k) const;
  /// sigma^k(x_i) for every generator, from the shared cache.
  std::shared_ptr<const std::vector<RatFunc>> power_images(unsigned k) const;
  /// As power_images, but gives up (nullptr) once an iterate would plausibly
  /// exceed max_terms terms in total.
  std::shared_ptr<const std::vector<RatFunc>> try_power_images(unsigned k,
                                                              std::size_t max_terms) const;
  FieldEndo power(unsigned k) const;

  /// Same underlying map object (and direction).
  bool same_as(const FieldEndo& o) const { return shared_ == o.shared_ && flipped_ == o.flipped_; }
  /// Same images generator by generator.
  bool equal_images(const FieldEndo& o) const;

  std::string to_string() const;

 private:
  struct Shared;
  FieldEndo(std::shared_ptr<Shared> shared, bool flipped);

  std::shared_ptr<Shared> shared_;
  bool flipped_ = false;
};

/// Field-map composition: compose(a, b)(f) = a(b(f)).
FieldEndo compose(const FieldEndo& a, const FieldEndo& b);

}  // namespace skewcert

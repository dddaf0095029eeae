#pragma once

// Horner-style substitution of values into a MultiPoly, generic over the
// target ring. Used for polynomial composition, evaluation at points,
// restriction to curves and modular images.

#include "skewcert/multipoly.hpp"

#include <algorithm>
#include <map>
#include <span>
#include <vector>

namespace skewcert::detail {

// Ring requirements:
//   using value_type = V;
//   V zero() const;
//   V constant(const Rational&) const;
//   V add(const V&, const V&) const;
//   V mul(const V&, const V&) const;
template <class Ring>
class Substituter {
 public:
  using V = typename Ring::value_type;

  /// Plain substitution x_i -> nums[i].
  Substituter(const Ring& ring, std::span<const V> nums)
      : ring_(ring), nums_(nums.begin(), nums.end()), num_pows_(nums.size()) {}

  /// Cleared substitution x_i -> nums[i]/dens[i]; the result is multiplied by
  /// prod dens[i]^bounds[i], so bounds[i] must dominate every degree in x_i.
  Substituter(const Ring& ring, std::span<const V> nums, std::span<const V> dens,
              std::vector<unsigned> bounds)
      : ring_(ring),
        nums_(nums.begin(), nums.end()),
        dens_(dens.begin(), dens.end()),
        bounds_(std::move(bounds)),
        num_pows_(nums.size()),
        den_pows_(dens.size()) {}

  V apply(const MultiPoly& f) {
    std::vector<const Term*> ts;
    ts.reserve(f.term_count());
    for (const auto& t : f.terms()) ts.push_back(&t);
    if (ts.empty()) return ring_.zero();
    return rec(ts, 0);
  }

 private:
  const V& power(std::vector<std::map<unsigned, V>>& cache, const std::vector<V>& base,
                 std::size_t v, unsigned e) {
    auto& c = cache[v];
    auto it = c.find(e);
    if (it != c.end()) return it->second;
    V r = ring_.constant(Rational(1));
    if (e == 1) {
      r = base[v];
    } else if (e > 1) {
      const V& half = power(cache, base, v, e / 2);
      r = ring_.mul(half, half);
      if (e % 2) r = ring_.mul(r, base[v]);
    }
    return c.emplace(e, std::move(r)).first->second;
  }

  V rec(std::vector<const Term*>& ts, std::size_t v) {
    if (v == nums_.size()) {
      V acc = ring_.zero();
      for (const Term* t : ts) acc = ring_.add(acc, ring_.constant(t->coeff));
      return acc;
    }
    std::stable_sort(ts.begin(), ts.end(),
                     [v](const Term* a, const Term* b) { return a->exps[v] > b->exps[v]; });
    std::vector<std::pair<unsigned, std::vector<const Term*>>> groups;
    for (const Term* t : ts) {
      if (groups.empty() || groups.back().first != t->exps[v]) groups.push_back({t->exps[v], {}});
      groups.back().second.push_back(t);
    }
    const bool cleared = !dens_.empty();
    const unsigned top = groups.front().first;
    V acc = rec(groups.front().second, v + 1);
    for (std::size_t k = 1; k < groups.size(); ++k) {
      unsigned gap = groups[k - 1].first - groups[k].first;
      acc = ring_.mul(acc, power(num_pows_, nums_, v, gap));
      V inner = rec(groups[k].second, v + 1);
      if (cleared) inner = ring_.mul(inner, power(den_pows_, dens_, v, top - groups[k].first));
      acc = ring_.add(acc, inner);
    }
    unsigned last = groups.back().first;
    if (last > 0) acc = ring_.mul(acc, power(num_pows_, nums_, v, last));
    if (cleared && bounds_[v] > top) acc = ring_.mul(acc, power(den_pows_, dens_, v, bounds_[v] - top));
    return acc;
  }

  const Ring& ring_;
  std::vector<V> nums_;
  std::vector<V> dens_;
  std::vector<unsigned> bounds_;
  std::vector<std::map<unsigned, V>> num_pows_;
  std::vector<std::map<unsigned, V>> den_pows_;
};

}  // namespace skewcert::detail

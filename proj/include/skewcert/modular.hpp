#pragma once

// Arithmetic over F_p for word-size primes p < 2^31, and dense univariate
// polynomials over F_p. Used for coprimality certificates and for the
// line-restriction rank route.

#include "skewcert/error.hpp"
#include "skewcert/multipoly.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace skewcert {

/// A rational coefficient whose denominator vanishes mod p.
class BadPrime : public Error {
 public:
  using Error::Error;
};

class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t p() const { return p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a ? p_ - a : 0; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;

  std::uint64_t reduce(const Integer& z) const;
  /// Throws BadPrime when p divides the denominator.
  std::uint64_t reduce(const Rational& q) const;
  std::uint64_t from_int(std::int64_t v) const;

 private:
  std::uint64_t p_;
};

/// The 31-bit primes used by the modular routes, in order of use.
std::span<const std::uint64_t> word_primes();

/// Dense coefficients, index = degree; the zero polynomial is empty.
using ModPoly = std::vector<std::uint64_t>;

namespace modpoly {

void trim(ModPoly& a);
inline int degree(const ModPoly& a) { return int(a.size()) - 1; }
ModPoly add(const PrimeField& F, const ModPoly& a, const ModPoly& b);
ModPoly sub(const PrimeField& F, const ModPoly& a, const ModPoly& b);
ModPoly scale(const PrimeField& F, const ModPoly& a, std::uint64_t c);
/// Schoolbook below a cutoff, Karatsuba above.
ModPoly mul(const PrimeField& F, const ModPoly& a, const ModPoly& b);
std::pair<ModPoly, ModPoly> divrem(const PrimeField& F, const ModPoly& a, const ModPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
ModPoly gcd(const PrimeField& F, ModPoly a, ModPoly b);
ModPoly make_monic(const PrimeField& F, const ModPoly& a);
std::uint64_t evaluate(const PrimeField& F, const ModPoly& a, std::uint64_t x);

/// Restriction of f to the line x_i = c_i + d_i*s, reduced mod p.
ModPoly restrict_line(const PrimeField& F, const MultiPoly& f, std::span<const std::uint64_t> c,
                      std::span<const std::uint64_t> d);
/// Cleared substitution x_i -> nums[i]/dens[i] with bounds, see detail::Substituter.
ModPoly substitute_cleared(const PrimeField& F, const MultiPoly& f, std::span<const ModPoly> nums,
                           std::span<const ModPoly> dens, std::vector<unsigned> bounds);

}  // namespace modpoly

/// Rank of a dense row-major matrix over F_p (destroys the input).
std::size_t mod_rank(const PrimeField& F, std::vector<std::vector<std::uint64_t>>& rows);

}  // namespace skewcert

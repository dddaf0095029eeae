#include "skewcert/modular.hpp"

#include "skewcert/detail/substitute.hpp"

#include <algorithm>
#include <array>

namespace skewcert {

namespace {

constexpr std::array<std::uint64_t, 6> kPrimes = {2147483647ULL, 2147483629ULL, 2147483587ULL,
                                                  2147483579ULL, 2147483563ULL, 2147483549ULL};

constexpr std::size_t kKaratsubaCutoff = 48;

using u64 = std::uint64_t;
using u128 = unsigned __int128;

void schoolbook(const PrimeField& F, const u64* a, std::size_t n, const u64* b, std::size_t m,
                u64* out) {
  // out has n+m-1 slots; accumulate each output coefficient in 128 bits.
  for (std::size_t k = 0; k + 1 < n + m; ++k) {
    std::size_t lo = k >= m - 1 ? k - (m - 1) : 0;
    std::size_t hi = std::min(k, n - 1);
    u128 acc = 0;
    for (std::size_t i = lo; i <= hi; ++i) acc += u128(a[i]) * b[k - i];
    out[k] = u64(acc % F.p());
  }
}

// Equal-length Karatsuba; out has 2n-1 slots.
void karatsuba(const PrimeField& F, const u64* a, const u64* b, std::size_t n, u64* out) {
  if (n < kKaratsubaCutoff) {
    schoolbook(F, a, n, b, n, out);
    return;
  }
  std::size_t h = n / 2, t = n - h;
  std::vector<u64> z0(2 * h - 1), z2(2 * t - 1), z1(2 * t - 1), sa(t), sb(t);
  karatsuba(F, a, b, h, z0.data());
  karatsuba(F, a + h, b + h, t, z2.data());
  for (std::size_t i = 0; i < t; ++i) {
    sa[i] = i < h ? F.add(a[i], a[h + i]) : a[h + i];
    sb[i] = i < h ? F.add(b[i], b[h + i]) : b[h + i];
  }
  karatsuba(F, sa.data(), sb.data(), t, z1.data());
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = F.sub(z1[i], z0[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = F.sub(z1[i], z2[i]);
  std::fill(out, out + 2 * n - 1, 0);
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] = F.add(out[2 * h + i], z2[i]);
  for (std::size_t i = 0; i < z1.size(); ++i) out[h + i] = F.add(out[h + i], z1[i]);
}

struct ModRing {
  using value_type = ModPoly;
  const PrimeField* F;
  ModPoly zero() const { return {}; }
  ModPoly constant(const Rational& c) const {
    ModPoly r{F->reduce(c)};
    modpoly::trim(r);
    return r;
  }
  ModPoly add(const ModPoly& a, const ModPoly& b) const { return modpoly::add(*F, a, b); }
  ModPoly mul(const ModPoly& a, const ModPoly& b) const { return modpoly::mul(*F, a, b); }
};

}  // namespace

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 2 || p >= (1ULL << 31)) throw Error("prime out of the supported range");
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw Error("inverse of zero mod p");
  return pow(a, p_ - 2);
}

std::uint64_t PrimeField::reduce(const Integer& z) const {
  return mpz_fdiv_ui(z.get_mpz_t(), p_);
}

std::uint64_t PrimeField::reduce(const Rational& q) const {
  std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), p_);
  if (d == 0) throw BadPrime("denominator divisible by the working prime");
  std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), p_);
  return d == 1 ? n : mul(n, inv(d));
}

std::uint64_t PrimeField::from_int(std::int64_t v) const {
  std::int64_t r = v % std::int64_t(p_);
  return std::uint64_t(r < 0 ? r + std::int64_t(p_) : r);
}

std::span<const std::uint64_t> word_primes() { return kPrimes; }

namespace modpoly {

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly add(const PrimeField& F, const ModPoly& a, const ModPoly& b) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

ModPoly sub(const PrimeField& F, const ModPoly& a, const ModPoly& b) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

ModPoly scale(const PrimeField& F, const ModPoly& a, std::uint64_t c) {
  if (c == 0) return {};
  ModPoly r(a);
  for (auto& x : r) x = F.mul(x, c);
  return r;
}

ModPoly mul(const PrimeField& F, const ModPoly& a, const ModPoly& b) {
  if (a.empty() || b.empty()) return {};
  const ModPoly& big = a.size() >= b.size() ? a : b;
  const ModPoly& small = a.size() >= b.size() ? b : a;
  std::size_t n = big.size(), m = small.size();
  ModPoly r(n + m - 1, 0);
  if (m < kKaratsubaCutoff) {
    schoolbook(F, big.data(), n, small.data(), m, r.data());
  } else {
    // Cut the longer factor into blocks of the shorter length.
    std::vector<u64> block(m, 0), prod(2 * m - 1);
    for (std::size_t off = 0; off < n; off += m) {
      std::size_t len = std::min(m, n - off);
      std::fill(block.begin(), block.end(), 0);
      std::copy(big.begin() + off, big.begin() + off + len, block.begin());
      karatsuba(F, block.data(), small.data(), m, prod.data());
      for (std::size_t i = 0; i < prod.size() && off + i < r.size(); ++i)
        r[off + i] = F.add(r[off + i], prod[i]);
    }
  }
  trim(r);
  return r;
}

std::pair<ModPoly, ModPoly> divrem(const PrimeField& F, const ModPoly& a, const ModPoly& b) {
  if (b.empty()) throw Error("polynomial division by zero mod p");
  if (a.size() < b.size()) return {{}, a};
  ModPoly r(a), q(a.size() - b.size() + 1, 0);
  std::uint64_t il = F.inv(b.back());
  for (std::size_t k = q.size(); k-- > 0;) {
    std::uint64_t c = F.mul(r[k + b.size() - 1], il);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i < b.size(); ++i) r[k + i] = F.sub(r[k + i], F.mul(c, b[i]));
  }
  r.resize(b.size() - 1);
  trim(r);
  trim(q);
  return {q, r};
}

ModPoly make_monic(const PrimeField& F, const ModPoly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

ModPoly gcd(const PrimeField& F, ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divrem(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(F, a);
}

std::uint64_t evaluate(const PrimeField& F, const ModPoly& a, std::uint64_t x) {
  std::uint64_t r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

ModPoly restrict_line(const PrimeField& F, const MultiPoly& f, std::span<const std::uint64_t> c,
                      std::span<const std::uint64_t> d) {
  std::vector<ModPoly> images;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    ModPoly l{c[i], d[i]};
    trim(l);
    images.push_back(std::move(l));
  }
  ModRing ring{&F};
  detail::Substituter<ModRing> sub(ring, std::span<const ModPoly>(images));
  return sub.apply(f);
}

ModPoly substitute_cleared(const PrimeField& F, const MultiPoly& f, std::span<const ModPoly> nums,
                           std::span<const ModPoly> dens, std::vector<unsigned> bounds) {
  ModRing ring{&F};
  detail::Substituter<ModRing> sub(ring, nums, dens, std::move(bounds));
  return sub.apply(f);
}

}  // namespace modpoly

std::size_t mod_rank(const PrimeField& F, std::vector<std::vector<std::uint64_t>>& rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  std::size_t cols = 0;
  for (const auto& r : rows) cols = std::max(cols, r.size());
  for (auto& r : rows) r.resize(cols, 0);
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    std::uint64_t il = F.inv(rows[rank][col]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      std::uint64_t f = F.mul(rows[i][col], il);
      for (std::size_t k = col; k < cols; ++k)
        rows[i][k] = F.sub(rows[i][k], F.mul(f, rows[rank][k]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace skewcert

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gd {

using Coeff = std::uint32_t;

inline constexpr std::uint32_t kDefaultPrime = 32003;

/// Arithmetic in GF(p) on canonical residues in [0, p).
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = kDefaultPrime) : p_(p) {
    if (p < 2 || p >= (1u << 31)) {
      throw std::invalid_argument("prime modulus out of range: " + std::to_string(p));
    }
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) throw std::invalid_argument("modulus is not prime: " + std::to_string(p));
    }
  }

  std::uint32_t prime() const { return p_; }

  Coeff add(Coeff a, Coeff b) const {
    Coeff s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const { return a >= b ? a - b : a + p_ - b; }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Coeff pow(Coeff a, std::uint64_t e) const {
    Coeff r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// Multiplicative inverse via extended Euclid.
  Coeff inv(Coeff a) const {
    if (a == 0) throw std::domain_error("inverse of zero in GF(p)");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Coeff>(t);
  }
  Coeff div(Coeff a, Coeff b) const { return mul(a, inv(b)); }

  Coeff from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Coeff>(r);
  }
  /// Balanced representative in (-p/2, p/2].
  std::int64_t to_signed(Coeff a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

}  // namespace gd

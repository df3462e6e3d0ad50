#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gd {

inline constexpr int kMaxVars = 8;
using Exponent = std::uint16_t;

enum class MonomialOrder : std::uint8_t { DegRevLex, DegLex, Lex };

/// Power product x1^a1 ... xn^an with cached total degree.
///
/// Exponents beyond nvars() are kept at zero so that componentwise
/// operations never need the variable count.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(int nvars) : nvars_(static_cast<std::uint8_t>(check_nvars(nvars))) {}
  Monomial(int nvars, std::span<const int> exponents);

  static Monomial variable(int nvars, int index) {
    Monomial m(nvars);
    m.exp_.at(static_cast<std::size_t>(index)) = 1;
    m.degree_ = 1;
    return m;
  }

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  int exponent(int i) const { return exp_[static_cast<std::size_t>(i)]; }
  bool is_one() const { return degree_ == 0; }

  Monomial operator*(const Monomial& o) const {
    Monomial r(*this);
    for (int i = 0; i < kMaxVars; ++i) r.exp_[i] = static_cast<Exponent>(exp_[i] + o.exp_[i]);
    r.degree_ = degree_ + o.degree_;
    return r;
  }
  /// True iff this divides o.
  bool divides(const Monomial& o) const {
    if (degree_ > o.degree_) return false;
    for (int i = 0; i < kMaxVars; ++i)
      if (exp_[i] > o.exp_[i]) return false;
    return true;
  }
  /// this / o; requires o | this.
  Monomial operator/(const Monomial& o) const {
    Monomial r(*this);
    for (int i = 0; i < kMaxVars; ++i) r.exp_[i] = static_cast<Exponent>(exp_[i] - o.exp_[i]);
    r.degree_ = degree_ - o.degree_;
    return r;
  }
  Monomial lcm(const Monomial& o) const {
    Monomial r(*this);
    int d = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      r.exp_[i] = exp_[i] > o.exp_[i] ? exp_[i] : o.exp_[i];
      d += r.exp_[i];
    }
    r.degree_ = d;
    return r;
  }
  Monomial gcd(const Monomial& o) const {
    Monomial r(*this);
    int d = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      r.exp_[i] = exp_[i] < o.exp_[i] ? exp_[i] : o.exp_[i];
      d += r.exp_[i];
    }
    r.degree_ = d;
    return r;
  }
  bool coprime(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (exp_[i] != 0 && o.exp_[i] != 0) return false;
    return true;
  }

  bool operator==(const Monomial& o) const { return degree_ == o.degree_ && exp_ == o.exp_; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto e : exp_) h = (h ^ e) * 1099511628211ull;
    return h;
  }

  /// Text form over variables x1..xn, "1" for the unit monomial.
  std::string to_string() const;

  /// All monomials of the given degree in nvars variables, in descending order
  /// for the given monomial order.
  static std::vector<Monomial> all_of_degree(int nvars, int degree,
                                             MonomialOrder order = MonomialOrder::DegRevLex);

 private:
  static int check_nvars(int n) {
    if (n < 0 || n > kMaxVars) throw std::invalid_argument("variable count out of range");
    return n;
  }

  std::array<Exponent, kMaxVars> exp_{};
  std::int32_t degree_ = 0;
  std::uint8_t nvars_ = 0;
};

/// Three-way comparison: negative if a < b, zero if equal, positive if a > b.
int compare(const Monomial& a, const Monomial& b, MonomialOrder order);

/// Checked comparison used at API boundaries; throws on mismatched variable counts.
int monomial_cmp(const Monomial& a, const Monomial& b, MonomialOrder order);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace gd

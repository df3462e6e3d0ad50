#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace gd {

/// Integer extended by -inf and +inf.
///
/// Used for deg, indeg and reg, where the zero module has deg = reg = -inf
/// and indeg = +inf. The sentinels are distinct from every finite value and
/// compare below (resp. above) all of them.
class Degree {
 public:
  enum class Kind : std::uint8_t { NegInf = 0, Finite = 1, PosInf = 2 };

  constexpr Degree() = default;
  constexpr Degree(int value) : kind_(Kind::Finite), value_(value) {}  // NOLINT

  static constexpr Degree neg_inf() { return Degree(Kind::NegInf); }
  static constexpr Degree pos_inf() { return Degree(Kind::PosInf); }

  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  constexpr Kind kind() const { return kind_; }

  /// Finite value; undefined for the sentinels.
  constexpr int value() const { return value_; }

  constexpr std::strong_ordering operator<=>(const Degree& o) const {
    if (kind_ != o.kind_) return kind_ <=> o.kind_;
    if (kind_ != Kind::Finite) return std::strong_ordering::equal;
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const Degree& o) const { return (*this <=> o) == 0; }

  /// Shift by a finite amount; sentinels are fixed points.
  constexpr Degree operator+(int shift) const {
    return is_finite() ? Degree(value_ + shift) : *this;
  }
  constexpr Degree operator-(int shift) const { return *this + (-shift); }

  std::string to_string() const {
    if (is_neg_inf()) return "-inf";
    if (is_pos_inf()) return "inf";
    return std::to_string(value_);
  }

 private:
  constexpr explicit Degree(Kind k) : kind_(k) {}

  Kind kind_ = Kind::NegInf;
  int value_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Degree& d) { return os << d.to_string(); }

inline Degree max(const Degree& a, const Degree& b) { return a < b ? b : a; }
inline Degree min(const Degree& a, const Degree& b) { return a < b ? a : b; }

}  // namespace gd

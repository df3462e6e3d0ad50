#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gammadepth/field.hpp"
#include "gammadepth/monomial.hpp"

namespace gd {

/// Polynomial ring K[x1..xn] over a prime field with a fixed monomial order.
class Ring {
 public:
  explicit Ring(int nvars = 0, std::uint32_t prime = kDefaultPrime,
                MonomialOrder order = MonomialOrder::DegRevLex)
      : nvars_(nvars), field_(prime), order_(order) {
    if (nvars < 0 || nvars > kMaxVars) {
      throw std::invalid_argument("ring must have between 0 and " + std::to_string(kMaxVars) +
                                  " variables");
    }
  }

  int nvars() const { return nvars_; }
  const PrimeField& field() const { return field_; }
  std::uint32_t prime() const { return field_.prime(); }
  MonomialOrder order() const { return order_; }

  /// Same field and order, different number of variables.
  Ring with_nvars(int n) const {
    Ring r(*this);
    if (n < 0 || n > kMaxVars) throw std::invalid_argument("variable count out of range");
    r.nvars_ = n;
    return r;
  }

  int compare(const Monomial& a, const Monomial& b) const { return gd::compare(a, b, order_); }

  bool operator==(const Ring& o) const {
    return nvars_ == o.nvars_ && field_ == o.field_ && order_ == o.order_;
  }

 private:
  int nvars_;
  PrimeField field_;
  MonomialOrder order_;
};

struct Term {
  Monomial mono;
  Coeff coeff;
};

/// Sparse polynomial; terms strictly descending in the ring order, no zero
/// coefficients, empty for the zero polynomial.
class Polynomial {
 public:
  explicit Polynomial(const Ring& ring) : ring_(ring) {}
  /// Builds from arbitrary terms: sorts, merges equal monomials, drops zeros.
  Polynomial(const Ring& ring, std::vector<Term> terms);

  static Polynomial constant(const Ring& ring, std::int64_t c);
  static Polynomial variable(const Ring& ring, int index);
  static Polynomial monomial(const Ring& ring, const Monomial& m, Coeff c = 1);

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Term& leading_term() const { return terms_.front(); }
  bool is_homogeneous() const;
  /// Total degree of the leading term; -1 for zero.
  int degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(Coeff c) const;
  Polynomial times_monomial(const Monomial& m, Coeff c = 1) const;
  /// Scale so the leading coefficient is 1; zero stays zero.
  Polynomial monic() const;
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& o) const;

  /// Substitutes x_k := images[k]; images live in a common target ring.
  Polynomial substitute(const std::vector<Polynomial>& images) const;

  std::string to_string() const;

 private:
  Ring ring_;
  std::vector<Term> terms_;
};

/// Nonzero element of R_1.
class LinearForm {
 public:
  LinearForm(const Ring& ring, std::vector<Coeff> coeffs);
  static LinearForm variable(const Ring& ring, int index);
  /// Accepts only homogeneous degree-one polynomials.
  static LinearForm from_polynomial(const Polynomial& f);

  const Ring& ring() const { return ring_; }
  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  Coeff coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  Polynomial to_polynomial() const;
  std::string to_string() const { return to_polynomial().to_string(); }

  bool operator==(const LinearForm& o) const { return ring_ == o.ring_ && coeffs_ == o.coeffs_; }

 private:
  Ring ring_;
  std::vector<Coeff> coeffs_;
};

/// Rank of a family of linear forms over the field.
int linear_rank(const std::vector<LinearForm>& forms);

/// Invertible linear substitution x_k := sum_l matrix[k][l] x_l.
class LinearChange {
 public:
  using Matrix = std::vector<std::vector<Coeff>>;

  /// Throws std::invalid_argument if the matrix is singular.
  LinearChange(const Ring& ring, Matrix matrix);

  static LinearChange identity(const Ring& ring);

  /// Coordinates in which zs become the last |zs| variables, in order:
  /// after applying, zs[i] maps to x_{n-|zs|+i}. Throws if zs are dependent.
  static LinearChange moving_to_last(const std::vector<LinearForm>& zs);

  const Ring& ring() const { return ring_; }
  const Matrix& matrix() const { return matrix_; }
  const Matrix& inverse_matrix() const { return inverse_; }

  Polynomial apply(const Polynomial& f) const;
  Polynomial apply_inverse(const Polynomial& f) const;
  LinearChange inverse() const;

 private:
  LinearChange(const Ring& ring, Matrix m, Matrix inv) : ring_(ring), matrix_(std::move(m)), inverse_(std::move(inv)) {}

  Ring ring_;
  Matrix matrix_;
  Matrix inverse_;
};

/// Inverse of a square matrix over GF(p), or nullopt if singular.
std::optional<LinearChange::Matrix> invert_matrix(const PrimeField& field, LinearChange::Matrix a);

/// Error with a 1-based line/column position in the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses the polynomial text syntax: terms joined by + and -, decimal
/// coefficients, variables x1..xn, powers via ^, products by juxtaposition
/// (an optional '*' is accepted). Positions in errors are offset by the given
/// line and starting column.
Polynomial parse_polynomial(const Ring& ring, std::string_view text, int line = 1, int column = 1);

}  // namespace gd

#include "gammadepth/polynomial.hpp"

#include "gammadepth/linalg.hpp"

#include <algorithm>
#include <cctype>

namespace gd {

Polynomial::Polynomial(const Ring& ring, std::vector<Term> terms) : ring_(ring) {
  const auto& F = ring_.field();
  for (auto& t : terms) {
    if (t.mono.nvars() != ring_.nvars()) throw std::invalid_argument("monomial not in ring");
    t.coeff = t.coeff % F.prime();
  }
  std::sort(terms.begin(), terms.end(),
            [this](const Term& a, const Term& b) { return ring_.compare(a.mono, b.mono) > 0; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff = F.add(terms_.back().coeff, t.coeff);
      if (terms_.back().coeff == 0) terms_.pop_back();
    } else if (t.coeff != 0) {
      terms_.push_back(t);
    }
  }
}

Polynomial Polynomial::constant(const Ring& ring, std::int64_t c) {
  Polynomial p(ring);
  Coeff v = ring.field().from_int(c);
  if (v != 0) p.terms_.push_back({Monomial(ring.nvars()), v});
  return p;
}

Polynomial Polynomial::variable(const Ring& ring, int index) {
  if (index < 0 || index >= ring.nvars()) throw std::out_of_range("variable index out of range");
  Polynomial p(ring);
  p.terms_.push_back({Monomial::variable(ring.nvars(), index), 1});
  return p;
}

Polynomial Polynomial::monomial(const Ring& ring, const Monomial& m, Coeff c) {
  Polynomial p(ring);
  c %= ring.prime();
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  return true;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (!(ring_ == o.ring_)) throw std::invalid_argument("polynomials over different rings");
  const auto& F = ring_.field();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = ring_.compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Coeff s = F.add(terms_[i].coeff, o.terms_[j].coeff);
      if (s != 0) r.terms_.push_back({terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = ring_.field().neg(t.coeff);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scaled(Coeff c) const {
  c %= ring_.prime();
  Polynomial r(ring_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = ring_.field().mul(t.coeff, c);
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, Coeff c) const {
  Polynomial r = scaled(c);
  for (auto& t : r.terms_) t.mono = t.mono * m;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (!(ring_ == o.ring_)) throw std::invalid_argument("polynomials over different rings");
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.push_back({a.mono * b.mono, ring_.field().mul(a.coeff, b.coeff)});
  return Polynomial(ring_, std::move(prod));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(ring_.field().inv(terms_.front().coeff));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = constant(ring_, 1);
  Polynomial b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!(ring_ == o.ring_) || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (static_cast<int>(images.size()) != ring_.nvars()) {
    throw std::invalid_argument("substitution needs one image per variable");
  }
  if (images.empty()) return *this;
  const Ring& target = images.front().ring();
  // powers[k][e] = images[k]^e, filled lazily
  std::vector<std::vector<Polynomial>> powers(images.size());
  for (std::size_t k = 0; k < images.size(); ++k) powers[k].push_back(Polynomial::constant(target, 1));
  auto power = [&](std::size_t k, int e) -> const Polynomial& {
    while (static_cast<int>(powers[k].size()) <= e) powers[k].push_back(powers[k].back() * images[k]);
    return powers[k][static_cast<std::size_t>(e)];
  };
  Polynomial result(target);
  for (const auto& t : terms_) {
    Polynomial acc = Polynomial::constant(target, 1).scaled(t.coeff);
    for (int k = 0; k < ring_.nvars(); ++k) {
      int e = t.mono.exponent(k);
      if (e > 0) acc = acc * power(static_cast<std::size_t>(k), e);
    }
    result = result + acc;
  }
  return result;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    std::int64_t c = ring_.field().to_signed(t.coeff);
    bool neg = c < 0;
    std::int64_t a = neg ? -c : c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      s += std::to_string(a);
    } else {
      if (a != 1) s += std::to_string(a);
      s += t.mono.to_string();
    }
  }
  return s;
}

LinearForm::LinearForm(const Ring& ring, std::vector<Coeff> coeffs) : ring_(ring), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != ring_.nvars()) {
    throw std::invalid_argument("linear form needs one coefficient per variable");
  }
  bool nonzero = false;
  for (auto& c : coeffs_) {
    c %= ring_.prime();
    nonzero = nonzero || c != 0;
  }
  if (!nonzero) throw std::invalid_argument("linear form must be nonzero");
}

LinearForm LinearForm::variable(const Ring& ring, int index) {
  std::vector<Coeff> c(static_cast<std::size_t>(ring.nvars()), 0);
  c.at(static_cast<std::size_t>(index)) = 1;
  return LinearForm(ring, std::move(c));
}

LinearForm LinearForm::from_polynomial(const Polynomial& f) {
  std::vector<Coeff> c(static_cast<std::size_t>(f.ring().nvars()), 0);
  for (const auto& t : f.terms()) {
    if (t.mono.degree() != 1) throw std::invalid_argument("not a linear form: " + f.to_string());
    for (int i = 0; i < f.ring().nvars(); ++i)
      if (t.mono.exponent(i) == 1) c[static_cast<std::size_t>(i)] = t.coeff;
  }
  return LinearForm(f.ring(), std::move(c));
}

Polynomial LinearForm::to_polynomial() const {
  std::vector<Term> terms;
  for (int i = 0; i < ring_.nvars(); ++i)
    if (coeffs_[static_cast<std::size_t>(i)] != 0)
      terms.push_back({Monomial::variable(ring_.nvars(), i), coeffs_[static_cast<std::size_t>(i)]});
  return Polynomial(ring_, std::move(terms));
}


int linear_rank(const std::vector<LinearForm>& forms) {
  if (forms.empty()) return 0;
  std::vector<std::vector<Coeff>> rows;
  for (const auto& f : forms) rows.push_back(f.coeffs());
  return static_cast<int>(row_reduce(forms.front().ring().field(), rows, forms.front().ring().nvars()).size());
}

std::optional<LinearChange::Matrix> invert_matrix(const PrimeField& F, LinearChange::Matrix a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("matrix is not square");
    a[i].resize(2 * n, 0);
    a[i][n + i] = 1;
  }
  auto pivots = row_reduce(F, a, static_cast<int>(n));
  if (pivots.size() != n) return std::nullopt;
  LinearChange::Matrix inv(n, std::vector<Coeff>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

LinearChange::LinearChange(const Ring& ring, Matrix matrix) : ring_(ring), matrix_(std::move(matrix)) {
  if (static_cast<int>(matrix_.size()) != ring_.nvars()) throw std::invalid_argument("matrix size mismatch");
  for (auto& row : matrix_)
    for (auto& v : row) v %= ring_.prime();
  auto inv = invert_matrix(ring_.field(), matrix_);
  if (!inv) throw std::invalid_argument("linear change of coordinates is singular");
  inverse_ = std::move(*inv);
}

LinearChange LinearChange::identity(const Ring& ring) {
  const auto n = static_cast<std::size_t>(ring.nvars());
  Matrix id(n, std::vector<Coeff>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return LinearChange(ring, id, id);
}

LinearChange LinearChange::moving_to_last(const std::vector<LinearForm>& zs) {
  if (zs.empty()) throw std::invalid_argument("moving_to_last needs at least one form");
  const Ring& ring = zs.front().ring();
  const int n = ring.nvars();
  const int r = static_cast<int>(zs.size());
  if (linear_rank(zs) != r) throw std::invalid_argument("linear forms are linearly dependent");
  // Complete zs to a basis with standard vectors: reduce the zs and pick
  // non-pivot coordinates as the complement.
  std::vector<std::vector<Coeff>> rows;
  for (const auto& z : zs) rows.push_back(z.coeffs());
  auto pivots = row_reduce(ring.field(), rows, n);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  // New coordinates y_l = sum_k basis[l][k] x_k.
  Matrix basis;
  for (int k = 0; k < n; ++k) {
    if (is_pivot[static_cast<std::size_t>(k)]) continue;
    std::vector<Coeff> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(k)] = 1;
    basis.push_back(std::move(e));
  }
  for (const auto& z : zs) basis.push_back(z.coeffs());
  // x = basis^{-1} y, so the substitution x_k := sum_l inv[k][l] y_l.
  auto inv = invert_matrix(ring.field(), basis);
  if (!inv) throw std::logic_error("basis completion produced a singular matrix");
  return LinearChange(ring, std::move(*inv), std::move(basis));
}

namespace {

Polynomial linear_polynomial(const Ring& ring, const std::vector<Coeff>& row) {
  std::vector<Term> terms;
  for (int i = 0; i < ring.nvars(); ++i)
    if (row[static_cast<std::size_t>(i)] != 0)
      terms.push_back({Monomial::variable(ring.nvars(), i), row[static_cast<std::size_t>(i)]});
  return Polynomial(ring, std::move(terms));
}

}  // namespace

Polynomial LinearChange::apply(const Polynomial& f) const {
  if (!(f.ring() == ring_)) throw std::invalid_argument("polynomial not in the ring of the change");
  std::vector<Polynomial> images;
  for (const auto& row : matrix_) images.push_back(linear_polynomial(ring_, row));
  return f.substitute(images);
}

Polynomial LinearChange::apply_inverse(const Polynomial& f) const { return inverse().apply(f); }

LinearChange LinearChange::inverse() const { return LinearChange(ring_, inverse_, matrix_); }

// ---- parsing ----

namespace {

class PolyParser {
 public:
  PolyParser(const Ring& ring, std::string_view text, int line, int column)
      : ring_(ring), text_(text), line_(line), col0_(column) {}

  Polynomial parse() {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      terms.push_back(parse_term(negative));
      skip_ws();
    }
    return Polynomial(ring_, std::move(terms));
  }

 private:
  Term parse_term(bool negative) {
    const auto& F = ring_.field();
    Coeff coeff = 1;
    bool have_factor = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = F.from_int(0);
      std::size_t start = pos_;
      std::int64_t acc = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        acc = (acc * 10 + (peek() - '0')) % F.prime();
        ++pos_;
      }
      if (pos_ == start) fail("expected coefficient");
      coeff = F.from_int(acc);
      have_factor = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || peek() != 'x') fail("expected variable after '*'");
      }
    }
    std::vector<int> exps(static_cast<std::size_t>(ring_.nvars()), 0);
    while (!at_end() && peek() == 'x') {
      std::size_t var_pos = pos_;
      ++pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index after 'x'");
      int idx = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        idx = idx * 10 + (peek() - '0');
        if (idx > 1000) break;
        ++pos_;
      }
      if (idx < 1 || idx > ring_.nvars()) {
        fail_at(var_pos, "unknown variable x" + std::to_string(idx) + " (ring has " +
                             std::to_string(ring_.nvars()) + " variables)");
      }
      int e = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent after '^'");
        e = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
          e = e * 10 + (peek() - '0');
          if (e > 0xFFFF) fail("exponent too large");
          ++pos_;
        }
      }
      exps[static_cast<std::size_t>(idx - 1)] += e;
      have_factor = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || peek() != 'x') fail("expected variable after '*'");
      }
    }
    if (!have_factor) fail(at_end() ? "unexpected end of polynomial" : std::string("unexpected character '") + peek() + "'");
    if (negative) coeff = F.neg(coeff);
    return {Monomial(ring_.nvars(), exps), coeff};
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    throw ParseError(msg, line_, col0_ + static_cast<int>(pos));
  }

  const Ring& ring_;
  std::string_view text_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const Ring& ring, std::string_view text, int line, int column) {
  return PolyParser(ring, text, line, column).parse();
}

}  // namespace gd

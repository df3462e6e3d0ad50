#include "gammadepth/monomial.hpp"

#include <algorithm>

namespace gd {

Monomial::Monomial(int nvars, std::span<const int> exponents) : Monomial(nvars) {
  if (static_cast<int>(exponents.size()) != nvars) {
    throw std::invalid_argument("exponent vector length does not match variable count");
  }
  int d = 0;
  for (int i = 0; i < nvars; ++i) {
    if (exponents[i] < 0 || exponents[i] > 0xFFFF) throw std::invalid_argument("exponent out of range");
    exp_[i] = static_cast<Exponent>(exponents[i]);
    d += exponents[i];
  }
  degree_ = d;
}

std::string Monomial::to_string() const {
  if (degree_ == 0) return "1";
  std::string s;
  for (int i = 0; i < nvars_; ++i) {
    if (exp_[i] == 0) continue;
    s += "x" + std::to_string(i + 1);
    if (exp_[i] > 1) s += "^" + std::to_string(exp_[i]);
  }
  return s;
}

namespace {

void enumerate(int nvars, int var, int remaining, std::vector<int>& exps, std::vector<Monomial>& out) {
  if (var == nvars - 1) {
    exps[var] = remaining;
    out.emplace_back(nvars, exps);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    exps[var] = e;
    enumerate(nvars, var + 1, remaining - e, exps, out);
  }
}

}  // namespace

std::vector<Monomial> Monomial::all_of_degree(int nvars, int degree, MonomialOrder order) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<int> exps(static_cast<std::size_t>(nvars), 0);
  enumerate(nvars, 0, degree, exps, out);
  std::sort(out.begin(), out.end(),
            [order](const Monomial& a, const Monomial& b) { return compare(a, b, order) > 0; });
  return out;
}

int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
  switch (order) {
    case MonomialOrder::DegRevLex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (int i = kMaxVars - 1; i >= 0; --i) {
        if (a.exponent(i) != b.exponent(i)) return a.exponent(i) > b.exponent(i) ? -1 : 1;
      }
      return 0;
    case MonomialOrder::DegLex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      [[fallthrough]];
    case MonomialOrder::Lex:
      for (int i = 0; i < kMaxVars; ++i) {
        if (a.exponent(i) != b.exponent(i)) return a.exponent(i) < b.exponent(i) ? -1 : 1;
      }
      return 0;
  }
  return 0;
}

int monomial_cmp(const Monomial& a, const Monomial& b, MonomialOrder order) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("monomials over different variable counts");
  return compare(a, b, order);
}

}  // namespace gd

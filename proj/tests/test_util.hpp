#pragma once

// Random generators shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <random>
#include <vector>

#include "gammadepth/module.hpp"
#include "gammadepth/polynomial.hpp"
#include "gammadepth/twovar.hpp"

namespace test {

using namespace gd;

inline Monomial random_monomial(std::mt19937_64& rng, int nvars, int max_degree) {
  std::uniform_int_distribution<int> dd(0, max_degree);
  int d = dd(rng);
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  std::uniform_int_distribution<int> dv(0, nvars - 1);
  for (int i = 0; i < d && nvars > 0; ++i) ++e[static_cast<std::size_t>(dv(rng))];
  return Monomial(nvars, e);
}

inline Monomial random_monomial_of_degree(std::mt19937_64& rng, int nvars, int degree) {
  auto all = Monomial::all_of_degree(nvars, degree);
  std::uniform_int_distribution<std::size_t> d(0, all.size() - 1);
  return all[d(rng)];
}

inline Coeff random_unit(std::mt19937_64& rng, const Ring& R) {
  std::uniform_int_distribution<Coeff> d(1, R.prime() - 1);
  return d(rng);
}

inline Polynomial random_homogeneous(std::mt19937_64& rng, const Ring& R, int degree, int nterms) {
  std::vector<Term> ts;
  for (int i = 0; i < nterms; ++i) ts.push_back({random_monomial_of_degree(rng, R.nvars(), degree), random_unit(rng, R)});
  return Polynomial(R, std::move(ts));
}

inline LinearForm random_form(std::mt19937_64& rng, const Ring& R) {
  std::uniform_int_distribution<Coeff> d(0, R.prime() - 1);
  while (true) {
    std::vector<Coeff> c;
    bool nz = false;
    for (int i = 0; i < R.nvars(); ++i) {
      c.push_back(d(rng));
      nz |= c.back() != 0;
    }
    if (nz) return LinearForm(R, c);
  }
}

inline LinearChange random_change(std::mt19937_64& rng, const Ring& R) {
  std::uniform_int_distribution<Coeff> d(0, R.prime() - 1);
  while (true) {
    LinearChange::Matrix m(static_cast<std::size_t>(R.nvars()), std::vector<Coeff>(static_cast<std::size_t>(R.nvars())));
    for (auto& row : m)
      for (auto& v : row) v = d(rng);
    if (invert_matrix(R.field(), m)) return LinearChange(R, m);
  }
}

/// Random homogeneous submodule of a small free module.
inline Submodule random_submodule(std::mt19937_64& rng, const GradedFreeModule& F, int ngens, int max_degree,
                                  int max_terms = 3) {
  std::uniform_int_distribution<int> dd(0, max_degree);
  std::uniform_int_distribution<int> dt(1, max_terms);
  std::vector<FreeElement> gens;
  const Ring& R = F.ring();
  for (int g = 0; g < ngens; ++g) {
    int lo = 0;
    for (int t : F.twists()) lo = std::max(lo, t);
    int d = lo + dd(rng);
    std::vector<ModuleTerm> ts;
    int nt = dt(rng);
    for (int i = 0; i < nt; ++i) {
      std::uniform_int_distribution<std::size_t> dc(0, F.rank() - 1);
      auto k = dc(rng);
      int md = d - F.twist(k);
      if (md < 0) continue;
      ts.push_back({random_monomial_of_degree(rng, R.nvars(), md), static_cast<std::uint32_t>(k), random_unit(rng, R)});
    }
    gens.push_back(FreeElement::from_terms(F, std::move(ts)));
  }
  return Submodule(F, std::move(gens));
}

/// Random well-formed decomposition over K[x1, x2]: a divisibility chain
/// f_r | ... | f_1 with strictly decreasing degrees, and R/I of depth 0.
inline std::vector<CwlPart> random_cwl_parts(std::mt19937_64& rng, const Ring& R) {
  std::uniform_int_distribution<int> count(1, 3), step(1, 2), coin(0, 1);
  int r = count(rng);
  std::vector<Polynomial> fs;
  Polynomial f = coin(rng) ? random_homogeneous(rng, R, 1, 2) : Polynomial::constant(R, 1);
  if (f.is_zero()) f = Polynomial::variable(R, 0);
  fs.push_back(f.monic());
  for (int i = 1; i < r; ++i) {
    Polynomial g = random_homogeneous(rng, R, step(rng), 2);
    if (g.is_zero()) g = Polynomial::variable(R, 1);
    fs.push_back((fs.back() * g).monic());
  }
  std::reverse(fs.begin(), fs.end());
  std::vector<CwlPart> parts;
  int d = fs.front().degree() + (r == 1 ? 1 : 0) + coin(rng);
  for (const auto& fi : fs) {
    parts.push_back(CwlPart{d, fi.degree(), fi});
    d += step(rng);
  }
  return parts;
}

}  // namespace test

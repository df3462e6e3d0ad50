#pragma once

// Internal Buchberger engine on module vectors. Not installed.

#include <cstdint>
#include <vector>

#include "gammadepth/module.hpp"

namespace gd::detail {

/// Position-over-term order: a larger position rank wins, ties broken by the
/// ring order on monomials.
struct ModuleOrder {
  Ring ring;
  std::vector<int> twists;
  std::vector<std::uint32_t> rank;

  /// Positions ranked by ascending twist, then index.
  static ModuleOrder standard(const GradedFreeModule& F);

  int cmp(const ModuleTerm& a, const ModuleTerm& b) const {
    if (a.comp != b.comp) return rank[a.comp] < rank[b.comp] ? -1 : 1;
    return ring.compare(a.mono, b.mono);
  }
  int degree(const ModuleTerm& t) const { return t.mono.degree() + twists[t.comp]; }
};

/// Vector with terms strictly descending in the module order.
using Vec = std::vector<ModuleTerm>;

Vec to_vec(const ModuleOrder& ord, const FreeElement& v);
/// Canonical terms (component ascending, monomial descending).
std::vector<ModuleTerm> to_canonical(const ModuleOrder& ord, Vec v);

/// p - c * m * g.
Vec sub_mul(const ModuleOrder& ord, const Vec& p, Coeff c, const Monomial& m, const Vec& g);
void make_monic(const ModuleOrder& ord, Vec& v);

struct GbResult {
  /// Reduced, monic Gröbner basis sorted by degree then leading term.
  std::vector<Vec> basis;
  /// Indices of inputs forming a minimal generating set.
  std::vector<std::size_t> minimal_inputs;
};

/// Homogeneous Buchberger, degree by degree. Inputs must be homogeneous.
/// If stop_degree is set, pairs and inputs above it are dropped (the
/// result is then a truncated basis, complete through that degree).
GbResult buchberger(const ModuleOrder& ord, const std::vector<Vec>& inputs, int stop_degree = -1);

/// Full reduction by a Gröbner basis (monic elements).
Vec reduce(const ModuleOrder& ord, const std::vector<Vec>& gb, Vec v);

}  // namespace gd::detail

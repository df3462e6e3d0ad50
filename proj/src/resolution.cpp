#include "gammadepth/resolution.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gammadepth/groebner.hpp"
#include "gammadepth/linalg.hpp"

namespace gd {

void BettiTable::add(int i, int j, std::int64_t v) {
  if (v == 0) return;
  auto& e = entries_[{i, j}];
  e += v;
  if (e == 0) entries_.erase({i, j});
}

std::int64_t BettiTable::operator()(int i, int j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? 0 : it->second;
}

int BettiTable::length() const {
  int l = -1;
  for (const auto& [ij, v] : entries_) l = std::max(l, ij.first);
  return l;
}

std::int64_t BettiTable::total(int i) const {
  std::int64_t s = 0;
  for (const auto& [ij, v] : entries_) {
    if (ij.first == i) s += v;
  }
  return s;
}

std::vector<int> BettiTable::degrees(int i) const {
  std::vector<int> out;
  for (const auto& [ij, v] : entries_) {
    if (ij.first == i) out.insert(out.end(), static_cast<std::size_t>(v), ij.second);
  }
  return out;
}

Degree BettiTable::regularity() const {
  Degree r = Degree::neg_inf();
  for (const auto& [ij, v] : entries_) r = max(r, Degree(ij.second - ij.first));
  return r;
}

std::vector<std::int64_t> BettiTable::poincare() const {
  std::vector<std::int64_t> p(static_cast<std::size_t>(length() + 1), 0);
  for (const auto& [ij, v] : entries_) p[static_cast<std::size_t>(ij.first)] += v;
  return p;
}

std::string BettiTable::to_text() const {
  if (entries_.empty()) return "0\n";
  int len = length();
  int rlo = 1 << 30, rhi = -(1 << 30);
  for (const auto& [ij, v] : entries_) {
    rlo = std::min(rlo, ij.second - ij.first);
    rhi = std::max(rhi, ij.second - ij.first);
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{""};
  for (int i = 0; i <= len; ++i) head.push_back(std::to_string(i));
  cells.push_back(head);
  std::vector<std::string> tot{"total:"};
  for (int i = 0; i <= len; ++i) tot.push_back(std::to_string(total(i)));
  cells.push_back(tot);
  for (int r = rlo; r <= rhi; ++r) {
    std::vector<std::string> row{std::to_string(r) + ":"};
    for (int i = 0; i <= len; ++i) {
      auto v = (*this)(i, i + r);
      row.push_back(v == 0 ? "." : std::to_string(v));
    }
    cells.push_back(row);
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ' ';
      os << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    os << '\n';
  }
  return os.str();
}

namespace {

std::string power(const char* var, int e) {
  if (e == 0) return "";
  if (e == 1) return var;
  return std::string(var) + "^" + std::to_string(e);
}

std::string join_terms(const std::vector<std::pair<std::int64_t, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    auto [c, mono] = terms[k];
    if (k) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || mono.empty()) s += std::to_string(a);
    s += mono;
  }
  return s;
}

}  // namespace

std::string poincare_string(const std::vector<std::int64_t>& p) {
  std::vector<std::pair<std::int64_t, std::string>> terms;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 0) terms.push_back({p[i], power("t", static_cast<int>(i))});
  }
  return join_terms(terms);
}

std::string graded_poincare_string(const BettiTable& b) {
  if (b.empty()) return "0";
  int lo = b.entries().begin()->first.second;
  for (const auto& [ij, v] : b.entries()) lo = std::min(lo, ij.second);
  std::vector<std::pair<std::int64_t, std::string>> terms;
  // Order by homological index, then internal degree.
  for (const auto& [ij, v] : b.entries()) terms.push_back({v, power("t", ij.first) + power("u", ij.second - lo)});
  std::string inner = join_terms(terms);
  std::string prefix = power("u", lo);
  if (lo < 0) prefix = "u^(" + std::to_string(lo) + ")";
  if (prefix.empty()) return inner;
  return prefix + "(" + inner + ")";
}

MinimalCover minimal_cover(const PresentedModule& M) {
  const GradedFreeModule& F = M.free();
  const Submodule& U = M.relations();
  const PrimeField& K = F.ring().field();

  // Unit parts of the relations, i.e. their images in F/mF.
  DenseMatrix units;
  for (const auto& u : U.minimal_generators()) {
    std::vector<Coeff> row(F.rank(), 0);
    bool any = false;
    for (const auto& t : u.terms()) {
      if (t.mono.is_one()) {
        row[t.comp] = t.coeff;
        any = true;
      }
    }
    if (any) units.push_back(std::move(row));
  }
  if (units.empty()) {
    std::vector<FreeElement> imgs;
    for (std::size_t k = 0; k < F.rank(); ++k) imgs.push_back(FreeElement::basis(F, k));
    return MinimalCover{F, std::move(imgs), U};
  }
  auto pivots = row_reduce(K, units, static_cast<int>(F.rank()));
  std::set<int> removable(pivots.begin(), pivots.end());
  std::vector<int> twists;
  std::vector<FreeElement> imgs;
  for (std::size_t k = 0; k < F.rank(); ++k) {
    if (removable.count(static_cast<int>(k))) continue;
    twists.push_back(F.twist(k));
    imgs.push_back(FreeElement::basis(F, k));
  }
  GradedFreeModule cover(F.ring(), twists);
  Submodule syz = kernel_of_map(cover, M, imgs);
  return MinimalCover{cover, std::move(imgs), Submodule(cover, syz.minimal_generators())};
}

Submodule first_syzygy(const PresentedModule& M) { return minimal_cover(M).syzygy; }

PresentedModule minimal_presentation(const PresentedModule& M) {
  MinimalCover c = minimal_cover(M);
  return PresentedModule(c.cover, c.syzygy);
}

BettiTable Resolution::betti() const {
  BettiTable b;
  for (std::size_t i = 0; i < free.size(); ++i) {
    for (int t : free[i].twists()) b.add(static_cast<int>(i), t);
  }
  return b;
}

Resolution resolve(const PresentedModule& M, int cap) {
  if (cap < 0) cap = M.ring().nvars();
  Resolution res;
  MinimalCover c = minimal_cover(M);
  if (c.cover.rank() == 0) return res;
  res.free.push_back(c.cover);
  res.syzygies.push_back(c.syzygy);
  for (int i = 1; i <= cap; ++i) {
    const Submodule& S = res.syzygies.back();
    const auto& gens = S.minimal_generators();
    if (gens.empty()) break;
    std::vector<int> twists;
    for (const auto& g : gens) twists.push_back(g.degree());
    GradedFreeModule Fi(M.ring(), twists);
    Submodule next = kernel_of_map(Fi, PresentedModule(S.ambient()), gens);
    res.free.push_back(Fi);
    res.syzygies.push_back(Submodule(Fi, next.minimal_generators()));
  }
  return res;
}

BettiTable minimal_resolution(const PresentedModule& M, int cap) { return resolve(M, cap).betti(); }

PresentedModule as_module(const Submodule& U) {
  const auto& gens = U.minimal_generators();
  std::vector<int> twists;
  for (const auto& g : gens) twists.push_back(g.degree());
  GradedFreeModule F(U.ambient().ring(), twists);
  Submodule K = kernel_of_map(F, PresentedModule(U.ambient()), gens);
  return PresentedModule(F, Submodule(F, K.minimal_generators()));
}

Degree regularity(const PresentedModule& M) { return minimal_resolution(M).regularity(); }

Degree regularity(const Submodule& U) { return regularity(as_module(U)); }

std::vector<std::int64_t> poincare(const PresentedModule& M) { return minimal_resolution(M).poincare(); }

}  // namespace gd

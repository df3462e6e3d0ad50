#include "engine.hpp"

#include <algorithm>
#include <numeric>

namespace gd::detail {

ModuleOrder ModuleOrder::standard(const GradedFreeModule& F) {
  ModuleOrder ord{F.ring(), F.twists(), {}};
  std::vector<std::size_t> idx(F.rank());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return F.twist(a) < F.twist(b); });
  ord.rank.assign(F.rank(), 0);
  for (std::size_t r = 0; r < idx.size(); ++r) ord.rank[idx[r]] = static_cast<std::uint32_t>(r);
  return ord;
}

Vec to_vec(const ModuleOrder& ord, const FreeElement& v) {
  Vec out = v.terms();
  std::sort(out.begin(), out.end(), [&](const ModuleTerm& a, const ModuleTerm& b) { return ord.cmp(a, b) > 0; });
  return out;
}

std::vector<ModuleTerm> to_canonical(const ModuleOrder& ord, Vec v) {
  std::sort(v.begin(), v.end(), [&](const ModuleTerm& a, const ModuleTerm& b) {
    if (a.comp != b.comp) return a.comp < b.comp;
    return ord.ring.compare(a.mono, b.mono) > 0;
  });
  return v;
}

Vec sub_mul(const ModuleOrder& ord, const Vec& p, Coeff c, const Monomial& m, const Vec& g) {
  const PrimeField& F = ord.ring.field();
  Coeff neg = F.neg(c);
  Vec out;
  out.reserve(p.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    ModuleTerm t{g[j].mono * m, g[j].comp, F.mul(g[j].coeff, neg)};
    if (i == p.size()) {
      out.push_back(t);
      ++j;
      continue;
    }
    int s = ord.cmp(p[i], t);
    if (s > 0) {
      out.push_back(p[i++]);
    } else if (s < 0) {
      out.push_back(t);
      ++j;
    } else {
      Coeff sum = F.add(p[i].coeff, t.coeff);
      if (sum != 0) out.push_back({p[i].mono, p[i].comp, sum});
      ++i;
      ++j;
    }
  }
  return out;
}

void make_monic(const ModuleOrder& ord, Vec& v) {
  if (v.empty() || v.front().coeff == 1) return;
  const PrimeField& F = ord.ring.field();
  Coeff inv = F.inv(v.front().coeff);
  for (auto& t : v) t.coeff = F.mul(t.coeff, inv);
}

namespace {

/// Divisor lookup by component.
class Reducer {
 public:
  Reducer(const ModuleOrder& ord, const std::vector<Vec>& basis) : ord_(ord), basis_(basis) {
    by_comp_.resize(ord.rank.size());
    for (std::size_t i = 0; i < basis.size(); ++i) add(i);
  }

  void add(std::size_t i) { by_comp_[basis_[i].front().comp].push_back(i); }

  const Vec* divisor(const ModuleTerm& t) const {
    for (std::size_t i : by_comp_[t.comp]) {
      if (basis_[i].front().mono.divides(t.mono)) return &basis_[i];
    }
    return nullptr;
  }

  /// Reduces until the leading term is irreducible.
  Vec top_reduce(Vec v) const {
    while (!v.empty()) {
      const Vec* g = divisor(v.front());
      if (!g) break;
      v = sub_mul(ord_, v, v.front().coeff, v.front().mono / g->front().mono, *g);
    }
    return v;
  }

  Vec full_reduce(Vec v) const {
    Vec done;
    while (!v.empty()) {
      v = top_reduce(std::move(v));
      if (v.empty()) break;
      // Move the irreducible leading run into the result.
      std::size_t k = 0;
      while (k < v.size() && !divisor(v[k])) ++k;
      done.insert(done.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
      v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return done;
  }

 private:
  const ModuleOrder& ord_;
  const std::vector<Vec>& basis_;
  std::vector<std::vector<std::size_t>> by_comp_;
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  int degree;
};

class Buchberger {
 public:
  Buchberger(const ModuleOrder& ord, int stop_degree)
      : ord_(ord), reducer_(ord, basis_), stop_(stop_degree), ideal_case_(ord.rank.size() == 1) {}

  GbResult run(const std::vector<Vec>& inputs) {
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      if (!inputs[k].empty()) order.push_back(k);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return ord_.degree(inputs[a].front()) < ord_.degree(inputs[b].front());
    });

    GbResult res;
    std::size_t next_input = 0;
    while (true) {
      int d = -1;
      for (const auto& p : pairs_) {
        if (d < 0 || p.degree < d) d = p.degree;
      }
      if (next_input < order.size()) {
        int di = ord_.degree(inputs[order[next_input]].front());
        if (d < 0 || di < d) d = di;
      }
      if (d < 0) break;
      if (stop_ >= 0 && d > stop_) break;

      std::vector<Pair> now;
      std::vector<Pair> later;
      for (auto& p : pairs_) (p.degree == d ? now : later).push_back(p);
      pairs_ = std::move(later);
      for (const auto& p : now) {
        Vec s = spoly(p);
        s = reducer_.top_reduce(std::move(s));
        if (!s.empty()) insert(std::move(s));
      }
      while (next_input < order.size() && ord_.degree(inputs[order[next_input]].front()) == d) {
        std::size_t k = order[next_input++];
        Vec r = reducer_.top_reduce(inputs[k]);
        if (!r.empty()) {
          res.minimal_inputs.push_back(k);
          insert(std::move(r));
        }
      }
    }

    // Interreduce tails; leading terms are already pairwise non-dividing.
    std::vector<Vec> reduced;
    reduced.reserve(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      Vec tail(basis_[i].begin() + 1, basis_[i].end());
      Vec rt = reducer_.full_reduce(std::move(tail));
      Vec v;
      v.reserve(rt.size() + 1);
      v.push_back(basis_[i].front());
      v.insert(v.end(), rt.begin(), rt.end());
      reduced.push_back(std::move(v));
    }
    std::stable_sort(reduced.begin(), reduced.end(), [&](const Vec& a, const Vec& b) {
      int da = ord_.degree(a.front()), db = ord_.degree(b.front());
      if (da != db) return da < db;
      return ord_.cmp(a.front(), b.front()) > 0;
    });
    res.basis = std::move(reduced);
    return res;
  }

 private:
  Vec spoly(const Pair& p) const {
    const Vec& a = basis_[p.i];
    const Vec& b = basis_[p.j];
    Vec left;
    left.reserve(a.size());
    Monomial ma = p.lcm / a.front().mono;
    for (const auto& t : a) left.push_back({t.mono * ma, t.comp, t.coeff});
    return sub_mul(ord_, left, 1, p.lcm / b.front().mono, b);
  }

  void insert(Vec h) {
    make_monic(ord_, h);
    std::size_t hi = basis_.size();
    basis_.push_back(std::move(h));
    const ModuleTerm& lh = basis_[hi].front();
    int twist = ord_.twists[lh.comp];

    // Gebauer-Moeller update.
    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool coprime;
      bool alive = true;
    };
    std::vector<Cand> cands;
    for (std::size_t g = 0; g < hi; ++g) {
      const ModuleTerm& lg = basis_[g].front();
      if (lg.comp != lh.comp) continue;
      cands.push_back({g, lg.mono.lcm(lh.mono), lg.mono.coprime(lh.mono)});
    }
    // Criterion M/F: drop a candidate whose lcm is a multiple of another
    // surviving candidate's lcm (keeping one per equal lcm).
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (ideal_case_ && cands[a].coprime) continue;
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b || !cands[b].alive) continue;
        if (cands[b].lcm.divides(cands[a].lcm) && (!(cands[b].lcm == cands[a].lcm) || b < a)) {
          cands[a].alive = false;
          break;
        }
      }
    }
    // Criterion B on existing pairs.
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (const auto& p : pairs_) {
      const ModuleTerm& li = basis_[p.i].front();
      if (li.comp == lh.comp && lh.mono.divides(p.lcm)) {
        Monomial l1 = li.mono.lcm(lh.mono);
        Monomial l2 = basis_[p.j].front().mono.lcm(lh.mono);
        if (!(l1 == p.lcm) && !(l2 == p.lcm)) continue;
      }
      kept.push_back(p);
    }
    pairs_ = std::move(kept);
    for (const auto& c : cands) {
      if (!c.alive) continue;
      if (ideal_case_ && c.coprime) continue;  // product criterion, valid for ideals only
      pairs_.push_back({c.g, hi, c.lcm, c.lcm.degree() + twist});
    }
    reducer_.add(hi);
  }

  const ModuleOrder& ord_;
  std::vector<Vec> basis_;
  Reducer reducer_;
  std::vector<Pair> pairs_;
  int stop_;
  bool ideal_case_;
};

}  // namespace

GbResult buchberger(const ModuleOrder& ord, const std::vector<Vec>& inputs, int stop_degree) {
  Buchberger b(ord, stop_degree);
  return b.run(inputs);
}

Vec reduce(const ModuleOrder& ord, const std::vector<Vec>& gb, Vec v) {
  Reducer r(ord, gb);
  return r.full_reduce(std::move(v));
}

}  // namespace gd::detail

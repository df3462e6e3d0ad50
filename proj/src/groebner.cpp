#include "gammadepth/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "engine.hpp"

namespace gd {

Submodule groebner_basis(const Submodule& U) { return Submodule(U.ambient(), U.groebner_basis()); }

FreeElement normal_form(const FreeElement& v, const Submodule& U) { return U.normal_form(v); }

Submodule kernel_of_map(const GradedFreeModule& source, const PresentedModule& target,
                        const std::vector<FreeElement>& images) {
  const GradedFreeModule& T = target.free();
  if (images.size() != source.rank()) throw std::invalid_argument("kernel_of_map: one image per source generator required");
  if (!(source.ring() == T.ring())) throw std::invalid_argument("kernel_of_map: source and target over different rings");
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].rank() != T.rank()) throw std::invalid_argument("kernel_of_map: image not in the target module");
    if (!images[i].is_zero() && images[i].degree() != source.twist(i)) {
      throw std::invalid_argument("kernel_of_map: image " + std::to_string(i + 1) + " has degree " +
                                  std::to_string(images[i].degree()) + ", source twist is " +
                                  std::to_string(source.twist(i)));
    }
  }
  const std::size_t m = T.rank();
  const std::size_t a = source.rank();
  if (a == 0) return Submodule::zero(source);

  // Combined module T + S with every target position ranked above every
  // source position, so basis elements led by a source term have no target part.
  std::vector<int> twists = T.twists();
  twists.insert(twists.end(), source.twists().begin(), source.twists().end());
  detail::ModuleOrder ord{T.ring(), twists, std::vector<std::uint32_t>(m + a)};
  auto src_ord = detail::ModuleOrder::standard(source);
  auto tgt_ord = detail::ModuleOrder::standard(T);
  for (std::size_t k = 0; k < m; ++k) ord.rank[k] = static_cast<std::uint32_t>(a) + tgt_ord.rank[k];
  for (std::size_t k = 0; k < a; ++k) ord.rank[m + k] = src_ord.rank[k];

  auto sort_vec = [&](detail::Vec& v) {
    std::sort(v.begin(), v.end(), [&](const ModuleTerm& x, const ModuleTerm& y) { return ord.cmp(x, y) > 0; });
  };
  std::vector<detail::Vec> inputs;
  Monomial one(T.ring().nvars());
  for (std::size_t i = 0; i < a; ++i) {
    detail::Vec v = images[i].terms();
    v.push_back({one, static_cast<std::uint32_t>(m + i), 1});
    sort_vec(v);
    inputs.push_back(std::move(v));
  }
  for (const auto& u : target.relations().minimal_generators()) {
    detail::Vec v = u.terms();
    sort_vec(v);
    inputs.push_back(std::move(v));
  }
  auto res = detail::buchberger(ord, inputs);
  std::vector<FreeElement> gens;
  for (auto& v : res.basis) {
    if (v.front().comp < m) continue;
    for (auto& t : v) t.comp -= static_cast<std::uint32_t>(m);
    gens.push_back(FreeElement::from_terms(source, std::move(v)));
  }
  return Submodule(source, std::move(gens));
}

namespace {

/// Element of F with the same terms as v (v living in a shift of F).
FreeElement reinterpret(const GradedFreeModule& F, const FreeElement& v) {
  return FreeElement::from_terms(F, v.terms());
}

}  // namespace

Submodule colon_by_linear(const Submodule& U, const LinearForm& z) {
  const GradedFreeModule& F = U.ambient();
  if (!(z.ring() == F.ring())) throw std::invalid_argument("colon_by_linear: form over a different ring");
  GradedFreeModule S = F.shifted(1);
  Polynomial zp = z.to_polynomial();
  std::vector<FreeElement> images;
  for (std::size_t k = 0; k < F.rank(); ++k) images.push_back(FreeElement::basis(F, k).times(zp));
  Submodule K = kernel_of_map(S, PresentedModule(F, U), images);
  std::vector<FreeElement> gens;
  for (const auto& g : K.generators()) gens.push_back(reinterpret(F, g));
  return Submodule(F, std::move(gens));
}

Submodule colon_by_maximal(const Submodule& U) {
  const GradedFreeModule& F = U.ambient();
  const Ring& ring = F.ring();
  const int n = ring.nvars();
  const std::size_t m = F.rank();
  if (n == 0) return Submodule::whole(F);

  // F(-1) -> (F/U)^n, e_k -> (x1 e_k, ..., xn e_k).
  std::vector<int> twists;
  for (int b = 0; b < n; ++b) twists.insert(twists.end(), F.twists().begin(), F.twists().end());
  GradedFreeModule T(ring, twists);
  std::vector<FreeElement> rels;
  for (const auto& u : U.minimal_generators()) {
    for (int b = 0; b < n; ++b) {
      auto ts = u.terms();
      for (auto& t : ts) t.comp += static_cast<std::uint32_t>(b * m);
      rels.push_back(FreeElement::from_terms(T, std::move(ts)));
    }
  }
  std::vector<FreeElement> images;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<ModuleTerm> ts;
    for (int b = 0; b < n; ++b) {
      ts.push_back({Monomial::variable(n, b), static_cast<std::uint32_t>(b * m + k), 1});
    }
    images.push_back(FreeElement::from_terms(T, std::move(ts)));
  }
  Submodule K = kernel_of_map(F.shifted(1), PresentedModule(T, Submodule(T, std::move(rels))), images);
  std::vector<FreeElement> gens;
  for (const auto& g : K.generators()) gens.push_back(reinterpret(F, g));
  return Submodule(F, std::move(gens));
}

Submodule saturate(const Submodule& U) {
  Submodule W = U;
  while (true) {
    Submodule next = colon_by_maximal(W);
    if (W.contains(next)) return W;
    W = Submodule(W.ambient(), next.minimal_generators());
  }
}

Submodule intersect(const Submodule& U, const Submodule& W) {
  if (!(U.ambient() == W.ambient())) throw std::invalid_argument("intersect: different ambient modules");
  const auto& gens = U.minimal_generators();
  std::vector<int> twists;
  for (const auto& g : gens) twists.push_back(g.degree());
  GradedFreeModule S(U.ambient().ring(), twists);
  Submodule K = kernel_of_map(S, PresentedModule(W.ambient(), W), gens);
  std::vector<FreeElement> out;
  for (const auto& a : K.generators()) {
    FreeElement acc(U.ambient());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Polynomial ai = a.component(i);
      if (!ai.is_zero()) acc = acc + gens[i].times(ai);
    }
    out.push_back(acc);
  }
  return Submodule(U.ambient(), std::move(out));
}

// ---- dimensions ----

GradedVectorSpaceDims::GradedVectorSpaceDims(std::map<int, std::int64_t> dims) {
  for (auto [j, d] : dims) {
    if (d < 0) throw std::invalid_argument("negative dimension");
    if (d != 0) dims_[j] = d;
  }
}

std::int64_t GradedVectorSpaceDims::operator[](int j) const {
  auto it = dims_.find(j);
  return it == dims_.end() ? 0 : it->second;
}

std::int64_t GradedVectorSpaceDims::total() const {
  std::int64_t s = 0;
  for (auto [j, d] : dims_) s += d;
  return s;
}

Degree GradedVectorSpaceDims::deg() const { return dims_.empty() ? Degree::neg_inf() : Degree(dims_.rbegin()->first); }

Degree GradedVectorSpaceDims::indeg() const { return dims_.empty() ? Degree::pos_inf() : Degree(dims_.begin()->first); }

std::string GradedVectorSpaceDims::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto [j, d] : dims_) {
    if (!first) os << ", ";
    first = false;
    os << j << ": " << d;
  }
  os << "}";
  return os.str();
}

namespace {

/// Leading monomials of a Gröbner basis, split by component.
std::vector<std::vector<Monomial>> leading_monomials(const Submodule& U) {
  std::vector<std::vector<Monomial>> out(U.ambient().rank());
  auto ord = detail::ModuleOrder::standard(U.ambient());
  for (const auto& g : U.groebner_basis()) {
    auto v = detail::to_vec(ord, g);
    out[v.front().comp].push_back(v.front().mono);
  }
  return out;
}

std::int64_t count_standard(const std::vector<Monomial>& leads, int nvars, int degree, MonomialOrder order) {
  if (degree < 0) return 0;
  std::int64_t c = 0;
  for (const auto& mono : Monomial::all_of_degree(nvars, degree, order)) {
    bool divisible = std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(mono); });
    if (!divisible) ++c;
  }
  return c;
}

std::int64_t binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < b) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

std::int64_t free_dim(int nvars, int d) {
  if (d < 0) return 0;
  if (nvars == 0) return d == 0 ? 1 : 0;
  return binomial(d + nvars - 1, nvars - 1);
}

using UPoly = std::vector<std::int64_t>;

void add_shifted(UPoly& acc, const UPoly& p, int shift, std::int64_t sign) {
  if (acc.size() < p.size() + static_cast<std::size_t>(shift)) acc.resize(p.size() + static_cast<std::size_t>(shift), 0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i + static_cast<std::size_t>(shift)] += sign * p[i];
}

void minimalize(std::vector<Monomial>& gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  std::vector<Monomial> out;
  for (const auto& g : gens) {
    if (std::none_of(out.begin(), out.end(), [&](const Monomial& o) { return o.divides(g); })) out.push_back(g);
  }
  gens = std::move(out);
}

/// Numerator of the Hilbert series of R/I for a monomial ideal I.
UPoly monomial_numerator(std::vector<Monomial> gens, int nvars) {
  minimalize(gens);
  if (gens.empty()) return {1};
  bool coprime = true;
  for (std::size_t i = 0; i < gens.size() && coprime; ++i) {
    for (std::size_t j = i + 1; j < gens.size() && coprime; ++j) coprime = gens[i].coprime(gens[j]);
  }
  if (coprime) {
    UPoly acc{1};
    for (const auto& g : gens) {
      UPoly next(acc.size() + static_cast<std::size_t>(g.degree()), 0);
      add_shifted(next, acc, 0, 1);
      add_shifted(next, acc, g.degree(), -1);
      acc = std::move(next);
    }
    return acc;
  }
  // Pivot on the variable occurring in the most generators:
  // N(I) = N(I + x) + u N(I : x).
  int best = 0, best_count = -1;
  for (int v = 0; v < nvars; ++v) {
    int c = 0;
    for (const auto& g : gens) c += g.exponent(v) > 0;
    if (c > best_count) {
      best = v;
      best_count = c;
    }
  }
  Monomial x = Monomial::variable(nvars, best);
  std::vector<Monomial> with_x{x};
  for (const auto& g : gens) {
    if (g.exponent(best) == 0) with_x.push_back(g);
  }
  std::vector<Monomial> colon;
  for (const auto& g : gens) colon.push_back(g.exponent(best) > 0 ? g / x : g);
  UPoly a = monomial_numerator(std::move(with_x), nvars);
  UPoly b = monomial_numerator(std::move(colon), nvars);
  UPoly out;
  add_shifted(out, a, 0, 1);
  add_shifted(out, b, 1, 1);
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

GradedVectorSpaceDims hilbert_function(const PresentedModule& M, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("hilbert_function: empty degree window");
  const GradedFreeModule& F = M.free();
  auto leads = leading_monomials(M.relations());
  std::map<int, std::int64_t> dims;
  for (int j = lo; j <= hi; ++j) {
    std::int64_t d = 0;
    for (std::size_t k = 0; k < F.rank(); ++k) {
      d += count_standard(leads[k], F.ring().nvars(), j - F.twist(k), F.ring().order());
    }
    dims[j] = d;
  }
  return GradedVectorSpaceDims(std::move(dims));
}

GradedVectorSpaceDims hilbert_function(const Submodule& U, int lo, int hi) {
  auto quotient = hilbert_function(PresentedModule(U.ambient(), U), lo, hi);
  const GradedFreeModule& F = U.ambient();
  std::map<int, std::int64_t> dims;
  for (int j = lo; j <= hi; ++j) {
    std::int64_t d = 0;
    for (int t : F.twists()) d += free_dim(F.ring().nvars(), j - t);
    dims[j] = d - quotient[j];
  }
  return GradedVectorSpaceDims(std::move(dims));
}

HilbertSeries hilbert_series(const PresentedModule& M) {
  const GradedFreeModule& F = M.free();
  HilbertSeries hs;
  hs.nvars = F.ring().nvars();
  if (F.rank() == 0) return hs;
  hs.offset = *std::min_element(F.twists().begin(), F.twists().end());
  auto leads = leading_monomials(M.relations());
  for (std::size_t k = 0; k < F.rank(); ++k) {
    add_shifted(hs.coeffs, monomial_numerator(leads[k], hs.nvars), F.twist(k) - hs.offset, 1);
  }
  return hs;
}

std::optional<GradedVectorSpaceDims> HilbertSeries::finite_dims() const {
  std::vector<std::int64_t> c = coeffs;
  for (int i = 0; i < nvars; ++i) {
    // Divide by (1 - u): quotient coefficients are prefix sums, remainder is the total.
    std::int64_t total = std::accumulate(c.begin(), c.end(), std::int64_t{0});
    if (total != 0) return std::nullopt;
    if (c.empty()) return GradedVectorSpaceDims();
    std::vector<std::int64_t> q(c.size() - 1);
    std::int64_t run = 0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
      run += c[k];
      q[k] = run;
    }
    c = std::move(q);
  }
  std::map<int, std::int64_t> dims;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != 0) dims[offset + static_cast<int>(k)] = c[k];
  }
  return GradedVectorSpaceDims(std::move(dims));
}

std::optional<std::int64_t> HilbertSeries::finite_length() const {
  auto d = finite_dims();
  if (!d) return std::nullopt;
  return d->total();
}

std::vector<std::int64_t> HilbertSeries::expand(int lo, int hi) const {
  std::vector<std::int64_t> out;
  for (int j = lo; j <= hi; ++j) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      s += coeffs[k] * free_dim(nvars, j - offset - static_cast<int>(k));
    }
    out.push_back(s);
  }
  return out;
}

namespace {

HilbertSeries difference_series(const Submodule& W, const Submodule& U) {
  if (!(W.ambient() == U.ambient())) throw std::invalid_argument("quotient of submodules of different ambient modules");
  HilbertSeries a = hilbert_series(PresentedModule(U.ambient(), U));
  HilbertSeries b = hilbert_series(PresentedModule(W.ambient(), W));
  HilbertSeries d;
  d.nvars = a.nvars;
  d.offset = a.offset;
  add_shifted(d.coeffs, a.coeffs, 0, 1);
  add_shifted(d.coeffs, b.coeffs, b.offset - a.offset, -1);
  return d;
}

}  // namespace

std::optional<std::int64_t> quotient_dimension(const Submodule& W, const Submodule& U) {
  return difference_series(W, U).finite_length();
}

std::optional<GradedVectorSpaceDims> quotient_dims(const Submodule& W, const Submodule& U) {
  return difference_series(W, U).finite_dims();
}

}  // namespace gd

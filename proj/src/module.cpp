#include "gammadepth/module.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <optional>
#include <sstream>

#include "engine.hpp"

namespace gd {

GradedFreeModule GradedFreeModule::shifted(int s) const {
  std::vector<int> t = twists_;
  for (auto& j : t) j += s;
  return GradedFreeModule(ring_, std::move(t));
}

std::string GradedFreeModule::to_string() const {
  if (twists_.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < twists_.size(); ++k) {
    if (k) s += " + ";
    s += "R(" + std::to_string(-twists_[k]) + ")";
  }
  return s;
}

// ---- FreeElement ----

namespace {

bool canonical_less(const Ring& ring, const ModuleTerm& a, const ModuleTerm& b) {
  if (a.comp != b.comp) return a.comp < b.comp;
  return ring.compare(a.mono, b.mono) > 0;
}

}  // namespace

FreeElement::FreeElement(const GradedFreeModule& F, const std::vector<Polynomial>& components)
    : ring_(F.ring()), rank_(F.rank()) {
  if (components.size() != F.rank()) {
    throw std::invalid_argument("element has " + std::to_string(components.size()) + " components, module has rank " +
                                std::to_string(F.rank()));
  }
  bool have_degree = false;
  for (std::size_t k = 0; k < components.size(); ++k) {
    const Polynomial& f = components[k];
    if (!(f.ring() == ring_)) throw std::invalid_argument("component over a different ring");
    if (f.is_zero()) continue;
    if (!f.is_homogeneous()) throw std::invalid_argument("component " + std::to_string(k + 1) + " is not homogeneous");
    int d = f.degree() + F.twist(k);
    if (have_degree && d != degree_) throw std::invalid_argument("components have inconsistent degrees");
    degree_ = d;
    have_degree = true;
    for (const auto& t : f.terms()) terms_.push_back({t.mono, static_cast<std::uint32_t>(k), t.coeff});
  }
}

FreeElement FreeElement::basis(const GradedFreeModule& F, std::size_t k) {
  if (k >= F.rank()) throw std::out_of_range("basis index out of range");
  return FreeElement(F.ring(), F.rank(), {{Monomial(F.ring().nvars()), static_cast<std::uint32_t>(k), 1}}, F.twist(k));
}

FreeElement FreeElement::from_terms(const GradedFreeModule& F, std::vector<ModuleTerm> terms) {
  const Ring& ring = F.ring();
  const PrimeField& K = ring.field();
  std::sort(terms.begin(), terms.end(), [&](const ModuleTerm& a, const ModuleTerm& b) { return canonical_less(ring, a, b); });
  std::vector<ModuleTerm> out;
  for (const auto& t : terms) {
    if (t.comp >= F.rank()) throw std::out_of_range("term component out of range");
    if (!out.empty() && out.back().comp == t.comp && out.back().mono == t.mono) {
      out.back().coeff = K.add(out.back().coeff, t.coeff);
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff % K.prime() != 0) {
      out.push_back({t.mono, t.comp, t.coeff % K.prime()});
    }
  }
  int d = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    int di = out[i].mono.degree() + F.twist(out[i].comp);
    if (i == 0) d = di;
    else if (di != d) throw std::invalid_argument("element is not homogeneous");
  }
  return FreeElement(ring, F.rank(), std::move(out), d);
}

Polynomial FreeElement::component(std::size_t k) const {
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    if (t.comp == k) ts.push_back({t.mono, t.coeff});
  }
  return Polynomial(ring_, std::move(ts));
}

std::vector<Polynomial> FreeElement::components() const {
  std::vector<std::vector<Term>> parts(rank_);
  for (const auto& t : terms_) parts[t.comp].push_back({t.mono, t.coeff});
  std::vector<Polynomial> out;
  out.reserve(rank_);
  for (auto& p : parts) out.emplace_back(ring_, std::move(p));
  return out;
}

FreeElement FreeElement::operator+(const FreeElement& o) const {
  if (rank_ != o.rank_ || !(ring_ == o.ring_)) throw std::invalid_argument("elements of different modules");
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (degree_ != o.degree_) throw std::invalid_argument("sum of elements of different degrees");
  const PrimeField& K = ring_.field();
  std::vector<ModuleTerm> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && canonical_less(ring_, terms_[i], o.terms_[j]))) {
      out.push_back(terms_[i++]);
    } else if (i == terms_.size() || canonical_less(ring_, o.terms_[j], terms_[i])) {
      out.push_back(o.terms_[j++]);
    } else {
      Coeff c = K.add(terms_[i].coeff, o.terms_[j].coeff);
      if (c != 0) out.push_back({terms_[i].mono, terms_[i].comp, c});
      ++i;
      ++j;
    }
  }
  return FreeElement(ring_, rank_, std::move(out), degree_);
}

FreeElement FreeElement::operator-(const FreeElement& o) const { return *this + o.scaled(ring_.field().neg(1)); }

FreeElement FreeElement::scaled(Coeff c) const {
  c %= ring_.prime();
  if (c == 0) return FreeElement(ring_, rank_, {}, 0);
  std::vector<ModuleTerm> out = terms_;
  for (auto& t : out) t.coeff = ring_.field().mul(t.coeff, c);
  return FreeElement(ring_, rank_, std::move(out), degree_);
}

FreeElement FreeElement::times_monomial(const Monomial& m, Coeff c) const {
  c %= ring_.prime();
  if (c == 0 || is_zero()) return FreeElement(ring_, rank_, {}, 0);
  std::vector<ModuleTerm> out = terms_;
  for (auto& t : out) {
    t.mono = t.mono * m;
    t.coeff = ring_.field().mul(t.coeff, c);
  }
  return FreeElement(ring_, rank_, std::move(out), degree_ + m.degree());
}

FreeElement FreeElement::times(const Polynomial& f) const {
  if (!(f.ring() == ring_)) throw std::invalid_argument("scalar over a different ring");
  if (!f.is_homogeneous()) throw std::invalid_argument("scalar is not homogeneous");
  FreeElement acc(ring_, rank_, {}, 0);
  for (const auto& t : f.terms()) acc = acc + times_monomial(t.mono, t.coeff);
  return acc;
}

bool FreeElement::operator==(const FreeElement& o) const {
  if (rank_ != o.rank_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& a = terms_[i];
    const auto& b = o.terms_[i];
    if (a.comp != b.comp || a.coeff != b.coeff || !(a.mono == b.mono)) return false;
  }
  return true;
}

std::string FreeElement::to_string() const {
  std::string s = "[";
  auto comps = components();
  for (std::size_t k = 0; k < comps.size(); ++k) {
    if (k) s += " | ";
    s += comps[k].to_string();
  }
  return s + "]";
}

// ---- Submodule ----

namespace detail {

struct SubmoduleCache {
  std::once_flag once;
  ModuleOrder order;
  std::vector<Vec> gb_vecs;
  std::vector<FreeElement> gb;
  std::vector<FreeElement> minimal;
};

}  // namespace detail

Submodule::Submodule(const GradedFreeModule& ambient, std::vector<FreeElement> generators)
    : ambient_(ambient), cache_(std::make_shared<detail::SubmoduleCache>()) {
  for (auto& g : generators) {
    if (g.rank() != ambient_.rank() || !(g.ring() == ambient_.ring())) {
      throw std::invalid_argument("generator does not live in the ambient module");
    }
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

Submodule Submodule::whole(const GradedFreeModule& ambient) {
  std::vector<FreeElement> gens;
  for (std::size_t k = 0; k < ambient.rank(); ++k) gens.push_back(FreeElement::basis(ambient, k));
  return Submodule(ambient, std::move(gens));
}

const detail::SubmoduleCache& Submodule::cache() const {
  std::call_once(cache_->once, [this] {
    auto& c = *cache_;
    c.order = detail::ModuleOrder::standard(ambient_);
    std::vector<detail::Vec> inputs;
    inputs.reserve(generators_.size());
    for (const auto& g : generators_) inputs.push_back(detail::to_vec(c.order, g));
    auto res = detail::buchberger(c.order, inputs);
    c.gb_vecs = std::move(res.basis);
    for (const auto& v : c.gb_vecs) c.gb.push_back(FreeElement::from_terms(ambient_, detail::to_canonical(c.order, v)));
    for (std::size_t k : res.minimal_inputs) c.minimal.push_back(generators_[k]);
  });
  return *cache_;
}

const std::vector<FreeElement>& Submodule::groebner_basis() const { return cache().gb; }

const std::vector<FreeElement>& Submodule::minimal_generators() const { return cache().minimal; }

std::vector<int> Submodule::minimal_generator_degrees() const {
  std::vector<int> out;
  for (const auto& g : minimal_generators()) out.push_back(g.degree());
  return out;
}

FreeElement Submodule::normal_form(const FreeElement& v) const {
  if (v.rank() != ambient_.rank() || !(v.ring() == ambient_.ring())) {
    throw std::invalid_argument("element does not live in the ambient module");
  }
  if (v.is_zero()) return v;
  const auto& c = cache();
  auto r = detail::reduce(c.order, c.gb_vecs, detail::to_vec(c.order, v));
  return FreeElement::from_terms(ambient_, detail::to_canonical(c.order, std::move(r)));
}

bool Submodule::contains(const Submodule& o) const {
  return std::all_of(o.generators_.begin(), o.generators_.end(), [this](const FreeElement& g) { return contains(g); });
}

bool Submodule::is_whole() const {
  for (std::size_t k = 0; k < ambient_.rank(); ++k) {
    if (!contains(FreeElement::basis(ambient_, k))) return false;
  }
  return true;
}

Submodule Submodule::operator+(const Submodule& o) const {
  if (!(ambient_ == o.ambient_)) throw std::invalid_argument("sum of submodules of different modules");
  std::vector<FreeElement> gens = generators_;
  gens.insert(gens.end(), o.generators_.begin(), o.generators_.end());
  return Submodule(ambient_, std::move(gens));
}

Submodule Submodule::times_max_ideal_power(int k) const {
  if (k < 0) throw std::invalid_argument("negative power of the maximal ideal");
  if (k == 0) return *this;
  auto monos = Monomial::all_of_degree(ambient_.ring().nvars(), k, ambient_.ring().order());
  std::vector<FreeElement> gens;
  for (const auto& g : minimal_generators()) {
    for (const auto& m : monos) gens.push_back(g.times_monomial(m));
  }
  return Submodule(ambient_, std::move(gens));
}

Submodule Submodule::substituted(const GradedFreeModule& target, const std::vector<Polynomial>& images) const {
  if (target.rank() != ambient_.rank()) throw std::invalid_argument("substitution target has a different rank");
  std::vector<FreeElement> gens;
  for (const auto& g : generators_) {
    std::vector<Polynomial> comps;
    for (const auto& f : g.components()) comps.push_back(f.substitute(images));
    gens.emplace_back(target, comps);
  }
  return Submodule(target, std::move(gens));
}

std::string Submodule::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) s += ", ";
    s += generators_[i].to_string();
  }
  return s + ">";
}

// ---- PresentedModule ----

PresentedModule::PresentedModule(GradedFreeModule free, Submodule relations)
    : free_(std::move(free)), relations_(std::move(relations)) {
  if (!(relations_.ambient() == free_)) throw std::invalid_argument("relations live in a different free module");
}

Submodule ideal(const Ring& ring, const std::vector<Polynomial>& generators) {
  GradedFreeModule R(ring, {0});
  std::vector<FreeElement> gens;
  for (const auto& f : generators) gens.emplace_back(R, std::vector<Polynomial>{f});
  return Submodule(R, std::move(gens));
}

PresentedModule PresentedModule::cyclic(const Ring& ring, const std::vector<Polynomial>& ideal_generators) {
  Submodule I = ideal(ring, ideal_generators);
  return PresentedModule(I.ambient(), I);
}

std::string PresentedModule::to_string() const {
  return "(" + free_.to_string() + ") / " + relations_.to_string();
}

// ---- text format ----

namespace {

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

long parse_int(std::string_view w, int line, int column) {
  long v = 0;
  auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size()) {
    throw ParseError("expected integer, got '" + std::string(w) + "'", line, column);
  }
  return v;
}

int column_of(std::string_view line, std::string_view word) {
  return static_cast<int>(word.data() - line.data()) + 1;
}

}  // namespace

PresentedModule parse_presented_module(std::string_view text) {
  std::optional<Ring> ring;
  std::optional<GradedFreeModule> free;
  std::vector<FreeElement> rels;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto words = split_words(line);
    if (words.empty() || words[0].front() == '#') continue;

    if (!ring) {
      if (words[0] != "ring") throw ParseError("expected 'ring <n> <p>'", lineno, column_of(line, words[0]));
      if (words.size() != 3) throw ParseError("'ring' takes 2 arguments", lineno, column_of(line, words[0]));
      long n = parse_int(words[1], lineno, column_of(line, words[1]));
      long p = parse_int(words[2], lineno, column_of(line, words[2]));
      try {
        ring = Ring(static_cast<int>(n), static_cast<std::uint32_t>(p));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lineno, column_of(line, words[1]));
      }
      continue;
    }
    if (!free) {
      if (words[0] != "free") throw ParseError("expected 'free <j1> ... <jm>'", lineno, column_of(line, words[0]));
      std::vector<int> twists;
      for (std::size_t i = 1; i < words.size(); ++i) {
        twists.push_back(static_cast<int>(parse_int(words[i], lineno, column_of(line, words[i]))));
      }
      free = GradedFreeModule(*ring, std::move(twists));
      continue;
    }
    std::size_t open = line.find('[');
    std::size_t close = line.rfind(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
      throw ParseError("expected generator '[f1 | ... | fm]'", lineno, column_of(line, words[0]));
    }
    std::string_view body = line.substr(open + 1, close - open - 1);
    std::vector<Polynomial> comps;
    std::size_t start = 0;
    while (true) {
      std::size_t bar = body.find('|', start);
      std::string_view piece = body.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
      int col = static_cast<int>(open + 1 + start) + 1;
      comps.push_back(parse_polynomial(*ring, piece, lineno, col));
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    try {
      rels.emplace_back(*free, comps);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineno, static_cast<int>(open) + 1);
    }
  }
  if (!ring) throw ParseError("missing 'ring' header", lineno, 1);
  if (!free) throw ParseError("missing 'free' line", lineno, 1);
  return PresentedModule(*free, Submodule(*free, std::move(rels)));
}

std::string format_presented_module(const PresentedModule& M) {
  std::ostringstream os;
  os << "ring " << M.ring().nvars() << " " << M.ring().prime() << "\n";
  os << "free";
  for (int j : M.free().twists()) os << " " << j;
  os << "\n";
  for (const auto& g : M.relations().generators()) os << g.to_string() << "\n";
  return os.str();
}

}  // namespace gd

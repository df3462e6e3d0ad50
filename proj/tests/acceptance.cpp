// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gammadepth/gamma.hpp"
#include "gammadepth/harness.hpp"
#include "gammadepth/resolution.hpp"
#include "gammadepth/twovar.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gd;
namespace h = gd::harness;

namespace {

constexpr std::uint64_t kCorpusSeed = 20240611;
constexpr int kTrials = 20;

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail, Clock::time_point start) {
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%s criterion %d (%s): %s [%.2fs]\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
  failures += !pass;
}

using Poly = std::vector<std::int64_t>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

void poly_add(Poly& a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

std::int64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// 1 + sum_{i=1}^{n} C(i+r-1, i-1) (1+t)^{i-1} t
Poly closed_form(int n, int r) {
  Poly p{1};
  for (int i = 1; i <= n; ++i) {
    Poly term{0, binom(i + r - 1, i - 1)};
    for (int k = 1; k < i; ++k) term = poly_mul(term, {1, 1});
    poly_add(p, term);
  }
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  return p;
}

PresentedModule power_quotient(int n, int r) {
  h::FamilyParams p;
  p.n = n;
  p.r = r;
  return h::generate_family("power-of-m", p).front().module;
}

// ---- criterion 1 ----

void poincare_family() {
  auto start = Clock::now();
  int cases = 0, bad = 0;
  std::string special;
  for (int n = 1; n <= 4; ++n) {
    for (int r = 0; r <= 3; ++r) {
      PresentedModule M = power_quotient(n, r);
      BettiTable b = minimal_resolution(M);
      Poly expect = closed_form(n, r);
      ++cases;
      if (b.poincare() != expect) {
        ++bad;
        std::printf("  n=%d r=%d: got %s, expected %s\n", n, r, poincare_string(b.poincare()).c_str(),
                    poincare_string(expect).c_str());
      }
      if (n == 3 && r == 2) {
        BettiTable syz;
        for (const auto& [ij, v] : b.entries())
          if (ij.first >= 1) syz.add(ij.first - 1, ij.second, v);
        bool ok = syz.poincare() == Poly{10, 15, 6} && graded_poincare_string(syz) == "u^3(10 + 15tu + 6t^2u^2)";
        if (!ok) ++bad;
        special = poincare_string(syz.poincare()) + ", " + graded_poincare_string(syz);
      }
    }
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  report(1, "Poincare family", bad == 0 && secs < 120,
         std::to_string(cases - bad) + "/" + std::to_string(cases) + " closed forms exact; m^3 in 3 variables: " +
             special,
         start);
}

// ---- criterion 2 ----

void order_dependence() {
  auto start = Clock::now();
  Ring R(2);
  PresentedModule M = h::generate_family("rm-ord-example", {}).front().module;
  auto form = [&](const char* s) { return LinearForm::from_polynomial(parse_polynomial(R, s)); };
  bool yx = is_gamma_sequence(M, {form("x2"), form("x1")}).verdict;
  bool xy = is_gamma_sequence(M, {form("x1"), form("x2")}).verdict;
  bool pm = is_gamma_sequence(M, {form("x1 + x2"), form("x1 - x2")}).verdict;
  bool mp = is_gamma_sequence(M, {form("x1 - x2"), form("x1 + x2")}).verdict;
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream os;
  os << "(y,x) " << yx << ", (x,y) " << xy << ", (x+y,x-y) " << pm << ", (x-y,x+y) " << mp;
  report(2, "order dependence", yx && !xy && pm && mp && secs < 5, os.str(), start);
}

// ---- the corpus ----

struct CorpusEntry {
  h::NamedObject obj;
  std::uint64_t seed = 0;
  std::optional<MainTheoremReport> main;
};

std::vector<CorpusEntry> build_corpus() {
  h::FamilyParams fp;
  fp.corpus = h::CorpusConfig{100, 2, 3, 1, 4, 1, 4, kCorpusSeed};
  auto ideals = h::generate_family("random-ideal", fp);
  fp.corpus.count = 25;
  fp.first_index = 100;
  auto modules = h::generate_family("random-module", fp);
  std::vector<CorpusEntry> out;
  std::uint64_t i = 0;
  for (auto* set : {&ideals, &modules})
    for (auto& o : *set) out.push_back(CorpusEntry{o, kCorpusSeed ^ i++, std::nullopt});
  return out;
}

void main_theorem(std::vector<CorpusEntry>& corpus) {
  auto start = Clock::now();
  h::parallel_for(static_cast<int>(corpus.size()), jobs(), [&](int i) {
    auto& e = corpus[static_cast<std::size_t>(i)];
    e.main = verify_main_theorem(e.obj.module, kTrials, e.seed);
  });
  int disagree = 0, cwl = 0, retried = 0, ideals = 0, modules = 0;
  for (const auto& e : corpus) {
    disagree += !e.main->agree;
    cwl += e.main->cwl;
    retried += e.main->retried;
    (e.obj.is_ideal ? ideals : modules) += 1;
    if (!e.main->agree) std::printf("  DISAGREE on\n%s", h::format_object(e.obj).c_str());
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream os;
  os << ideals << " ideals + " << modules << " modules, " << disagree << " disagreements, cwl true " << cwl
     << " / false " << corpus.size() - static_cast<std::size_t>(cwl) << ", retried " << retried;
  report(3, "main theorem corpus", disagree == 0 && ideals >= 100 && modules >= 25 && secs < 600, os.str(), start);
}

// (M_{i-1}, z_i) over R/(z_1..z_{i-1}) for each step of a witness.
std::vector<std::pair<PresentedModule, LinearForm>> witness_steps(const PresentedModule& M,
                                                                  const std::vector<LinearForm>& zs) {
  std::vector<std::pair<PresentedModule, LinearForm>> out;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    LinearQuotient q(M.ring(), std::vector<LinearForm>(zs.begin(), zs.begin() + static_cast<long>(i)));
    auto z = q.apply(zs[i]);
    if (!z) throw std::logic_error("witness forms are dependent");
    out.emplace_back(q.apply(M), *z);
  }
  return out;
}

// ---- criterion 4 ----

void splitting(const std::vector<CorpusEntry>& corpus) {
  auto start = Clock::now();
  struct Pair {
    PresentedModule M;
    LinearForm z;
    std::string origin;
  };
  std::vector<Pair> pairs;
  for (const auto& e : corpus) {
    auto steps = witness_steps(e.obj.module, e.main->witness.sequence);
    for (std::size_t i = 0; i < steps.size(); ++i)
      pairs.push_back(Pair{steps[i].first, steps[i].second, e.obj.name + " step " + std::to_string(i + 1)});
  }
  std::vector<std::optional<SplittingAudit>> audits(pairs.size());
  h::parallel_for(static_cast<int>(pairs.size()), jobs(), [&](int i) {
    auto k = static_cast<std::size_t>(i);
    audits[k] = splitting_audit(pairs[k].M, pairs[k].z);
  });
  const std::vector<std::string> required = {"betti", "poincare_syz", "poincare", "socle_degrees", "regularity"};
  int certified = 0, violations = 0, graded_violations = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& a = *audits[k];
    if (!a.precondition) {
      ++violations;
      std::printf("  %s: witness step is not certified gamma-regular\n", pairs[k].origin.c_str());
      continue;
    }
    ++certified;
    for (const auto& item : required) {
      if (!a.items.at(item)) {
        ++violations;
        std::printf("  %s: %s fails\n", pairs[k].origin.c_str(), item.c_str());
      }
    }
    graded_violations += !a.items.at("graded_poincare") + !a.items.at("graded_poincare_syz");
  }
  std::ostringstream os;
  os << certified << " certified pairs, " << violations << " violations of items betti/poincare/socle/regularity ("
     << graded_violations << " of the graded Poincare items)";
  report(4, "splitting identities", violations == 0 && certified >= 50, os.str(), start);
}

// ---- criterion 5 ----

void sequence_coherence(const std::vector<CorpusEntry>& corpus) {
  auto start = Clock::now();
  struct Outcome {
    bool full = false;
    bool identities = true;
    bool compared = false;
    bool same_alphas = true;
    std::string note;
  };
  std::vector<Outcome> out(corpus.size());
  h::parallel_for(static_cast<int>(corpus.size()), jobs(), [&](int i) {
    const auto& e = corpus[static_cast<std::size_t>(i)];
    auto& o = out[static_cast<std::size_t>(i)];
    const auto& w = e.main->witness;
    int n = e.obj.module.ring().nvars();
    if (w.depth != n) return;
    o.full = true;
    BettiTable b = minimal_resolution(e.obj.module);
    std::int64_t b1 = b.total(1), b2 = b.total(2), sum = 0, weighted = 0, c1 = 0;
    for (int k = 0; k < n; ++k) {
      sum += w.alphas[static_cast<std::size_t>(k)];
      weighted += (n - (k + 1)) * w.alphas[static_cast<std::size_t>(k)];
    }
    for (const auto& [Mbar, z] : witness_steps(e.obj.module, w.sequence)) {
      auto a = alpha(cmod(Mbar, 1), z);
      if (!a) {
        o.identities = false;
        o.note = "infinite alpha on C^1";
        return;
      }
      c1 += *a;
    }
    o.identities = b1 == sum && b2 == weighted && c1 == n * b1 - b2;
    if (!o.identities) o.note = "beta1 " + std::to_string(b1) + " beta2 " + std::to_string(b2);
    // A second, independent search.
    for (std::uint64_t attempt = 1; attempt <= 3 && !o.compared; ++attempt) {
      DepthWitness other = gamma_depth(e.obj.module, kTrials, derive_seed(e.seed, 0xA1FA0000 + attempt));
      if (other.depth != n || other.sequence == w.sequence) continue;
      o.compared = true;
      o.same_alphas = other.alphas == w.alphas;
    }
  });
  int full = 0, broken = 0, compared = 0, differ = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    full += out[i].full;
    compared += out[i].compared;
    if (!out[i].identities) {
      ++broken;
      std::printf("  %s: identities fail (%s)\n", corpus[i].obj.name.c_str(), out[i].note.c_str());
    }
    if (!out[i].same_alphas) {
      ++differ;
      std::printf("  %s: alpha lists differ\n", corpus[i].obj.name.c_str());
    }
  }
  std::ostringstream os;
  os << full << " full-length sequences, " << broken << " identity failures; alpha lists compared on " << compared
     << ", " << differ << " differ";
  report(5, "sequence criteria coherence", broken == 0 && differ == 0 && compared == full, os.str(), start);
}

// ---- criterion 6 ----

void socle_duality(const std::vector<CorpusEntry>& corpus) {
  auto start = Clock::now();
  std::vector<int> bad(corpus.size(), 0);
  h::parallel_for(static_cast<int>(corpus.size()), jobs(), [&](int i) {
    const auto& M = corpus[static_cast<std::size_t>(i)].obj.module;
    int n = M.ring().nvars();
    BettiTable b = minimal_resolution(M);
    GradedVectorSpaceDims soc = socle(M).dims;
    std::map<int, std::int64_t> top, shifted;
    for (const auto& [ij, v] : b.entries())
      if (ij.first == n) top[ij.second] = v;
    for (const auto& [j, v] : soc.dims()) shifted[j + n] = v;
    bad[static_cast<std::size_t>(i)] = top != shifted;
  });
  int total = std::accumulate(bad.begin(), bad.end(), 0);
  for (std::size_t i = 0; i < bad.size(); ++i)
    if (bad[i]) std::printf("  %s: top Betti numbers differ from the shifted socle\n", corpus[i].obj.name.c_str());
  report(6, "socle and top Betti numbers", total == 0,
         std::to_string(corpus.size()) + " modules, " + std::to_string(total) + " mismatches", start);
}

// ---- criterion 7 ----

void two_variables() {
  auto start = Clock::now();
  Ring R(2);
  std::mt19937_64 rng(kCorpusSeed);
  std::uniform_int_distribution<int> ng(2, 4), deg(1, 4), nt(1, 2);
  int checked = 0, formula_bad = 0, cwl = 0;
  while (checked < 50) {
    std::vector<Polynomial> gens;
    int k = ng(rng);
    for (int g = 0; g < k; ++g) gens.push_back(test::random_homogeneous(rng, R, deg(rng), nt(rng)));
    Submodule I = ideal(R, gens);
    if (I.is_zero() || I.is_whole()) continue;
    if (minimal_resolution(PresentedModule(I.ambient(), I)).length() != 2) continue;
    auto r = beta_formula_check(I, kTrials, derive_seed(kCorpusSeed, static_cast<std::uint64_t>(checked)));
    ++checked;
    cwl += r.cwl;
    if (!r.applicable || !r.agree || r.cwl != r.full_gamma_depth) {
      ++formula_bad;
      std::printf("  beta formula disagreement on %s\n", I.to_string().c_str());
    }
  }
  int built = 0, build_bad = 0;
  for (; built < 25; ++built) {
    auto parts = test::random_cwl_parts(rng, R);
    Submodule J = build_cwl_ideal(parts);
    PresentedModule M(J.ambient(), J);
    int d1 = parts.front().d, er = parts.back().e;
    auto dec = decompose_cwl_ideal(J);
    bool ok = dec.decomposition && dec.decomposition->verified && dec.decomposition->parts.size() == parts.size();
    for (std::size_t i = 0; ok && i < parts.size(); ++i) {
      const auto& p = dec.decomposition->parts[i];
      ok = p.d == parts[i].d && p.e == parts[i].e && p.f == parts[i].f.monic();
    }
    ok = ok && build_cwl_ideal(dec.decomposition->parts).same_as(J);
    ok = ok && static_cast<int>(J.minimal_generators().size()) == d1 - er + 1;
    ok = ok && socle(M).dims.total() == d1 - er;
    if (!ok) {
      ++build_bad;
      std::printf("  round trip fails on %s\n", J.to_string().c_str());
    }
  }
  std::ostringstream os;
  os << checked << " pd-2 ideals (" << cwl << " cwl), " << formula_bad << " disagreements; " << built
     << " built ideals, " << build_bad << " round-trip or dimension failures";
  report(7, "two-variable theorems", formula_bad == 0 && build_bad == 0, os.str(), start);
}

// ---- criterion 8 ----

void inequalities(const std::vector<CorpusEntry>& corpus) {
  auto start = Clock::now();
  struct Outcome {
    std::optional<CdReport> cd;
    std::optional<DeltaResult> delta;
  };
  std::vector<Outcome> out(corpus.size());
  h::parallel_for(static_cast<int>(corpus.size()), jobs(), [&](int i) {
    const auto& e = corpus[static_cast<std::size_t>(i)];
    auto& o = out[static_cast<std::size_t>(i)];
    o.cd = cd_invariant(e.obj.module, kTrials, e.seed);
    o.delta = delta_invariant(e.obj.module, -1, kTrials, e.seed);
  });
  int sum_bad = 0, syz_bad = 0, capped = 0, max_delta = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& o = out[i];
    const char* name = corpus[i].obj.name.c_str();
    if (!o.cd->sum_bound_holds) {
      ++sum_bad;
      std::printf("  %s: cd %d + gamma-depth %d exceeds n\n", name, o.cd->cd, o.cd->gamma_depth);
    }
    if (!o.cd->syzygy_depth_holds) {
      ++syz_bad;
      std::printf("  %s: gamma-depth of Syz1 %d < min(n, %d + 1)\n", name, o.cd->syzygy_gamma_depth,
                  o.cd->gamma_depth);
    }
    if (o.delta->cap_exceeded()) {
      ++capped;
      std::printf("  %s: delta not reached within cap %d\n", name, o.delta->cap);
    } else {
      max_delta = std::max(max_delta, *o.delta->delta);
    }
  }
  std::ostringstream os;
  os << corpus.size() << " instances: cd + gamma-depth bound fails " << sum_bad << ", syzygy depth growth fails "
     << syz_bad << ", delta over cap " << capped << " (largest delta " << max_delta << ")";
  report(8, "global inequalities", sum_bad == 0 && syz_bad == 0 && capped == 0, os.str(), start);
}

// ---- criterion 9 ----

void engine_oracle() {
  auto start = Clock::now();
  std::mt19937_64 rng(kCorpusSeed + 9);
  int slices = 0, dim_bad = 0, membership_bad = 0;
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 2;
    Ring R(n);
    std::vector<int> twists = trial % 3 == 0 ? std::vector<int>{0} : std::vector<int>{0, trial % 2};
    GradedFreeModule F(R, twists);
    std::uniform_int_distribution<int> ng(1, 4);
    Submodule U = test::random_submodule(rng, F, ng(rng), 3);
    auto hf = hilbert_function(U, 0, 8);
    for (int j = 0; j <= 8; ++j) {
      ++slices;
      if (hf[j] != oracle::dim_submodule(U, j)) {
        ++dim_bad;
        std::printf("  dim mismatch in degree %d for %s\n", j, U.to_string().c_str());
      }
    }
    LinearForm z = test::random_form(rng, R);
    std::vector<Polynomial> vars;
    for (int k = 0; k < n; ++k) vars.push_back(Polynomial::variable(R, k));
    Submodule C = colon_by_linear(U, z);
    Submodule Cm = colon_by_maximal(U);
    Submodule S = saturate(U);
    bool ok = C.contains(U) && Cm.contains(U) && S.contains(U) && S.contains(C) && S.contains(Cm);
    for (const auto& g : C.minimal_generators()) ok = ok && U.contains(g.times(z.to_polynomial()));
    for (const auto& g : Cm.minimal_generators())
      for (const auto& x : vars) ok = ok && U.contains(g.times(x));
    for (const auto& g : S.minimal_generators()) {
      bool killed = false;
      for (int k = 0; k <= 12 && !killed; ++k) killed = U.contains(Submodule(F, {g}).times_max_ideal_power(k));
      ok = ok && killed;
    }
    ok = ok && colon_by_maximal(S).same_as(S);
    for (int j = 0; j <= 6; ++j) {
      ok = ok && oracle::dim_submodule(C, j) == oracle::dim_colon(U, {z.to_polynomial()}, j);
      ok = ok && oracle::dim_submodule(Cm, j) == oracle::dim_colon(U, vars, j);
    }
    if (!ok) {
      ++membership_bad;
      std::printf("  colon or saturation mismatch for %s\n", U.to_string().c_str());
    }
  }
  std::ostringstream os;
  os << "20 submodules, " << slices << " degree slices, " << dim_bad << " dimension mismatches, " << membership_bad
     << " colon/saturation mismatches";
  report(9, "engine oracle", dim_bad == 0 && membership_bad == 0, os.str(), start);
}

}  // namespace

int main() {
  auto start = Clock::now();
  poincare_family();
  order_dependence();
  std::vector<CorpusEntry> corpus = build_corpus();
  main_theorem(corpus);
  splitting(corpus);
  sequence_coherence(corpus);
  socle_duality(corpus);
  two_variables();
  inequalities(corpus);
  engine_oracle();
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%d of 9 criteria failed [%.2fs total]\n", failures, secs);
  return failures == 0 ? 0 : 1;
}

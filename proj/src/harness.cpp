#include "gammadepth/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gammadepth/gamma.hpp"
#include "gammadepth/resolution.hpp"
#include "gammadepth/twovar.hpp"
#include "json.hpp"

namespace gd::harness {

using json = nlohmann::json;

namespace {

// ---- lexical helpers ----

struct Word {
  std::string_view text;
  int col;  // 1-based
};

std::vector<Word> split_words(std::string_view line) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

long parse_long(std::string_view s, int line, int col) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError("expected an integer, got '" + std::string(s) + "'", line, col);
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Column (1-based) of the first non-space character of piece, which starts at offset in its line.
int piece_column(std::string_view piece, std::size_t offset) {
  std::size_t k = 0;
  while (k < piece.size() && std::isspace(static_cast<unsigned char>(piece[k]))) ++k;
  return static_cast<int>(offset + k) + 1;
}

// ---- command table ----

struct CommandSpec {
  int objects;
  std::set<std::string> keys;
  std::set<std::string> required;
};

const std::map<std::string, CommandSpec>& command_table() {
  static const std::map<std::string, CommandSpec> table = {
      {"betti", {1, {}, {}}},
      {"resolve", {1, {}, {}}},
      {"socle", {1, {}, {}}},
      {"hilbert", {1, {"lo", "hi"}, {}}},
      {"gamma-test", {1, {"z"}, {"z"}}},
      {"gamma-seq", {1, {"seq"}, {"seq"}}},
      {"gamma-depth", {1, {"seed", "trials"}, {}}},
      {"hat-gamma-test", {1, {"z", "bound"}, {"z"}}},
      {"cwl", {1, {}, {}}},
      {"verify-main", {1, {"seed", "trials"}, {}}},
      {"splitting-audit", {1, {"z"}, {"z"}}},
      {"delta", {1, {"cap", "seed", "trials"}, {}}},
      {"cd", {1, {"seed", "trials"}, {}}},
      {"twovar-check", {1, {"seed", "trials"}, {}}},
      {"twovar-decompose", {1, {}, {}}},
      {"twovar-build", {0, {"parts"}, {"parts"}}},
      {"corpus-verify", {0, {"count", "n", "nmin", "nmax", "gens", "deg", "modules", "seed", "trials"}, {}}},
  };
  return table;
}

const std::set<std::string> kIntegerKeys = {"lo",  "hi",   "bound", "cap",  "seed",   "trials",
                                            "count", "n", "nmin",  "nmax", "gens", "deg", "modules"};

LinearForm parse_form(const Ring& R, std::string_view text, int line, int col) {
  Polynomial f = parse_polynomial(R, text, line, col);
  try {
    return LinearForm::from_polynomial(f);
  } catch (const std::invalid_argument&) {
    throw ParseError("'" + std::string(text) + "' is not a nonzero linear form", line, col);
  }
}

std::vector<LinearForm> parse_form_list(const Ring& R, std::string_view text, int line, int col) {
  std::vector<LinearForm> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_form(R, piece, line, col + static_cast<int>(start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// "d:f;d:f;..." with e = deg f.
std::vector<CwlPart> parse_parts(const Ring& R, std::string_view text, int line, int col) {
  std::vector<CwlPart> out;
  std::size_t start = 0;
  while (true) {
    std::size_t semi = text.find(';', start);
    std::string_view piece = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    int pcol = col + static_cast<int>(start);
    std::size_t colon = piece.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'd:f' in parts", line, pcol);
    int d = static_cast<int>(parse_long(piece.substr(0, colon), line, pcol));
    Polynomial f = parse_polynomial(R, piece.substr(colon + 1), line, pcol + static_cast<int>(colon) + 1);
    if (f.is_zero() || !f.is_homogeneous()) throw ParseError("part needs a nonzero form", line, pcol);
    out.push_back(CwlPart{d, f.degree(), f});
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return out;
}

void check_option_value(const Ring& R, const std::string& key, std::string_view value, int line, int col) {
  if (kIntegerKeys.count(key)) {
    parse_long(value, line, col);
  } else if (key == "z") {
    parse_form(R, value, line, col);
  } else if (key == "seq") {
    parse_form_list(R, value, line, col);
  } else if (key == "parts") {
    parse_parts(R, value, line, col);
  }
}

// ---- object parsing ----

Submodule parse_ideal_generators(const Ring& R, std::string_view body, std::size_t offset, int line) {
  std::vector<Polynomial> gens;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = body.find(',', start);
    std::string_view piece = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    int col = piece_column(piece, offset + start);
    if (trim(piece).empty()) throw ParseError("empty generator", line, col);
    Polynomial f = parse_polynomial(R, piece, line, static_cast<int>(offset + start) + 1);
    if (!f.is_homogeneous()) throw ParseError("generator is not homogeneous", line, col);
    gens.push_back(std::move(f));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ideal(R, gens);
}

std::vector<FreeElement> parse_relations(const GradedFreeModule& F, std::string_view body, std::size_t offset,
                                         int line) {
  std::vector<FreeElement> rels;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
  };
  auto col = [&](std::size_t k) { return static_cast<int>(offset + k) + 1; };
  skip();
  if (i == body.size()) throw ParseError("'rels' needs at least one relation", line, col(i));
  while (true) {
    skip();
    if (i >= body.size() || body[i] != '[') throw ParseError("expected '['", line, col(i));
    std::size_t open = i;
    std::size_t close = body.find(']', open);
    if (close == std::string_view::npos) throw ParseError("missing ']'", line, col(open));
    std::string_view inner = body.substr(open + 1, close - open - 1);
    std::vector<Polynomial> comps;
    std::size_t start = 0;
    while (true) {
      std::size_t bar = inner.find('|', start);
      std::string_view piece = inner.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
      int pcol = piece_column(piece, offset + open + 1 + start);
      if (trim(piece).empty()) throw ParseError("empty entry", line, pcol);
      comps.push_back(parse_polynomial(F.ring(), piece, line, static_cast<int>(offset + open + 1 + start) + 1));
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    if (comps.size() != F.rank()) {
      throw ParseError("relation has " + std::to_string(comps.size()) + " entries, module has rank " +
                           std::to_string(F.rank()),
                       line, col(open));
    }
    try {
      rels.emplace_back(F, comps);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line, col(open));
    }
    i = close + 1;
    skip();
    if (i == body.size()) break;
    if (body[i] != ',') throw ParseError("expected ',' between relations", line, col(i));
    ++i;
  }
  return rels;
}

// ---- formatting ----

std::string format_ring(const Ring& R) {
  return "ring " + std::to_string(R.nvars()) + " " + std::to_string(R.prime()) + "\n";
}

std::string format_object_line(const NamedObject& obj) {
  const Submodule& U = obj.module.relations();
  std::string s;
  if (obj.is_ideal) {
    s = "ideal " + obj.name + " =";
    const auto& gens = U.generators();
    if (gens.empty()) return s + " 0\n";
    for (std::size_t k = 0; k < gens.size(); ++k) s += (k ? ", " : " ") + gens[k].component(0).to_string();
    return s + "\n";
  }
  s = "module " + obj.name + " free";
  for (int t : obj.module.free().twists()) s += " " + std::to_string(t);
  const auto& gens = U.generators();
  if (!gens.empty()) {
    s += " rels";
    for (std::size_t k = 0; k < gens.size(); ++k) s += (k ? ", " : " ") + gens[k].to_string();
  }
  return s + "\n";
}

std::string format_command(const Command& c) {
  std::string s = "cmd " + c.name;
  for (const auto& o : c.objects) s += " " + o;
  for (const auto& [k, v] : c.options) s += " " + k + "=" + v;
  return s + "\n";
}

// ---- random families ----

Coeff random_unit(std::mt19937_64& rng, const Ring& R) {
  return std::uniform_int_distribution<Coeff>(1, R.prime() - 1)(rng);
}

Monomial random_monomial(std::mt19937_64& rng, int n, int degree) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  std::uniform_int_distribution<int> var(0, n - 1);
  for (int k = 0; k < degree; ++k) ++e[static_cast<std::size_t>(var(rng))];
  return Monomial(n, e);
}

Polynomial random_form(std::mt19937_64& rng, const Ring& R, int degree) {
  std::uniform_int_distribution<int> nterms(1, 3);
  while (true) {
    std::vector<Term> ts;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) ts.push_back({random_monomial(rng, R.nvars(), degree), random_unit(rng, R)});
    Polynomial f(R, std::move(ts));
    if (!f.is_zero()) return f;
  }
}

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

NamedObject random_ideal(const CorpusConfig& c, int index) {
  std::mt19937_64 rng(c.seed ^ static_cast<std::uint64_t>(index));
  Ring R(pick(rng, c.n_min, c.n_max), c.prime);
  int k = pick(rng, c.gens_min, c.gens_max);
  std::vector<Polynomial> gens;
  for (int g = 0; g < k; ++g) gens.push_back(random_form(rng, R, pick(rng, c.deg_min, c.deg_max)));
  return NamedObject{"I" + std::to_string(index), true, PresentedModule(GradedFreeModule(R, {0}), ideal(R, gens))};
}

// Rank 2, twists (0, t); every entry of every relation lies in m.
NamedObject random_module(const CorpusConfig& c, int index) {
  std::mt19937_64 rng(c.seed ^ static_cast<std::uint64_t>(index));
  Ring R(pick(rng, c.n_min, c.n_max), c.prime);
  int t = c.deg_max >= 2 ? pick(rng, 0, 1) : 0;
  GradedFreeModule F(R, {0, t});
  int k = pick(rng, c.gens_min, c.gens_max);
  std::vector<FreeElement> rels;
  while (static_cast<int>(rels.size()) < k) {
    int D = pick(rng, std::max(t + 1, c.deg_min), std::max(t + 1, c.deg_max));
    std::vector<Polynomial> comps;
    bool nonzero = false;
    for (int slot = 0; slot < 2; ++slot) {
      int d = D - F.twist(static_cast<std::size_t>(slot));
      bool zero = pick(rng, 0, 2) == 0;
      comps.push_back(zero ? Polynomial(R) : random_form(rng, R, d));
      nonzero |= !zero;
    }
    if (!nonzero) continue;
    rels.emplace_back(F, comps);
  }
  return NamedObject{"M" + std::to_string(index), false, PresentedModule(F, Submodule(F, std::move(rels)))};
}

// ---- reporting helpers ----

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json jdeg(const Degree& d) { return d.is_finite() ? json(d.value()) : json(d.to_string()); }

json jdims(const GradedVectorSpaceDims& g) {
  json a = json::array();
  for (const auto& [j, v] : g.dims()) a.push_back({j, v});
  return a;
}

json jalphas(const std::vector<std::optional<std::int64_t>>& as) {
  json a = json::array();
  for (const auto& v : as) a.push_back(v ? json(*v) : json("inf"));
  return a;
}

json jforms(const std::vector<LinearForm>& zs) {
  json a = json::array();
  for (const auto& z : zs) a.push_back(z.to_string());
  return a;
}

std::string list_forms(const Ring& R, const std::vector<LinearForm>& zs) {
  std::string s = "(";
  for (std::size_t k = 0; k < zs.size(); ++k) s += (k ? ", " : "") + pretty(R, zs[k].to_string());
  return s + ")";
}

template <class T>
std::string list_ints(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + std::to_string(v[k]);
  return s + "]";
}

std::string opt_int(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : "inf"; }

const char* tf(bool b) { return b ? "true" : "false"; }

json main_report_json(const NamedObject& obj, const MainTheoremReport& r) {
  return json{{"name", obj.name},
              {"instance", format_object(obj)},
              {"cwl", r.cwl},
              {"gamma_depth", r.witness.depth},
              {"n", obj.module.ring().nvars()},
              {"witness", jforms(r.witness.sequence)},
              {"alphas", r.witness.alphas},
              {"agree", r.agree},
              {"retried", r.retried},
              {"seed", r.seed}};
}

std::string main_report_line(const NamedObject& obj, const MainTheoremReport& r) {
  const Ring& R = obj.module.ring();
  std::ostringstream os;
  os << obj.name << ": cwl(Syz1) " << tf(r.cwl) << ", gamma-depth " << r.witness.depth << " of " << R.nvars()
     << ", witness " << list_forms(R, r.witness.sequence) << ", alphas " << list_ints(r.witness.alphas) << ": "
     << (r.agree ? "AGREE" : "DISAGREE") << "\n";
  if (!r.agree) os << format_object(obj);
  return os.str();
}

std::string numerator_string(const HilbertSeries& h) {
  std::string s;
  for (std::size_t k = 0; k < h.coeffs.size(); ++k) {
    std::int64_t c = h.coeffs[k];
    if (c == 0) continue;
    int e = h.offset + static_cast<int>(k);
    std::string mag = std::to_string(c < 0 ? -c : c);
    std::string mono = e == 0 ? "" : (e == 1 ? "u" : "u^" + std::to_string(e));
    std::string term = (mono.empty() || mag != "1") ? mag + mono : mono;
    if (s.empty()) {
      s = (c < 0 ? "-" : "") + term;
    } else {
      s += (c < 0 ? " - " : " + ") + term;
    }
  }
  return s.empty() ? "0" : s;
}

// ---- dispatch ----

class Runner {
 public:
  Runner(const Command& cmd, const InstanceFile& inst, const RunOptions& opts) : cmd_(cmd), inst_(inst), opts_(opts) {
    out_["command"] = cmd.name;
  }

  CommandResult run() {
    try {
      auto it = command_table().find(cmd_.name);
      if (it == command_table().end()) throw UsageError("unknown command '" + cmd_.name + "'");
      if (static_cast<int>(cmd_.objects.size()) != it->second.objects) {
        throw UsageError("'" + cmd_.name + "' takes " + std::to_string(it->second.objects) + " object(s)");
      }
      for (const auto& key : it->second.required) {
        if (!cmd_.option(key)) throw UsageError("'" + cmd_.name + "' needs " + key + "=...");
      }
      if (!cmd_.objects.empty()) {
        obj_ = inst_.find(cmd_.objects.front());
        if (!obj_) throw UsageError("undefined object '" + cmd_.objects.front() + "'");
        out_["object"] = obj_->name;
      }
      dispatch();
    } catch (const UsageError& e) {
      fail(e.what());
    } catch (const ParseError& e) {
      fail(e.what());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    } catch (const std::exception& e) {
      fail(std::string("internal error: ") + e.what());
    }
    out_["status"] = status_;
    return CommandResult{status_, text_.str(), out_.dump(2)};
  }

 private:
  void fail(const std::string& msg) {
    status_ = 2;
    out_["error"] = msg;
    text_ << "error: " << cmd_.name << ": " << msg << "\n";
  }

  void verdict(bool agree) {
    out_["agree"] = agree;
    if (agree) return;
    status_ = std::max(status_, 1);
    std::string instance = obj_ ? format_object(*obj_) : format_instance(inst_);
    out_["instance"] = instance;
    text_ << "DISAGREE; instance:\n" << instance;
  }

  const PresentedModule& M() const { return obj_->module; }
  const Ring& ring() const { return obj_ ? obj_->module.ring() : inst_.ring; }
  std::string show(const std::string& s) const { return pretty(ring(), s); }

  std::optional<long> int_option(const std::string& key) const {
    const std::string* v = cmd_.option(key);
    if (!v) return std::nullopt;
    return parse_long(*v, cmd_.line, 1);
  }
  std::uint64_t seed() const {
    auto v = int_option("seed");
    return v ? static_cast<std::uint64_t>(*v) : opts_.seed;
  }
  int trials() const {
    auto v = int_option("trials");
    int t = v ? static_cast<int>(*v) : opts_.trials;
    if (t < 1) throw UsageError("trials must be positive");
    return t;
  }
  LinearForm z() const { return parse_form(ring(), *cmd_.option("z"), cmd_.line, 1); }

  const Submodule& plane_ideal() const {
    if (!obj_->is_ideal) throw UsageError("'" + cmd_.name + "' needs an ideal");
    if (ring().nvars() != 2) throw UsageError("'" + cmd_.name + "' needs a ring in two variables");
    return M().relations();
  }

  void dispatch() {
    const std::string& c = cmd_.name;
    if (c == "betti") return betti();
    if (c == "resolve") return resolve_cmd();
    if (c == "socle") return socle_cmd();
    if (c == "hilbert") return hilbert();
    if (c == "gamma-test") return gamma_test();
    if (c == "gamma-seq") return gamma_seq();
    if (c == "gamma-depth") return gamma_depth_cmd();
    if (c == "hat-gamma-test") return hat_gamma();
    if (c == "cwl") return cwl();
    if (c == "verify-main") return verify_main();
    if (c == "splitting-audit") return splitting();
    if (c == "delta") return delta();
    if (c == "cd") return cd();
    if (c == "twovar-check") return twovar_check();
    if (c == "twovar-decompose") return twovar_decompose();
    if (c == "twovar-build") return twovar_build();
    if (c == "corpus-verify") return corpus();
  }

  void betti() {
    BettiTable b = minimal_resolution(M());
    json entries = json::array();
    for (const auto& [ij, v] : b.entries()) entries.push_back({{"i", ij.first}, {"j", ij.second}, {"value", v}});
    BettiTable syz;
    for (const auto& [ij, v] : b.entries())
      if (ij.first >= 1) syz.add(ij.first - 1, ij.second, v);
    out_["betti"] = entries;
    out_["poincare"] = b.poincare();
    out_["syzygy_poincare"] = syz.poincare();
    out_["syzygy_graded"] = graded_poincare_string(syz);
    out_["regularity"] = jdeg(b.regularity());
    text_ << "betti " << obj_->name << "\n"
          << b.to_text() << "poincare: " << poincare_string(b.poincare()) << "\n"
          << "syzygy poincare: " << poincare_string(syz.poincare()) << "\n"
          << "syzygy graded: " << graded_poincare_string(syz) << "\n"
          << "regularity: " << b.regularity() << "\n";
  }

  void resolve_cmd() {
    Resolution res = resolve(M());
    json frees = json::array(), syzs = json::array();
    text_ << "resolve " << obj_->name << "\n";
    for (std::size_t i = 0; i < res.free.size(); ++i) {
      frees.push_back(res.free[i].twists());
      text_ << "F" << i << " = " << res.free[i].to_string() << "\n";
    }
    for (std::size_t i = 0; i < res.syzygies.size(); ++i) {
      const auto& gens = res.syzygies[i].minimal_generators();
      json g = json::array();
      text_ << "Syz" << i + 1 << ": " << gens.size() << " generator(s)\n";
      for (const auto& e : gens) {
        g.push_back(e.to_string());
        text_ << "  " << show(e.to_string()) << "\n";
      }
      syzs.push_back(g);
    }
    out_["free"] = frees;
    out_["syzygies"] = syzs;
  }

  void socle_cmd() {
    Subquotient s = socle(M());
    Subquotient h = local_cohomology_zero(M());
    out_["socle"] = jdims(s.dims);
    out_["socle_dim"] = s.dims.total();
    out_["socle_deg"] = jdeg(s.dims.deg());
    out_["torsion"] = jdims(h.dims);
    text_ << "socle " << obj_->name << ": " << s.dims.to_string() << " (total " << s.dims.total() << ", deg "
          << s.dims.deg() << ")\n"
          << "torsion H0: " << h.dims.to_string() << "\n";
  }

  void hilbert() {
    HilbertSeries h = hilbert_series(M());
    const auto& tw = M().free().twists();
    int lo = tw.empty() ? 0 : *std::min_element(tw.begin(), tw.end());
    if (auto v = int_option("lo")) lo = static_cast<int>(*v);
    int hi = lo + 10;
    if (auto v = int_option("hi")) hi = static_cast<int>(*v);
    if (hi < lo) throw UsageError("hi < lo");
    auto values = h.expand(lo, hi);
    auto len = h.finite_length();
    out_["lo"] = lo;
    out_["hi"] = hi;
    out_["values"] = values;
    out_["numerator"] = {{"offset", h.offset}, {"coeffs", h.coeffs}};
    out_["nvars"] = h.nvars;
    out_["length"] = len ? json(*len) : json("inf");
    text_ << "hilbert " << obj_->name << ": (" << numerator_string(h) << ") / (1 - u)^" << h.nvars << "\n"
          << "H(" << lo << ".." << hi << ") = " << list_ints(values) << "\n"
          << "length: " << opt_int(len) << "\n";
  }

  void gamma_test() {
    GammaCertificate c = is_gamma_regular(M(), z());
    out_["z"] = c.z.to_string();
    out_["verdict"] = c.verdict;
    out_["beta1"] = c.beta1;
    out_["alpha"] = c.alpha ? json(*c.alpha) : json("inf");
    out_["beta1_bar"] = c.beta1_bar;
    out_["criteria"] = {c.crit_ii, c.crit_iii, c.crit_iv};
    text_ << "gamma-test " << obj_->name << " z=" << show(c.z.to_string()) << ": "
          << (c.verdict ? "gamma-regular" : "not gamma-regular") << " (beta1 " << c.beta1 << ", alpha "
          << opt_int(c.alpha) << ", beta1 of quotient " << c.beta1_bar << "; criteria " << tf(c.crit_ii) << "/"
          << tf(c.crit_iii) << "/" << tf(c.crit_iv) << ")\n";
    verdict(c.agreement());
  }

  void gamma_seq() {
    auto zs = parse_form_list(ring(), *cmd_.option("seq"), cmd_.line, 1);
    SequenceResult r = is_gamma_sequence(M(), zs);
    out_["sequence"] = jforms(zs);
    out_["verdict"] = r.verdict;
    out_["alphas"] = jalphas(r.alphas);
    out_["beta1"] = r.beta1;
    out_["beta1_last"] = r.beta1_last;
    out_["stepwise"] = r.stepwise;
    std::string as;
    for (std::size_t k = 0; k < r.alphas.size(); ++k) as += (k ? ", " : "") + opt_int(r.alphas[k]);
    text_ << "gamma-seq " << obj_->name << " " << list_forms(ring(), zs) << ": "
          << (r.verdict ? "gamma-sequence" : "not a gamma-sequence") << " (alphas [" << as << "], beta1 " << r.beta1
          << ", beta1 of last quotient " << r.beta1_last << ")\n";
    verdict(r.agreement);
  }

  void gamma_depth_cmd() {
    DepthWitness w = gamma_depth(M(), trials(), seed());
    out_["gamma_depth"] = w.depth;
    out_["n"] = ring().nvars();
    out_["witness"] = jforms(w.sequence);
    out_["alphas"] = w.alphas;
    out_["trials_used"] = w.trials_used;
    out_["seed"] = w.seed;
    text_ << "gamma-depth " << obj_->name << ": " << w.depth << " of " << ring().nvars() << ", witness "
          << list_forms(ring(), w.sequence) << ", alphas " << list_ints(w.alphas) << "\n";
    verdict(w.verified);
  }

  void hat_gamma() {
    int bound = -1;
    if (auto v = int_option("bound")) bound = static_cast<int>(*v);
    LinearForm zf = z();
    HatGammaResult r = is_hat_gamma_regular(M(), zf, bound);
    json per = json::array();
    for (const auto& [d, ok] : r.per_degree) per.push_back({d, ok});
    out_["z"] = zf.to_string();
    out_["verdict"] = r.verdict;
    out_["per_degree"] = per;
    out_["strongly_m_full_within_bound"] = r.strongly_m_full_within_bound;
    out_["bound"] = r.bound;
    text_ << "hat-gamma-test " << obj_->name << " z=" << show(zf.to_string()) << ": "
          << (r.verdict ? "hat-gamma-regular" : "not hat-gamma-regular") << " (strongly m-full up to " << r.bound
          << ": " << tf(r.strongly_m_full_within_bound) << ")\n";
    verdict(r.agreement());
  }

  void cwl() {
    CwlReport r = is_componentwise_linear(first_syzygy(M()));
    json regs = json::array();
    std::string rs;
    for (const auto& [j, reg] : r.regularity) {
      regs.push_back({j, jdeg(reg)});
      rs += (rs.empty() ? "" : ", ") + std::to_string(j) + ":" + reg.to_string();
    }
    out_["cwl"] = r.verdict;
    out_["regularity"] = regs;
    text_ << "cwl " << obj_->name << ": Syz1 " << (r.verdict ? "is" : "is not")
          << " componentwise linear (component regularities " << rs << ")\n";
  }

  void verify_main() {
    MainTheoremReport r = verify_main_theorem(M(), trials(), seed());
    json j = main_report_json(*obj_, r);
    for (auto it = j.begin(); it != j.end(); ++it) out_[it.key()] = it.value();
    text_ << "verify-main " << main_report_line(*obj_, r);
    if (!r.agree) status_ = std::max(status_, 1);
  }

  void splitting() {
    LinearForm zf = z();
    SplittingAudit a = splitting_audit(M(), zf);
    out_["z"] = zf.to_string();
    out_["precondition"] = a.precondition;
    if (!a.precondition) {
      throw UsageError("precondition violated: " + show(zf.to_string()) + " is not gamma-regular on " + obj_->name);
    }
    json items = json::object();
    text_ << "splitting-audit " << obj_->name << " z=" << show(zf.to_string()) << "\n";
    for (const auto& [k, ok] : a.items) {
      items[k] = ok;
      text_ << "  " << k << ": " << (ok ? "holds" : "FAILS") << "\n";
    }
    out_["items"] = items;
    verdict(a.all_hold());
  }

  void delta() {
    std::optional<long> cap = int_option("cap");
    if (!cap && opts_.cap) cap = *opts_.cap;
    DeltaResult r = delta_invariant(M(), cap ? static_cast<int>(*cap) : -1, trials(), seed());
    out_["delta"] = r.delta ? json(*r.delta) : json(nullptr);
    out_["cap"] = r.cap;
    out_["default_cap"] = !cap.has_value();
    text_ << "delta " << obj_->name << ": "
          << (r.delta ? std::to_string(*r.delta) : "not reached within cap " + std::to_string(r.cap)) << "\n";
    // A user cap may legitimately be too small; the default one may not.
    if (!cap) verdict(!r.cap_exceeded());
  }

  void cd() {
    CdReport r = cd_invariant(M(), trials(), seed());
    out_["cd"] = r.cd;
    out_["gamma_depth"] = r.gamma_depth;
    out_["syzygy_gamma_depth"] = r.syzygy_gamma_depth;
    out_["sum_bound_holds"] = r.sum_bound_holds;
    out_["syzygy_depth_holds"] = r.syzygy_depth_holds;
    text_ << "cd " << obj_->name << ": " << r.cd << " (gamma-depth " << r.gamma_depth << ", of Syz1 "
          << r.syzygy_gamma_depth << ")\n";
    verdict(r.sum_bound_holds && r.syzygy_depth_holds);
  }

  void twovar_check() {
    BetaFormulaReport r = beta_formula_check(plane_ideal(), trials(), seed());
    out_["pd"] = r.pd;
    out_["applicable"] = r.applicable;
    out_["cwl"] = r.cwl;
    out_["full_gamma_depth"] = r.full_gamma_depth;
    text_ << "twovar-check " << obj_->name << ": pd " << r.pd;
    if (r.applicable) {
      out_["beta1"] = r.beta1;
      out_["indeg_generators"] = r.indeg_generators;
      out_["indeg_torsion"] = jdeg(r.indeg_torsion);
      out_["formula_holds"] = r.formula_holds;
      text_ << ", beta1 " << r.beta1 << ", indeg " << r.indeg_generators << ", indeg of torsion "
            << r.indeg_torsion << ", formula " << (r.formula_holds ? "holds" : "fails");
    } else {
      text_ << ", formula not applicable";
    }
    text_ << ", gamma-depth 2: " << tf(r.full_gamma_depth) << ", cwl: " << tf(r.cwl) << "\n";
    verdict((!r.applicable || r.agree) && r.cwl == r.full_gamma_depth);
  }

  static json parts_json(const std::vector<CwlPart>& parts) {
    json a = json::array();
    for (const auto& p : parts) a.push_back({{"d", p.d}, {"e", p.e}, {"f", p.f.to_string()}});
    return a;
  }

  std::string parts_text(const std::vector<CwlPart>& parts) const {
    std::string s;
    for (const auto& p : parts) {
      s += (s.empty() ? "" : " + ") + std::string("m^") + std::to_string(p.d - p.e) + "(" + show(p.f.to_string()) +
           ")";
    }
    return s;
  }

  void twovar_decompose() {
    DecomposeResult d = decompose_cwl_ideal(plane_ideal());
    if (!d.decomposition) {
      out_["refusal"] = d.refusal;
      text_ << "twovar-decompose " << obj_->name << ": refused, " << d.refusal << "\n";
      return;
    }
    out_["parts"] = parts_json(d.decomposition->parts);
    out_["verified"] = d.decomposition->verified;
    text_ << "twovar-decompose " << obj_->name << ": " << parts_text(d.decomposition->parts) << "\n";
    verdict(d.decomposition->verified);
  }

  void twovar_build() {
    if (inst_.ring.nvars() != 2) throw UsageError("'twovar-build' needs a ring in two variables");
    auto parts = parse_parts(inst_.ring, *cmd_.option("parts"), cmd_.line, 1);
    std::string bad = check_parts(parts);
    if (!bad.empty()) throw UsageError("malformed parts: " + bad);
    Submodule J = build_cwl_ideal(parts);
    const auto& mins = J.minimal_generators();
    PresentedModule Q(J.ambient(), J);
    std::int64_t soc = socle(Q).dims.total();
    int expect = parts.front().d - parts.back().e;
    DecomposeResult back = decompose_cwl_ideal(J);
    bool round = back.decomposition && back.decomposition->verified &&
                 back.decomposition->parts.size() == parts.size();
    for (std::size_t i = 0; round && i < parts.size(); ++i) {
      const auto& p = back.decomposition->parts[i];
      round = p.d == parts[i].d && p.e == parts[i].e && p.f == parts[i].f.monic();
    }
    json gens = json::array();
    text_ << "twovar-build " << parts_text(parts) << ":";
    for (std::size_t k = 0; k < mins.size(); ++k) {
      gens.push_back(mins[k].component(0).to_string());
      text_ << (k ? ", " : " ") << show(mins[k].component(0).to_string());
    }
    text_ << "\n  minimal generators " << mins.size() << " (expected " << expect + 1 << "), socle " << soc
          << " (expected " << expect << "), round trip " << (round ? "ok" : "FAILS") << "\n";
    out_["parts"] = parts_json(parts);
    out_["generators"] = gens;
    out_["socle_dim"] = soc;
    out_["round_trip"] = round;
    bool ok = round && static_cast<int>(mins.size()) == expect + 1 && soc == expect;
    if (!ok) {
      InstanceFile witness{inst_.ring, {NamedObject{"I", true, Q}}, {cmd_}};
      out_["instance"] = format_instance(witness);
    }
    verdict(ok);
  }

  void corpus() {
    CorpusSpec spec;
    CorpusConfig& c = spec.config;
    c.prime = inst_.ring.prime();
    c.seed = seed();
    if (auto v = int_option("count")) c.count = static_cast<int>(*v);
    if (auto v = int_option("n")) c.n_min = c.n_max = static_cast<int>(*v);
    if (auto v = int_option("nmin")) c.n_min = static_cast<int>(*v);
    if (auto v = int_option("nmax")) c.n_max = static_cast<int>(*v);
    if (auto v = int_option("gens")) c.gens_max = static_cast<int>(*v);
    if (auto v = int_option("deg")) c.deg_max = static_cast<int>(*v);
    if (auto v = int_option("modules")) spec.modules = static_cast<int>(*v);
    RunOptions o = opts_;
    o.trials = trials();
    o.seed = c.seed;
    CommandResult r = corpus_verify(spec, o);
    status_ = std::max(status_, r.status);
    text_ << r.text;
    json j = json::parse(r.json);
    for (auto it = j.begin(); it != j.end(); ++it) out_[it.key()] = it.value();
  }

  const Command& cmd_;
  const InstanceFile& inst_;
  const RunOptions& opts_;
  const NamedObject* obj_ = nullptr;
  int status_ = 0;
  std::ostringstream text_;
  json out_ = json::object();
};

}  // namespace

const std::string* Command::option(const std::string& key) const {
  for (const auto& [k, v] : options)
    if (k == key) return &v;
  return nullptr;
}

const NamedObject* InstanceFile::find(const std::string& name) const {
  for (const auto& o : objects)
    if (o.name == name) return &o;
  return nullptr;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, spec] : command_table()) v.push_back(k);
    return v;
  }();
  return names;
}

InstanceFile parse_instance(std::string_view text, std::optional<std::uint32_t> prime_override) {
  std::optional<InstanceFile> inst;
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
    if (words.empty() || words[0].text.front() == '#') continue;
    std::string_view kw = words[0].text;

    if (!inst) {
      if (kw != "ring") throw ParseError("expected 'ring <n> <p>'", lineno, words[0].col);
      if (words.size() != 3) throw ParseError("'ring' takes 2 arguments", lineno, words[0].col);
      long n = parse_long(words[1].text, lineno, words[1].col);
      long p = parse_long(words[2].text, lineno, words[2].col);
      if (prime_override) p = *prime_override;
      try {
        inst = InstanceFile{Ring(static_cast<int>(n), static_cast<std::uint32_t>(p)), {}, {}};
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lineno, words[1].col);
      }
      continue;
    }
    const Ring& R = inst->ring;

    if (kw == "ideal") {
      std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'ideal <name> = <poly>, ...'", lineno, words[0].col);
      std::size_t name_start = static_cast<std::size_t>(words[0].col - 1) + kw.size();
      std::string_view name = trim(line.substr(name_start, eq - name_start));
      if (!is_identifier(name)) throw ParseError("expected an object name", lineno, static_cast<int>(name_start) + 2);
      if (inst->find(std::string(name))) {
        throw ParseError("'" + std::string(name) + "' is already defined", lineno, static_cast<int>(name_start) + 2);
      }
      Submodule I = parse_ideal_generators(R, line.substr(eq + 1), eq + 1, lineno);
      inst->objects.push_back(NamedObject{std::string(name), true, PresentedModule(I.ambient(), I)});
      continue;
    }

    if (kw == "module") {
      if (words.size() < 3 || words[2].text != "free") {
        throw ParseError("expected 'module <name> free <j...>'", lineno, words[0].col);
      }
      std::string name(words[1].text);
      if (!is_identifier(name)) throw ParseError("expected an object name", lineno, words[1].col);
      if (inst->find(name)) throw ParseError("'" + name + "' is already defined", lineno, words[1].col);
      std::vector<int> twists;
      std::size_t k = 3;
      for (; k < words.size() && words[k].text != "rels"; ++k) {
        twists.push_back(static_cast<int>(parse_long(words[k].text, lineno, words[k].col)));
      }
      if (twists.empty()) throw ParseError("'free' needs at least one twist", lineno, words[2].col);
      GradedFreeModule F(R, twists);
      std::vector<FreeElement> rels;
      if (k < words.size()) {
        std::size_t body = static_cast<std::size_t>(words[k].col - 1) + 4;
        rels = parse_relations(F, line.substr(body), body, lineno);
      }
      inst->objects.push_back(NamedObject{name, false, PresentedModule(F, Submodule(F, std::move(rels)))});
      continue;
    }

    if (kw == "cmd") {
      if (words.size() < 2) throw ParseError("expected 'cmd <command> <args>'", lineno, words[0].col);
      Command c;
      c.name = std::string(words[1].text);
      c.line = lineno;
      auto it = command_table().find(c.name);
      if (it == command_table().end()) throw ParseError("unknown command '" + c.name + "'", lineno, words[1].col);
      const CommandSpec& spec = it->second;
      for (std::size_t w = 2; w < words.size(); ++w) {
        std::string_view word = words[w].text;
        std::size_t eq = word.find('=');
        if (eq == std::string_view::npos) {
          std::string ref(word);
          if (!inst->find(ref)) throw ParseError("undefined object '" + ref + "'", lineno, words[w].col);
          c.objects.push_back(ref);
          continue;
        }
        std::string key(word.substr(0, eq));
        std::string value(word.substr(eq + 1));
        if (!spec.keys.count(key)) {
          throw ParseError("unknown option '" + key + "' for '" + c.name + "'", lineno, words[w].col);
        }
        if (c.option(key)) throw ParseError("option '" + key + "' given twice", lineno, words[w].col);
        if (value.empty()) throw ParseError("option '" + key + "' has no value", lineno, words[w].col);
        check_option_value(R, key, value, lineno, words[w].col + static_cast<int>(eq) + 1);
        c.options.emplace_back(std::move(key), std::move(value));
      }
      if (static_cast<int>(c.objects.size()) != spec.objects) {
        throw ParseError("'" + c.name + "' takes " + std::to_string(spec.objects) + " object(s), got " +
                             std::to_string(c.objects.size()),
                         lineno, words[1].col);
      }
      for (const auto& key : spec.required) {
        if (!c.option(key)) throw ParseError("'" + c.name + "' needs " + key + "=...", lineno, words[1].col);
      }
      inst->commands.push_back(std::move(c));
      continue;
    }

    throw ParseError("unknown statement '" + std::string(kw) + "'", lineno, words[0].col);
  }
  if (!inst) throw ParseError("missing 'ring <n> <p>' header", lineno, 1);
  return std::move(*inst);
}

std::string format_instance(const InstanceFile& inst) {
  std::string s = format_ring(inst.ring);
  for (const auto& o : inst.objects) s += format_object_line(o);
  for (const auto& c : inst.commands) s += format_command(c);
  return s;
}

std::string format_object(const NamedObject& obj) {
  return format_ring(obj.module.ring()) + format_object_line(obj);
}

void CorpusConfig::validate() const {
  if (count < 0) throw std::invalid_argument("count must be nonnegative");
  if (n_min < 1 || n_min > n_max || n_max > kMaxVars) throw std::invalid_argument("bad variable-count range");
  if (gens_min < 1 || gens_min > gens_max) throw std::invalid_argument("bad generator-count range");
  if (deg_min < 1 || deg_min > deg_max) throw std::invalid_argument("bad degree range");
}

std::vector<NamedObject> generate_family(const std::string& kind, const FamilyParams& params) {
  const CorpusConfig& c = params.corpus;
  std::vector<NamedObject> out;
  if (kind == "power-of-m") {
    if (params.n < 1 || params.n > kMaxVars || params.r < 0) throw std::invalid_argument("bad n or r");
    Ring R(params.n, c.prime);
    std::vector<Polynomial> gens;
    for (const auto& m : Monomial::all_of_degree(params.n, params.r + 1)) gens.push_back(Polynomial::monomial(R, m));
    out.push_back(NamedObject{"P", true, PresentedModule::cyclic(R, gens)});
  } else if (kind == "rm-ord-example") {
    Ring R(2, c.prime);
    std::vector<Polynomial> gens = {parse_polynomial(R, "x1^2"), parse_polynomial(R, "x1x2"),
                                    parse_polynomial(R, "x2^3")};
    out.push_back(NamedObject{"I", true, PresentedModule::cyclic(R, gens)});
  } else if (kind == "random-ideal" || kind == "random-module") {
    c.validate();
    for (int i = 0; i < c.count; ++i) {
      int index = params.first_index + i;
      out.push_back(kind == "random-ideal" ? random_ideal(c, index) : random_module(c, index));
    }
  } else {
    throw std::invalid_argument("unknown family kind '" + kind + "'");
  }
  return out;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  int workers = std::max(1, std::min(jobs, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string pretty(const Ring& R, const std::string& s) {
  if (R.nvars() > 3) return s;
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 'x' && i + 1 < s.size() && s[i + 1] >= '1' && s[i + 1] <= '3' &&
        (i + 2 == s.size() || !std::isdigit(static_cast<unsigned char>(s[i + 2])))) {
      out += "xyz"[s[i + 1] - '1'];
      ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

CommandResult run_command(const Command& cmd, const InstanceFile& inst, const RunOptions& opts) {
  return Runner(cmd, inst, opts).run();
}

CommandResult run_instance(const InstanceFile& inst, const RunOptions& opts) {
  CommandResult out;
  json results = json::array();
  for (const auto& c : inst.commands) {
    CommandResult r = run_command(c, inst, opts);
    out.status = std::max(out.status, r.status);
    out.text += r.text;
    results.push_back(json::parse(r.json));
  }
  json j = {{"ring", {{"n", inst.ring.nvars()}, {"p", inst.ring.prime()}}},
            {"results", results},
            {"status", out.status}};
  out.json = j.dump(2);
  return out;
}

CommandResult corpus_verify(const CorpusSpec& spec, const RunOptions& opts) {
  FamilyParams fp;
  fp.corpus = spec.config;
  std::vector<NamedObject> objs = generate_family("random-ideal", fp);
  fp.corpus.count = spec.modules;
  fp.first_index = spec.config.count;
  auto mods = generate_family("random-module", fp);
  objs.insert(objs.end(), mods.begin(), mods.end());

  std::vector<std::optional<MainTheoremReport>> reports(objs.size());
  parallel_for(static_cast<int>(objs.size()), opts.jobs, [&](int i) {
    reports[static_cast<std::size_t>(i)] =
        verify_main_theorem(objs[static_cast<std::size_t>(i)].module, opts.trials,
                            spec.config.seed ^ static_cast<std::uint64_t>(i));
  });

  CommandResult out;
  json arr = json::array();
  int agree = 0, cwl_true = 0, retried = 0;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const auto& r = *reports[i];
    arr.push_back(main_report_json(objs[i], r));
    out.text += main_report_line(objs[i], r);
    agree += r.agree;
    cwl_true += r.cwl;
    retried += r.retried;
  }
  int total = static_cast<int>(objs.size());
  out.status = agree == total ? 0 : 1;
  std::ostringstream os;
  os << "summary: " << total << " instances, " << agree << " AGREE, " << total - agree << " DISAGREE; cwl true "
     << cwl_true << ", false " << total - cwl_true << "; retried " << retried << "\n";
  out.text += os.str();
  const CorpusConfig& c = spec.config;
  json j = {{"command", "corpus-verify"},
            {"config",
             {{"count", c.count},
              {"modules", spec.modules},
              {"n", {c.n_min, c.n_max}},
              {"gens", {c.gens_min, c.gens_max}},
              {"deg", {c.deg_min, c.deg_max}},
              {"seed", c.seed},
              {"prime", c.prime},
              {"trials", opts.trials}}},
            {"reports", arr},
            {"summary",
             {{"instances", total},
              {"agree", agree},
              {"disagree", total - agree},
              {"cwl_true", cwl_true},
              {"cwl_false", total - cwl_true},
              {"retried", retried}}},
            {"status", out.status}};
  out.json = j.dump(2);
  return out;
}

}  // namespace gd::harness

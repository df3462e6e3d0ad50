#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "gammadepth/harness.hpp"

namespace h = gd::harness;

namespace {

constexpr int kUsage = 2;

std::optional<std::uint32_t> prime_from_env() {
  const char* v = std::getenv("GAMMA_DEPTH_PRIME");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  unsigned long p = std::strtoul(v, &end, 10);
  if (*end != '\0' || p < 2 || p > 0xFFFFFFFFul) throw std::invalid_argument("GAMMA_DEPTH_PRIME is not a valid modulus");
  return static_cast<std::uint32_t>(p);
}

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_json(const std::string& path, const std::string& json) {
  if (path.empty()) return true;
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << json << "\n";
  return static_cast<bool>(out);
}

int default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gamma-depth computations over graded polynomial rings"};
  app.require_subcommand(1);

  h::RunOptions opts;
  opts.jobs = default_jobs();
  std::string json_path;
  int cap = -1;

  auto* run = app.add_subcommand("run", "Run the commands of an instance file");
  std::string input;
  run->add_option("file", input, "Instance file, or - for standard input")->required();
  run->add_option("--json", json_path, "Write a JSON report");
  run->add_option("--seed", opts.seed, "Base seed");
  run->add_option("--trials", opts.trials, "Random trials per search")->check(CLI::PositiveNumber);
  run->add_option("--cap", cap, "Cap for delta")->check(CLI::NonNegativeNumber);
  run->add_option("--jobs", opts.jobs, "Worker threads for corpus runs")->check(CLI::PositiveNumber);

  auto* corpus = app.add_subcommand("corpus-verify", "Check the main theorem on a random corpus");
  h::CorpusSpec spec;
  int n_fixed = 0;
  corpus->add_option("--count", spec.config.count, "Random ideals")->check(CLI::NonNegativeNumber);
  corpus->add_option("--modules", spec.modules, "Random non-cyclic modules")->check(CLI::NonNegativeNumber);
  corpus->add_option("--n", n_fixed, "Number of variables (default: 2 or 3)");
  corpus->add_option("--n-min", spec.config.n_min);
  corpus->add_option("--n-max", spec.config.n_max);
  corpus->add_option("--gens", spec.config.gens_max, "Maximal number of generators");
  corpus->add_option("--deg", spec.config.deg_max, "Maximal generator degree");
  corpus->add_option("--seed", opts.seed, "Base seed");
  corpus->add_option("--trials", opts.trials, "Random trials per search")->check(CLI::PositiveNumber);
  corpus->add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
  corpus->add_option("--json", json_path, "Write a JSON report");

  auto* gen = app.add_subcommand("generate", "Print an instance file for a family");
  std::string kind;
  h::FamilyParams fp;
  std::vector<std::string> cmds;
  std::uint64_t gen_seed = 0;
  gen->add_option("kind", kind, "power-of-m, rm-ord-example, random-ideal or random-module")->required();
  gen->add_option("--n", fp.n, "Number of variables");
  gen->add_option("--r", fp.r, "Exponent r for R/m^(r+1)");
  gen->add_option("--count", fp.corpus.count, "Instances for random kinds");
  gen->add_option("--gens", fp.corpus.gens_max, "Maximal number of generators");
  gen->add_option("--deg", fp.corpus.deg_max, "Maximal generator degree");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--cmd", cmds, "Command to append for every object (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    std::optional<std::uint32_t> prime = prime_from_env();

    if (*run) {
      if (cap >= 0) opts.cap = cap;
      h::InstanceFile inst = h::parse_instance(read_input(input), prime);
      h::CommandResult r = h::run_instance(inst, opts);
      std::cout << r.text;
      if (!write_json(json_path, r.json)) return kUsage;
      return r.status;
    }

    if (*corpus) {
      if (n_fixed > 0) spec.config.n_min = spec.config.n_max = n_fixed;
      spec.config.seed = opts.seed;
      if (prime) spec.config.prime = *prime;
      spec.config.validate();
      h::CommandResult r = h::corpus_verify(spec, opts);
      std::cout << r.text;
      if (!write_json(json_path, r.json)) return kUsage;
      return r.status;
    }

    if (*gen) {
      fp.corpus.n_min = fp.corpus.n_max = fp.n;
      fp.corpus.seed = gen_seed;
      if (prime) fp.corpus.prime = *prime;
      auto objs = h::generate_family(kind, fp);
      gd::Ring ring = objs.empty() ? gd::Ring(fp.n, fp.corpus.prime) : objs.front().module.ring();
      h::InstanceFile inst{ring, objs, {}};
      for (const auto& o : objs) {
        for (const auto& c : cmds) inst.commands.push_back(h::Command{c, {o.name}, {}, 0});
      }
      // Reparse so that bad --cmd values are reported like file errors.
      std::string text = h::format_instance(inst);
      h::parse_instance(text);
      std::cout << text;
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

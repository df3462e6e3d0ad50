#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gammadepth/module.hpp"

namespace gd::harness {

/// A named ideal or presented module. Ideals are stored as R/I.
struct NamedObject {
  std::string name;
  bool is_ideal = false;
  PresentedModule module;
};

struct Command {
  std::string name;
  /// Positional words: names of objects.
  std::vector<std::string> objects;
  /// key=value words, in the order given.
  std::vector<std::pair<std::string, std::string>> options;
  int line = 0;

  const std::string* option(const std::string& key) const;
};

struct InstanceFile {
  Ring ring;
  std::vector<NamedObject> objects;
  std::vector<Command> commands;

  const NamedObject* find(const std::string& name) const;
};

/// Line-oriented grammar:
///   ring <n> <p>
///   ideal <name> = <poly>, ...
///   module <name> free <j...> [rels [<poly> | ...], ...]
///   cmd <command> <object...> <key=value...>
/// Blank lines and lines starting with '#' are skipped. Throws ParseError
/// with line and column. A prime override replaces p from the header.
InstanceFile parse_instance(std::string_view text, std::optional<std::uint32_t> prime_override = {});
/// Inverse of parse_instance.
std::string format_instance(const InstanceFile& inst);
/// A one-object instance, used to make reports reproducible.
std::string format_object(const NamedObject& obj);

/// Commands understood by run_command.
const std::vector<std::string>& command_names();

struct CorpusConfig {
  int count = 100;
  int n_min = 2, n_max = 3;
  int gens_min = 1, gens_max = 4;
  int deg_min = 1, deg_max = 4;
  std::uint64_t seed = 0;
  std::uint32_t prime = kDefaultPrime;
  /// Throws std::invalid_argument on an empty range or bad count.
  void validate() const;
};

struct FamilyParams {
  /// For power-of-m: R/m^{r+1} over n variables.
  int n = 3;
  int r = 2;
  CorpusConfig corpus;
  /// Index of the first random instance; names and seeds use the index.
  int first_index = 0;
};

/// Kinds: power-of-m, rm-ord-example, random-ideal, random-module. Random
/// instance i is drawn from a generator seeded with seed ^ i. Random modules
/// have rank 2 with every relation entry in m, so they are never cyclic.
/// Throws std::invalid_argument on an unknown kind.
std::vector<NamedObject> generate_family(const std::string& kind, const FamilyParams& params);

struct RunOptions {
  std::uint64_t seed = 0;
  int trials = 20;
  std::optional<int> cap;
  /// Worker threads for corpus runs; the report does not depend on it.
  int jobs = 1;
};

/// status: 0 success or AGREE, 1 mathematical DISAGREE, 2 usage error.
struct CommandResult {
  int status = 0;
  std::string text;
  /// Serialized JSON object.
  std::string json;
};

CommandResult run_command(const Command& cmd, const InstanceFile& inst, const RunOptions& opts);
/// Runs every command; status is the worst one, JSON collects all results.
CommandResult run_instance(const InstanceFile& inst, const RunOptions& opts);

struct CorpusSpec {
  CorpusConfig config;
  /// Non-cyclic modules generated after the ideals, indices continuing.
  int modules = 0;
};

/// verify-main over a generated corpus; instance i uses seed ^ i.
CommandResult corpus_verify(const CorpusSpec& spec, const RunOptions& opts);

/// Calls fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

/// Replaces x1, x2, x3 with x, y, z when the ring has at most three variables.
std::string pretty(const Ring& R, const std::string& s);

}  // namespace gd::harness

#pragma once

// Run parameters: one registry of named, typed keys shared by the JSON
// config, the command-line flags and the manifest. Values are normalized to
// JSON so a manifest's "parameters" object can be fed back as a config.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "parrondo/core_rules.hpp"

namespace parrondo::cli {

using json = nlohmann::json;

enum class Kind {
  integer,   // 8
  real,      // 0.5
  count,     // nonnegative integer, "1e6" accepted
  seed,      // unsigned 64-bit, decimal or 0x-prefixed
  text,      // free string
  flag,      // boolean switch
  probs,     // four reals "0.1,0.6,0.6,0.9"
  int_list,  // "6..14", "6..14:2", "6,8,10" or "8"
  reals,     // "0,0.25,0.5"
  grid,      // {"p0":[..],"p1":[..],"p2":[..],"p3":[..]} or a reals list for every axis
};

struct ParamSpec {
  std::string name;   // JSON key; the flag is --name with '_' -> '-'
  Kind kind;
  std::string help;
};

const std::vector<ParamSpec>& registry();
const ParamSpec& spec_of(const std::string& name);
std::string flag_of(const std::string& name);

// Parses a command-line string for the given kind. Throws InvalidArgument.
json parse_text(const ParamSpec& spec, const std::string& raw);
// Checks and normalizes a config value (strings go through parse_text).
json normalize(const ParamSpec& spec, const json& value);

// Reads a config file: either a flat object of parameters or a manifest with
// "command" and "parameters". `tolerances: {tol, max_iters}` is flattened.
// Unknown keys are rejected; a manifest for another command is rejected.
// `lookup` resolves a key to its spec for the running command.
using SpecLookup = std::function<ParamSpec(const std::string&)>;
json load_config(const std::string& path, const std::string& command, const SpecLookup& lookup);

class Params {
 public:
  explicit Params(json values) : values_(std::move(values)) {}

  bool has(const std::string& name) const;
  const json& values() const { return values_; }

  long long integer(const std::string& name) const;
  double real(const std::string& name) const;
  std::uint64_t count(const std::string& name) const;
  std::uint64_t seed(const std::string& name) const;
  std::string text(const std::string& name) const;
  bool flag(const std::string& name) const;
  GameParams probs(const std::string& name) const;
  std::vector<int> int_list(const std::string& name) const;
  std::vector<double> reals(const std::string& name) const;

  // gamma -> mixture, r and s -> periodic, game (aprime|b) -> single game.
  // Defaults to mixture(0.5) when none is given.
  SchedulerSpec scheduler() const;

 private:
  const json& require(const std::string& name) const;
  json values_;
};

// The scheduler keys form one group: a flag from the group overrides every
// key of the group coming from the config.
inline const std::vector<std::string> kSchedulerKeys = {"gamma", "r", "s", "game"};

}  // namespace parrondo::cli

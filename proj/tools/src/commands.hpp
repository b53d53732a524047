#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "params.hpp"
#include "report.hpp"

namespace parrondo::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInvalid = 2,
  kExitNotConverged = 3,  // solver budget exhausted, reducible chain, or failed rows
  kExitCheckFailed = 4,   // an internal cross-check exceeded its tolerance
};

struct CommandResult {
  Table table;
  int exit_code = kExitOk;
  std::vector<std::string> messages;  // reported on the error stream
};

struct CommandParam {
  CommandParam(std::string n, std::optional<Kind> k = std::nullopt) : name(std::move(n)), kind(k) {}
  std::string name;
  std::optional<Kind> kind;  // overrides the registry kind for this command
};

struct Command {
  std::string name;
  std::string description;
  std::vector<CommandParam> params;
  json defaults;
  bool uses_scheduler = false;
  std::string default_format = "csv";
  std::function<CommandResult(const Params&)> run;

  // Registry spec with this command's kind override applied.
  ParamSpec spec(const std::string& name) const;
  bool accepts(const std::string& name) const;
};

const std::vector<Command>& commands();

}  // namespace parrondo::cli

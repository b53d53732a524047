#include "parrondo_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "parrondo/errors.hpp"
#include "parrondo/parallel.hpp"

namespace parrondo::cli {

namespace {

struct Flags {
  std::map<std::string, std::string> text;
  std::map<std::string, bool> switches;
  std::map<std::string, CLI::Option*> options;

  bool given(const std::string& name) const {
    auto it = options.find(name);
    return it != options.end() && it->second->count() > 0;
  }
};

void add_param(CLI::App& sub, Flags& flags, const ParamSpec& spec) {
  const std::string flag = flag_of(spec.name);
  if (spec.kind == Kind::flag) {
    flags.options[spec.name] = sub.add_flag(flag, flags.switches[spec.name], spec.help);
  } else {
    flags.options[spec.name] = sub.add_option(flag, flags.text[spec.name], spec.help);
  }
}

json resolve(const Command& cmd, const Flags& flags, const Flags& global, const std::string& config_path) {
  json values = cmd.defaults;
  values["threads"] = 0;
  auto lookup = [&cmd](const std::string& name) {
    return name == "threads" ? spec_of(name) : cmd.spec(name);
  };

  if (!config_path.empty()) {
    json cfg = load_config(config_path, cmd.name, lookup);
    if (cmd.uses_scheduler) {
      const bool flag_sched = std::any_of(kSchedulerKeys.begin(), kSchedulerKeys.end(),
                                          [&](const std::string& k) { return flags.given(k); });
      if (flag_sched) {
        for (const auto& k : kSchedulerKeys) cfg.erase(k);
      }
    }
    for (const auto& [key, value] : cfg.items()) {
      if (key == "threads" || cmd.accepts(key)) values[key] = value;
    }
  }

  for (const Flags* set : {&global, &flags}) {
    for (const auto& [name, option] : set->options) {
      if (option->count() == 0) continue;
      const ParamSpec spec = lookup(name);
      values[name] = spec.kind == Kind::flag ? json(set->switches.at(name)) : parse_text(spec, set->text.at(name));
    }
  }
  return values;
}

int emit(const Command& cmd, const CommandResult& result, Manifest manifest, const std::string& format,
         const std::string& out_path, std::ostream& out, std::ostream& err) {
  manifest.exit_code = result.exit_code;
  const std::string manifest_path = out_path.empty() ? "" : out_path + ".manifest.json";
  if (!out_path.empty()) manifest.outputs = {out_path, manifest_path};

  std::ostringstream body;
  if (format == "json") {
    body << table_json(result.table, manifest.to_json()).dump(2) << "\n";
  } else {
    write_csv(body, result.table);
  }

  if (out_path.empty()) {
    out << body.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << out_path << "\n";
      return kExitFailure;
    }
    file << body.str();
    std::ofstream side(manifest_path);
    if (!side) {
      err << "error: cannot write " << manifest_path << "\n";
      return kExitFailure;
    }
    side << manifest.to_json().dump(2) << "\n";
  }
  for (const auto& m : result.messages) err << cmd.name << ": " << m << "\n";
  return result.exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis and simulation of Parrondo games on a ring of players", "parrondo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string config_path;
  std::string format;
  std::string out_path;
  app.add_option("--config", config_path, "JSON config or a previous run's manifest; flags override it");
  app.add_option("--format", format, "output format: csv or json (default per command)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "write results to this file and the manifest to <file>.manifest.json");
  Flags global_flags;
  add_param(app, global_flags, spec_of("threads"));

  std::map<std::string, Flags> flag_sets;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.description);
    sub->fallthrough();
    Flags& flags = flag_sets[cmd.name];
    for (const auto& p : cmd.params) add_param(*sub, flags, cmd.spec(p.name));
    subs[cmd.name] = sub;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  const Command* cmd = nullptr;
  for (const auto& c : commands()) {
    if (subs[c.name]->parsed()) cmd = &c;
  }
  if (cmd == nullptr) {
    err << "error: no command given\n";
    return kExitInvalid;
  }

  const auto start = std::chrono::steady_clock::now();
  Manifest manifest;
  manifest.command = cmd->name;
  manifest.started_utc = utc_now();
  try {
    const json values = resolve(*cmd, flag_sets[cmd->name], global_flags, config_path);
    const long long threads = values.value("threads", 0LL);
    if (threads < 0) throw InvalidArgument("--threads must be >= 0");
    set_thread_count(static_cast<int>(threads));
    manifest.threads = thread_count();
    manifest.parameters = values;
    const CommandResult result = cmd->run(Params(values));
    manifest.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return emit(*cmd, result, manifest, format.empty() ? cmd->default_format : format, out_path, out, err);
  } catch (const InvalidArgument& e) {
    err << cmd->name << ": error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const NotConverged& e) {
    err << cmd->name << ": error: " << e.what() << "\n";
    return kExitNotConverged;
  } catch (const NotIrreducible& e) {
    err << cmd->name << ": error: " << e.what() << "\n";
    return kExitNotConverged;
  } catch (const json::exception& e) {
    err << cmd->name << ": error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << cmd->name << ": unexpected failure: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace parrondo::cli

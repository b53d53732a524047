#include "params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "parrondo/errors.hpp"

namespace parrondo::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& name, const std::string& what) {
  throw InvalidArgument("parameter '" + name + "': " + what);
}

double to_real(const std::string& name, const std::string& raw) {
  const std::string t = trim(raw);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    bad(name, "expected a number, got '" + raw + "'");
  }
  if (used != t.size() || !std::isfinite(v)) bad(name, "expected a finite number, got '" + raw + "'");
  return v;
}

long long to_integer(const std::string& name, const std::string& raw) {
  const std::string t = trim(raw);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    bad(name, "expected an integer, got '" + raw + "'");
  }
  if (used != t.size()) bad(name, "expected an integer, got '" + raw + "'");
  return v;
}

std::uint64_t real_to_count(const std::string& name, double v) {
  if (v < 0.0 || v != std::floor(v) || v > 9007199254740992.0) {
    bad(name, "expected a nonnegative whole number");
  }
  return static_cast<std::uint64_t>(v);
}

json reals_from_text(const std::string& name, const std::string& raw) {
  json arr = json::array();
  for (const auto& part : split(raw, ',')) arr.push_back(to_real(name, part));
  if (arr.empty()) bad(name, "expected at least one number");
  return arr;
}

json grid_axis(const std::string& name, const json& v) {
  if (v.is_string()) return reals_from_text(name, v.get<std::string>());
  if (!v.is_array() || v.empty()) bad(name, "grid axes must be nonempty arrays of numbers");
  json out = json::array();
  for (const auto& x : v) {
    if (!x.is_number()) bad(name, "grid axes must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

const std::vector<ParamSpec>& registry() {
  static const std::vector<ParamSpec> specs = {
      {"n", Kind::integer, "number of players"},
      {"gamma", Kind::real, "probability of playing A' each turn (random mixture)"},
      {"r", Kind::integer, "A' turns per period (periodic pattern)"},
      {"s", Kind::integer, "B turns per period (periodic pattern)"},
      {"game", Kind::text, "single game played every turn: aprime or b (generator-check: also mixture, periodic)"},
      {"p", Kind::probs, "coin probabilities p0,p1,p2,p3 of game B"},
      {"tol", Kind::real, "stationary solver L1 residual tolerance"},
      {"max_iters", Kind::count, "stationary solver iteration budget"},
      {"samples", Kind::count, "Monte Carlo parameter draws"},
      {"seed", Kind::seed, "root seed"},
      {"constraint", Kind::text, "parameter region: none or p1_eq_p2"},
      {"turns", Kind::count, "total simulated turns, burn-in included"},
      {"burnin", Kind::count, "discarded turns (default 10 n ln(2+n))"},
      {"replicas", Kind::integer, "independent simulation replicas"},
      {"audit", Kind::flag, "track per-player wealth and check conservation every turn"},
      {"method", Kind::text, "scan method: exact or simulate"},
      {"grid", Kind::grid, "scan grid values, applied to every axis unless given per axis in a config"},
      {"tie_p1_p2", Kind::flag, "scan with p2 = p1"},
      {"k", Kind::integer, "cylinder function half-width"},
      {"margin", Kind::integer, "support margin K of the periodic check (default k+2)"},
      {"f", Kind::reals, "cylinder function table (default: random from the seed)"},
      {"threads", Kind::integer, "worker threads, 0 = all cores"},
  };
  return specs;
}

const ParamSpec& spec_of(const std::string& name) {
  for (const auto& s : registry()) {
    if (s.name == name) return s;
  }
  throw InvalidArgument("unknown parameter '" + name + "'");
}

std::string flag_of(const std::string& name) {
  std::string f = name;
  std::replace(f.begin(), f.end(), '_', '-');
  return "--" + f;
}

json parse_text(const ParamSpec& spec, const std::string& raw) {
  const std::string& name = spec.name;
  switch (spec.kind) {
    case Kind::integer:
      return to_integer(name, raw);
    case Kind::real:
      return to_real(name, raw);
    case Kind::count:
      return real_to_count(name, to_real(name, raw));
    case Kind::seed: {
      const std::string t = trim(raw);
      std::size_t used = 0;
      std::uint64_t v = 0;
      try {
        v = std::stoull(t, &used, 0);
      } catch (const std::exception&) {
        bad(name, "expected an unsigned 64-bit integer, got '" + raw + "'");
      }
      if (used != t.size() || t.front() == '-') bad(name, "expected an unsigned 64-bit integer");
      return v;
    }
    case Kind::text:
      return trim(raw);
    case Kind::flag: {
      const std::string t = trim(raw);
      if (t.empty() || t == "true" || t == "1") return true;
      if (t == "false" || t == "0") return false;
      bad(name, "expected true or false");
    }
    case Kind::probs: {
      json arr = reals_from_text(name, raw);
      if (arr.size() != 4) bad(name, "expected four comma-separated probabilities");
      return arr;
    }
    case Kind::int_list: {
      const std::string t = trim(raw);
      json arr = json::array();
      const auto dots = t.find("..");
      if (dots != std::string::npos) {
        const long long lo = to_integer(name, t.substr(0, dots));
        std::string rest = t.substr(dots + 2);
        long long step = 1;
        if (const auto colon = rest.find(':'); colon != std::string::npos) {
          step = to_integer(name, rest.substr(colon + 1));
          rest = rest.substr(0, colon);
        }
        const long long hi = to_integer(name, rest);
        if (step < 1 || hi < lo) bad(name, "range must be lo..hi[:step] with lo <= hi, step >= 1");
        for (long long v = lo; v <= hi; v += step) arr.push_back(v);
      } else {
        for (const auto& part : split(t, ',')) arr.push_back(to_integer(name, part));
      }
      if (arr.empty()) bad(name, "expected at least one value");
      return arr;
    }
    case Kind::reals:
      return reals_from_text(name, raw);
    case Kind::grid: {
      const json axis = reals_from_text(name, raw);
      return json{{"p0", axis}, {"p1", axis}, {"p2", axis}, {"p3", axis}};
    }
  }
  bad(name, "unsupported kind");
}

json normalize(const ParamSpec& spec, const json& value) {
  const std::string& name = spec.name;
  if (value.is_string() && spec.kind != Kind::grid) return parse_text(spec, value.get<std::string>());
  switch (spec.kind) {
    case Kind::integer:
      if (!value.is_number_integer()) bad(name, "expected an integer");
      return value.get<long long>();
    case Kind::real:
      if (!value.is_number()) bad(name, "expected a number");
      return value.get<double>();
    case Kind::count:
      if (value.is_number_unsigned()) return value.get<std::uint64_t>();
      if (!value.is_number()) bad(name, "expected a count");
      return real_to_count(name, value.get<double>());
    case Kind::seed:
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
        bad(name, "expected an unsigned 64-bit integer");
      }
      return value.get<std::uint64_t>();
    case Kind::text:
      bad(name, "expected a string");
    case Kind::flag:
      if (!value.is_boolean()) bad(name, "expected true or false");
      return value;
    case Kind::probs:
    case Kind::reals: {
      if (!value.is_array() || value.empty()) bad(name, "expected an array of numbers");
      json out = json::array();
      for (const auto& x : value) {
        if (!x.is_number()) bad(name, "expected an array of numbers");
        out.push_back(x.get<double>());
      }
      if (spec.kind == Kind::probs && out.size() != 4) bad(name, "expected four probabilities");
      return out;
    }
    case Kind::int_list: {
      if (value.is_number_integer()) return json::array({value.get<long long>()});
      if (!value.is_array() || value.empty()) bad(name, "expected an array of integers");
      json out = json::array();
      for (const auto& x : value) {
        if (!x.is_number_integer()) bad(name, "expected an array of integers");
        out.push_back(x.get<long long>());
      }
      return out;
    }
    case Kind::grid: {
      if (value.is_string() || value.is_array()) {
        const json axis = grid_axis(name, value);
        return json{{"p0", axis}, {"p1", axis}, {"p2", axis}, {"p3", axis}};
      }
      if (!value.is_object()) bad(name, "expected an object with p0..p3 arrays or a list of values");
      json out = json::object();
      json shared = value.contains("values") ? grid_axis(name, value["values"]) : json();
      for (const char* axis : {"p0", "p1", "p2", "p3"}) {
        if (value.contains(axis)) {
          out[axis] = grid_axis(name, value[axis]);
        } else if (!shared.is_null()) {
          out[axis] = shared;
        } else {
          bad(name, std::string("missing axis ") + axis);
        }
      }
      for (const auto& [key, _] : value.items()) {
        if (key != "values" && key != "p0" && key != "p1" && key != "p2" && key != "p3") {
          bad(name, "unknown grid key '" + key + "'");
        }
      }
      return out;
    }
  }
  bad(name, "unsupported kind");
}

json load_config(const std::string& path, const std::string& command, const SpecLookup& lookup) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("config file must hold a JSON object");
  if (doc.contains("parameters")) {
    if (doc.contains("command") && doc["command"].is_string() && doc["command"] != command) {
      throw InvalidArgument("manifest '" + path + "' belongs to command '" + doc["command"].get<std::string>() +
                            "', not '" + command + "'");
    }
    doc = doc["parameters"];
    if (!doc.is_object()) throw InvalidArgument("manifest parameters must be an object");
  }
  json out = json::object();
  for (const auto& [key, value] : doc.items()) {
    if (key == "tolerances") {
      if (!value.is_object()) throw InvalidArgument("'tolerances' must be an object");
      for (const auto& [tk, tv] : value.items()) {
        const std::string name = tk == "solver_tol" ? "tol" : tk;
        if (name != "tol" && name != "max_iters") throw InvalidArgument("unknown tolerance '" + tk + "'");
        out[name] = normalize(lookup(name), tv);
      }
      continue;
    }
    if (value.is_null()) continue;
    out[key] = normalize(lookup(key), value);
  }
  return out;
}

// ---------------------------------------------------------------------------

bool Params::has(const std::string& name) const {
  return values_.contains(name) && !values_[name].is_null();
}

const json& Params::require(const std::string& name) const {
  if (!has(name)) throw InvalidArgument("missing required parameter " + flag_of(name));
  return values_[name];
}

long long Params::integer(const std::string& name) const { return require(name).get<long long>(); }
double Params::real(const std::string& name) const { return require(name).get<double>(); }
std::uint64_t Params::count(const std::string& name) const { return require(name).get<std::uint64_t>(); }
std::uint64_t Params::seed(const std::string& name) const { return require(name).get<std::uint64_t>(); }
std::string Params::text(const std::string& name) const { return require(name).get<std::string>(); }
bool Params::flag(const std::string& name) const { return has(name) && values_[name].get<bool>(); }

GameParams Params::probs(const std::string& name) const {
  const json& v = require(name);
  return GameParams::make(v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>());
}

std::vector<int> Params::int_list(const std::string& name) const {
  std::vector<int> out;
  for (const auto& x : require(name)) out.push_back(static_cast<int>(x.get<long long>()));
  return out;
}

std::vector<double> Params::reals(const std::string& name) const {
  std::vector<double> out;
  for (const auto& x : require(name)) out.push_back(x.get<double>());
  return out;
}

SchedulerSpec Params::scheduler() const {
  const bool g = has("gamma");
  const bool periodic = has("r") || has("s");
  const bool single = has("game");
  if (static_cast<int>(g) + static_cast<int>(periodic) + static_cast<int>(single) > 1) {
    throw InvalidArgument("choose one schedule: --gamma, --r/--s or --game");
  }
  SchedulerSpec sched = RandomMixture{0.5};
  if (g) {
    sched = RandomMixture{real("gamma")};
  } else if (periodic) {
    if (!has("r") || !has("s")) throw InvalidArgument("a periodic schedule needs both --r and --s");
    sched = PeriodicPattern{static_cast<int>(integer("r")), static_cast<int>(integer("s"))};
  } else if (single) {
    const std::string name = text("game");
    if (name == "aprime") {
      sched = SingleGame{Game::aprime};
    } else if (name == "b") {
      sched = SingleGame{Game::b};
    } else {
      throw InvalidArgument("--game must be aprime or b, got '" + name + "'");
    }
  }
  validate(sched);
  return sched;
}

}  // namespace parrondo::cli

#include "commands.hpp"

#include <algorithm>
#include <cmath>

#include "parrondo/ergodicity.hpp"
#include "parrondo/errors.hpp"
#include "parrondo/exact_engine.hpp"
#include "parrondo/generator_lab.hpp"
#include "parrondo/montecarlo.hpp"
#include "parrondo/rng.hpp"

namespace parrondo::cli {

namespace {

constexpr double kGeneratorTol = 1e-12;
constexpr double kErgodicityCheckTol = 1e-12;

SolverOptions solver_options(const Params& params) {
  SolverOptions opts;
  if (params.has("tol")) opts.tol = params.real("tol");
  if (params.has("max_iters")) opts.max_iters = static_cast<long>(params.count("max_iters"));
  if (!(opts.tol > 0.0)) throw InvalidArgument("--tol must be positive");
  if (opts.max_iters < 1) throw InvalidArgument("--max-iters must be at least 1");
  return opts;
}

std::vector<std::string> with_p_columns(std::vector<std::string> head, std::vector<std::string> tail) {
  for (const char* c : {"p0", "p1", "p2", "p3"}) head.emplace_back(c);
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

void push_p(std::vector<Cell>& row, const GameParams& p) {
  for (double v : p.p) row.emplace_back(v);
}

const char* pair_suffix(std::size_t k) {
  static const char* names[] = {"00", "01", "10", "11"};
  return names[k];
}

// ---------------------------------------------------------------------------

CommandResult exact_mean(const Params& params) {
  const auto sched = params.scheduler();
  const GameParams p = params.probs("p");
  const SolverOptions opts = solver_options(params);
  CommandResult res;
  res.table.schema = "parrondo.exact-mean/1";
  res.table.columns = with_p_columns({"n", "scheduler"},
                                     {"mu", "mu_pair", "formula_delta", "solver_residual", "iterations"});
  for (int n : params.int_list("n")) {
    const MeanProfit mp = mean_profit(n, sched, p, opts);
    std::vector<Cell> row{static_cast<long long>(n), describe(sched)};
    push_p(row, p);
    row.insert(row.end(), {mp.mu, mp.mu_pair, mp.formula_delta, mp.solver_residual,
                           static_cast<long long>(mp.iterations)});
    res.table.add(std::move(row));
    if (mp.formula_delta > kFormulaAgreementTol) {
      res.exit_code = kExitCheckFailed;
      res.messages.push_back("n=" + std::to_string(n) + ": full-state and pair-marginal means differ by " +
                             format_double(mp.formula_delta));
    }
  }
  return res;
}

CommandResult ergodicity(const Params& params) {
  const double gamma = params.real("gamma");
  const GameParams p = params.probs("p");
  const auto closed = is_ergodic_Cprime(gamma, p, ErgodicityMethod::closed_form);
  const auto brute = is_ergodic_Cprime(gamma, p, ErgodicityMethod::brute_force);
  const auto b = is_ergodic_B(p);
  const double delta = std::max(std::abs(brute.M - closed.M), std::abs(brute.epsilon - closed.epsilon));

  CommandResult res;
  res.table.schema = "parrondo.ergodicity/1";
  res.table.single_record = true;
  res.table.columns = with_p_columns({"gamma"}, {"M", "epsilon", "lhs", "ergodic", "margin",
                                                 "gamma_in_theorem_range", "M_bruteforce",
                                                 "epsilon_bruteforce", "check_delta", "b_lhs", "b_rhs",
                                                 "b_ergodic"});
  std::vector<Cell> row{gamma};
  push_p(row, p);
  row.insert(row.end(), {closed.M, closed.epsilon, closed.lhs, closed.ergodic, closed.margin,
                         closed.gamma_in_theorem_range, brute.M, brute.epsilon, delta, b.lhs, b.epsilon,
                         b.ergodic});
  res.table.add(std::move(row));
  if (!closed.gamma_in_theorem_range) {
    res.messages.push_back("note: gamma outside (0,1); the mixture condition is reported for reference only");
  }
  if (delta > kErgodicityCheckTol) {
    res.exit_code = kExitCheckFailed;
    res.messages.push_back("closed-form and enumerated constants differ by " + format_double(delta));
  }
  return res;
}

CommandResult volume(const Params& params) {
  const double gamma = params.real("gamma");
  const std::string constraint = params.text("constraint");
  VolumeConstraint c;
  if (constraint == "none") {
    c = VolumeConstraint::none;
  } else if (constraint == "p1_eq_p2") {
    c = VolumeConstraint::p1_eq_p2;
  } else {
    throw InvalidArgument("--constraint must be none or p1_eq_p2, got '" + constraint + "'");
  }
  const std::uint64_t seed = params.seed("seed");
  const auto est = volume_estimate(gamma, c, params.count("samples"), seed);
  CommandResult res;
  res.table.schema = "parrondo.volume/1";
  res.table.single_record = true;
  res.table.columns = {"gamma", "constraint", "samples", "seed", "estimate", "stderr", "hits"};
  res.table.add({gamma, constraint, est.samples, seed, est.estimate, est.std_error, est.hits});
  return res;
}

CommandResult simulate_cmd(const Params& params) {
  SimConfig cfg;
  cfg.n = params.integer("n");
  cfg.sched = params.scheduler();
  cfg.params = params.probs("p");
  cfg.turns = params.count("turns");
  if (params.has("burnin")) cfg.burnin = params.count("burnin");
  cfg.seed = params.seed("seed");
  cfg.audit = params.flag("audit");
  const long long replicas = params.integer("replicas");
  if (replicas < 1 || replicas > 100000) throw InvalidArgument("--replicas must lie in 1..100000");

  std::vector<SimResult> runs;
  std::vector<std::uint64_t> seeds;
  if (replicas == 1) {
    runs.push_back(simulate(cfg));
    seeds.push_back(cfg.seed);
  } else {
    runs = simulate_replicas(cfg, static_cast<int>(replicas));
    for (long long i = 0; i < replicas; ++i) seeds.push_back(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
  }

  CommandResult res;
  res.table.schema = "parrondo.simulate/1";
  std::vector<std::string> tail{"turns", "burnin", "mu_hat", "ci_halfwidth"};
  for (const char* family : {"pair_fixed_", "pair_spatial_"}) {
    for (std::size_t k = 0; k < 4; ++k) tail.push_back(family + std::string(pair_suffix(k)));
    for (std::size_t k = 0; k < 4; ++k) tail.push_back(family + std::string("ci_") + pair_suffix(k));
  }
  tail.insert(tail.end(), {"aprime_nonzero_turns", "b_bad_turns"});
  res.table.columns = with_p_columns({"replica", "seed", "n", "scheduler"}, tail);

  for (std::size_t i = 0; i < runs.size(); ++i) {
    const SimResult& r = runs[i];
    std::vector<Cell> row{static_cast<long long>(i), seeds[i], static_cast<long long>(cfg.n), describe(cfg.sched)};
    push_p(row, cfg.params);
    row.insert(row.end(), {r.turns_used + r.burnin_used, r.burnin_used, r.mu_hat, r.ci_halfwidth});
    for (const auto* pm : {&r.pair_fixed, &r.pair_spatial}) {
      const auto& ci = pm == &r.pair_fixed ? r.pair_fixed_ci : r.pair_spatial_ci;
      for (std::size_t k = 0; k < 4; ++k) row.emplace_back(pm->probs[k]);
      for (std::size_t k = 0; k < 4; ++k) row.emplace_back(ci[k]);
    }
    if (cfg.audit) {
      row.insert(row.end(), {r.aprime_nonzero_turns, r.b_bad_turns});
      if (r.aprime_nonzero_turns || r.b_bad_turns) {
        res.exit_code = kExitCheckFailed;
        res.messages.push_back("replica " + std::to_string(i) + ": wealth conservation audit failed");
      }
    } else {
      row.insert(row.end(), {std::monostate{}, std::monostate{}});
    }
    res.table.add(std::move(row));
  }
  return res;
}

CommandResult scan(const Params& params) {
  const json& grid = params.values()["grid"];
  if (grid.is_null()) throw InvalidArgument("missing required parameter --grid");
  ScanGrid g;
  g.p0 = grid["p0"].get<std::vector<double>>();
  g.p1 = grid["p1"].get<std::vector<double>>();
  g.p2 = grid["p2"].get<std::vector<double>>();
  g.p3 = grid["p3"].get<std::vector<double>>();
  g.tie_p1_p2 = params.flag("tie_p1_p2");

  ScanOptions opts;
  opts.n = params.integer("n");
  opts.sched = params.scheduler();
  const std::string method = params.text("method");
  if (method == "exact") {
    opts.method = ScanMethod::exact;
  } else if (method == "simulate") {
    opts.method = ScanMethod::simulate;
  } else {
    throw InvalidArgument("--method must be exact or simulate, got '" + method + "'");
  }
  opts.turns = params.count("turns");
  opts.seed = params.seed("seed");
  opts.solver = solver_options(params);

  const auto points = g.points();
  const auto records = parrondo_scan(points, opts);
  CommandResult res;
  res.table.schema = "parrondo.scan/1";
  res.table.columns =
      with_p_columns({"n", "scheduler", "method"},
                     {"mu_B", "ci_B", "mu_C", "ci_C", "effect", "ergodic", "ergodic_margin", "error"});
  int failed = 0;
  for (const auto& rec : records) {
    std::vector<Cell> row{opts.n, describe(opts.sched), method};
    push_p(row, rec.params);
    if (rec.error.empty()) {
      row.insert(row.end(), {rec.mu_B, rec.ci_B, rec.mu_C, rec.ci_C, rec.effect, rec.ergodic,
                             rec.ergodic_margin, std::string()});
    } else {
      ++failed;
      row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                             std::monostate{}, rec.ergodic, rec.ergodic_margin, rec.error});
    }
    res.table.add(std::move(row));
  }
  if (failed) {
    res.exit_code = kExitNotConverged;
    res.messages.push_back(std::to_string(failed) + " of " + std::to_string(records.size()) +
                           " grid points failed; see the error column");
  }
  return res;
}

CommandResult convergence(const Params& params) {
  const auto sched = params.scheduler();
  const GameParams p = params.probs("p");
  const auto ns = params.int_list("n");
  for (int n : ns) check_exact_size(n);
  const auto rows = convergence_table(p, sched, ns, solver_options(params));

  CommandResult res;
  res.table.schema = "parrondo.convergence/1";
  res.table.columns = with_p_columns({"n", "scheduler"},
                                     {"mu", "delta", "formula_delta", "solver_residual", "iterations", "error"});
  for (const auto& r : rows) {
    std::vector<Cell> row{static_cast<long long>(r.n), describe(sched)};
    push_p(row, p);
    if (r.value) {
      row.insert(row.end(), {r.value->mu, r.delta ? Cell(*r.delta) : Cell(), r.value->formula_delta,
                             r.value->solver_residual, static_cast<long long>(r.value->iterations),
                             std::string()});
      if (r.value->formula_delta > kFormulaAgreementTol && res.exit_code == kExitOk) {
        res.exit_code = kExitCheckFailed;
      }
    } else {
      row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
                             std::monostate{}, r.error});
      res.exit_code = kExitNotConverged;
      res.messages.push_back("n=" + std::to_string(r.n) + ": " + r.error);
    }
    res.table.add(std::move(row));
  }
  return res;
}

CommandResult generator_check(const Params& params) {
  const int k = static_cast<int>(params.integer("k"));
  if (k < 0 || k > kMaxCylinderHalfWidth) {
    throw InvalidArgument("--k must lie in 0.." + std::to_string(kMaxCylinderHalfWidth));
  }
  std::vector<double> table;
  const std::size_t size = std::size_t{1} << (2 * k + 1);
  if (params.has("f")) {
    table = params.reals("f");
  } else {
    const CounterStream stream(params.seed("seed"), 0x66);
    for (std::size_t i = 0; i < size; ++i) table.push_back(2.0 * stream.uniform_at(i) - 1.0);
  }
  const CylinderFunction f(k, std::move(table));

  const std::string game = params.text("game");
  const GameParams p = params.has("p") ? params.probs("p") : GameParams{};
  if (game != "aprime" && !params.has("p")) throw InvalidArgument("missing required parameter --p");
  LabGame lab;
  if (game == "aprime") {
    lab = AprimeGame{};
  } else if (game == "b") {
    lab = BGame{};
  } else if (game == "mixture") {
    lab = MixtureGame{params.real("gamma")};
  } else if (game == "periodic") {
    lab = PeriodicGame{static_cast<int>(params.integer("r")), static_cast<int>(params.integer("s"))};
  } else {
    throw InvalidArgument("--game must be aprime, b, mixture or periodic, got '" + game + "'");
  }

  CommandResult res;
  res.table.schema = "parrondo.generator-check/1";
  res.table.columns = {"game", "k", "n", "check", "residual", "within_hypothesis"};
  for (int n : params.int_list("n")) {
    if (const auto* per = std::get_if<PeriodicGame>(&lab)) {
      const std::optional<int> margin =
          params.has("margin") ? std::optional<int>(static_cast<int>(params.integer("margin"))) : std::nullopt;
      const double residual = periodic_residual(f, n, per->r, per->s, p, margin);
      res.table.add({game, static_cast<long long>(k), static_cast<long long>(n), std::string("periodic"), residual,
                     std::monostate{}});
    } else {
      const LemmaCheck chk = lemma_check(f, n, lab, p);
      res.table.add({game, static_cast<long long>(k), static_cast<long long>(n), std::string("lemma"),
                     chk.residual, chk.within_hypothesis});
      if (chk.within_hypothesis && chk.residual > kGeneratorTol) {
        res.exit_code = kExitCheckFailed;
        res.messages.push_back("n=" + std::to_string(n) + ": generator residual " + format_double(chk.residual) +
                               " exceeds " + format_double(kGeneratorTol));
      }
    }
  }
  return res;
}

}  // namespace

ParamSpec Command::spec(const std::string& name) const {
  ParamSpec s = spec_of(name);
  for (const auto& p : params) {
    if (p.name == name && p.kind) s.kind = *p.kind;
  }
  return s;
}

bool Command::accepts(const std::string& name) const {
  return std::any_of(params.begin(), params.end(), [&](const CommandParam& p) { return p.name == name; });
}

const std::vector<Command>& commands() {
  using P = CommandParam;
  static const std::vector<Command> all = {
      {"exact-mean",
       "exact equilibrium mean profit per turn on the 2^N-state chain",
       {P{"n", Kind::int_list}, P{"gamma"}, P{"r"}, P{"s"}, P{"game"}, P{"p"}, P{"tol"}, P{"max_iters"}},
       json::object(),
       true,
       "csv",
       exact_mean},
      {"ergodicity",
       "sufficient ergodicity condition M < epsilon, closed form and enumeration",
       {P{"gamma"}, P{"p"}},
       json::object(),
       false,
       "json",
       ergodicity},
      {"volume",
       "Monte Carlo volume of the parameter region satisfying the ergodicity condition",
       {P{"gamma"}, P{"samples"}, P{"seed"}, P{"constraint"}},
       json{{"samples", 1000000}, {"seed", 0}, {"constraint", "none"}},
       false,
       "csv",
       volume},
      {"simulate",
       "path simulation of the N-player chain with batch-means confidence intervals",
       {P{"n"}, P{"gamma"}, P{"r"}, P{"s"}, P{"game"}, P{"p"}, P{"turns"}, P{"burnin"}, P{"seed"}, P{"replicas"},
        P{"audit"}},
       json{{"turns", 1000000}, {"seed", 0}, {"replicas", 1}},
       true,
       "csv",
       simulate_cmd},
      {"scan",
       "grid search for parameters where B loses or breaks even and the combined game wins",
       {P{"n"}, P{"gamma"}, P{"r"}, P{"s"}, P{"game"}, P{"grid"}, P{"tie_p1_p2"}, P{"method"}, P{"turns"},
        P{"seed"}, P{"tol"}, P{"max_iters"}},
       json{{"n", 8}, {"method", "exact"}, {"turns", 1000000}, {"seed", 0}},
       true,
       "csv",
       scan},
      {"convergence",
       "exact mean profit over a range of N with successive differences",
       {P{"n", Kind::int_list}, P{"gamma"}, P{"r"}, P{"s"}, P{"game"}, P{"p"}, P{"tol"}, P{"max_iters"}},
       json::object(),
       true,
       "csv",
       convergence},
      {"generator-check",
       "discrete versus limiting generators on cylinder functions",
       {P{"k"}, P{"n", Kind::int_list}, P{"game"}, P{"gamma"}, P{"r"}, P{"s"}, P{"p"}, P{"seed"}, P{"f"},
        P{"margin"}},
       json{{"k", 1}, {"seed", 0}, {"game", "mixture"}, {"gamma", 0.5}},
       false,
       "csv",
       generator_check},
  };
  return all;
}

}  // namespace parrondo::cli

#include "netcfg/cli.hpp"

#include "netcfg/classical.hpp"
#include "netcfg/error.hpp"
#include "netcfg/experiments.hpp"
#include "netcfg/fis.hpp"
#include "netcfg/inequality.hpp"
#include "netcfg/quantum.hpp"
#include "netcfg/witness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#ifndef NETCFG_VERSION
#define NETCFG_VERSION "0.0.0"
#endif

namespace netcfg::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCategory::input, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCategory::input, "cannot open '" + path + "' for writing");
  f << text;
  if (!f.flush()) fail(ErrorCategory::input, "failed writing '" + path + "'");
}

nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::input, "malformed " + what + " JSON: " + e.what());
  }
}

// {"assignments": [[w, ...], ...]} or a bare array; entries are numbers or
// rational strings.
std::vector<std::vector<Rational>> parse_assignments(const nlohmann::json& doc) {
  const nlohmann::json& rows = doc.is_object() && doc.contains("assignments") ? doc.at("assignments") : doc;
  if (!rows.is_array()) fail(ErrorCategory::input, "assignments must be an array of per-source arrays");
  std::vector<std::vector<Rational>> out;
  for (const auto& row : rows) {
    if (!row.is_array()) fail(ErrorCategory::input, "each source assignment must be an array");
    std::vector<Rational> r;
    for (const auto& x : row) {
      if (x.is_string()) {
        r.push_back(parse_rational(x.get<std::string>()));
      } else if (x.is_number()) {
        r.push_back(parse_rational(x.dump()));
      } else {
        fail(ErrorCategory::input, "assignment entries must be numbers or rational strings");
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

struct StrategyFlags {
  std::string name = "greedy";
  int m = 1000;
  int k = 1;
  std::string variant = "a";
  std::string facet;
};

void add_strategy_flags(CLI::App* app, StrategyFlags& f, const std::string& flag, const std::string& choices) {
  app->add_option(flag, f.name, "Weight synthesis: " + choices)->capture_default_str();
  app->add_option("--m", f.m, "Family parameter m")->capture_default_str()->check(CLI::Range(2, 1'000'000'000));
  app->add_option("--k", f.k, "Family parameter k")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--variant", f.variant, "Family variant")->capture_default_str()->check(CLI::IsMember({"a", "b"}));
  app->add_option("--facet", f.facet, "Facet: even_parties, odd_parties, hub or leaves");
}

Strategy to_strategy(const StrategyFlags& f) {
  Strategy s;
  if (f.name == "greedy") {
    s.kind = Strategy::Kind::greedy;
  } else if (f.name == "optimal") {
    s.kind = Strategy::Kind::optimal;
  } else if (f.name == "family") {
    s.kind = Strategy::Kind::family;
  } else if (f.name == "facet") {
    s.kind = Strategy::Kind::facet;
  } else {
    fail(ErrorCategory::usage, "unknown strategy '" + f.name + "'");
  }
  s.m = f.m;
  s.k = f.k;
  s.variant = f.variant == "b" ? FamilyVariant::b : FamilyVariant::a;
  if (!f.facet.empty()) {
    s.facet = parse_facet_variant(f.facet);
    if (!s.facet) fail(ErrorCategory::usage, "unknown facet '" + f.facet + "'");
  }
  return s;
}

int category_exit(ErrorCategory c) { return c == ErrorCategory::usage ? kUsage : kInput; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Configuration inequalities for networks of independent sources", "netcfg"};
  app.set_version_flag("--version", std::string("netcfg ") + NETCFG_VERSION);
  app.require_subcommand(1);

  std::function<int()> action;

  // fis
  auto* fis = app.add_subcommand("fis", "Synthesise fractional independent set weights for a network");
  std::string fis_network, fis_assignments;
  StrategyFlags fis_flags;
  fis->add_option("--network", fis_network, "Network document")->required();
  fis->add_option("--algorithm", fis_flags.name, "greedy, decompose, optimal, family or facet")->capture_default_str();
  fis->add_option("--m", fis_flags.m, "Family parameter m")->capture_default_str()->check(CLI::Range(2, 1'000'000'000));
  fis->add_option("--k", fis_flags.k, "Family parameter k")->capture_default_str()->check(CLI::PositiveNumber);
  fis->add_option("--variant", fis_flags.variant, "Family variant")->capture_default_str()->check(CLI::IsMember({"a", "b"}));
  fis->add_option("--facet", fis_flags.facet, "Facet: even_parties, odd_parties, hub or leaves");
  fis->add_option("--assignments", fis_assignments, "Per-source assignments for --algorithm decompose");
  fis->callback([&] {
    action = [&] {
      const NetworkTopology t = parse_network(read_file(fis_network));
      FractionalWeights w;
      if (fis_flags.name == "decompose") {
        if (fis_assignments.empty()) fail(ErrorCategory::usage, "--algorithm decompose needs --assignments");
        w = fis_decomposed(t, parse_assignments(parse_json(read_file(fis_assignments), "assignments")));
      } else {
        w = weights_for(t, to_strategy(fis_flags));
      }
      if (!is_valid_fis(t, w)) fail(ErrorCategory::internal, "weights are not a fractional independent set");
      out << w.str() << '\n';
      return int{kOk};
    };
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "Compute the outcome distribution of a quantum or classical network");
  std::string sim_state, sim_basis, sim_classical, sim_out;
  auto* state_opt = sim->add_option("--state", sim_state, "Quantum state document");
  sim->add_option("--basis", sim_basis, "Measurement basis document (default: computational)")->needs(state_opt);
  auto* classical_opt = sim->add_option("--classical", sim_classical, "Classical network document");
  state_opt->excludes(classical_opt);
  sim->add_option("-o,--output", sim_out, "Output distribution document (default: stdout)");
  sim->callback([&] {
    action = [&] {
      OutcomeDistribution d;
      if (!sim_classical.empty()) {
        d = classical_joint(parse_classical(read_file(sim_classical)));
      } else if (!sim_state.empty()) {
        const NetworkQuantumState s = parse_state(read_file(sim_state));
        std::vector<MeasurementBasis> bases;
        if (!sim_basis.empty()) bases = parse_bases(read_file(sim_basis), s);
        d = born_distribution(s, bases);
      } else {
        fail(ErrorCategory::usage, "simulate needs --state or --classical");
      }
      write_output(sim_out, serialize_distribution(d).dump(2) + "\n", out);
      return int{kOk};
    };
  });

  // check
  auto* check = app.add_subcommand("check", "Test a distribution against a configuration inequality");
  std::string check_dist, check_network, check_weights;
  StrategyFlags check_flags;
  double check_tol = kDefaultTolerance;
  bool check_chain = false, check_summary = false;
  check->add_option("--dist", check_dist, "Distribution document")->required();
  auto* net_opt = check->add_option("--network", check_network, "Network document to synthesise weights for");
  auto* weights_opt = check->add_option("--weights", check_weights, "Explicit weights, e.g. \"1/2,1/2,1/2\"");
  auto* chain_opt = check->add_flag("--chain-min", check_chain, "Use the two-sided chain bound with --m and --k");
  add_strategy_flags(check, check_flags, "--algorithm", "greedy, optimal, family or facet");
  check->add_option("--tol", check_tol, "Violation tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);
  check->add_flag("--summary", check_summary, "Print only the summary line");
  chain_opt->excludes(weights_opt)->excludes(net_opt);
  check->callback([&] {
    action = [&] {
      const OutcomeDistribution d = parse_distribution(read_file(check_dist));
      ViolationReport r;
      if (check_chain) {
        r = chain_min_check(d, check_flags.m, check_flags.k, check_tol);
        out << "bound: chain min m=" << check_flags.m << " k=" << check_flags.k << '\n';
      } else {
        FractionalWeights w;
        if (!check_weights.empty()) {
          w = parse_weights(check_weights);
          if (!check_network.empty()) {
            const NetworkTopology t = parse_network(read_file(check_network));
            if (!is_valid_fis(t, w)) fail(ErrorCategory::validation, "weights are not a fractional independent set of the network");
          }
        } else if (!check_network.empty()) {
          const NetworkTopology t = parse_network(read_file(check_network));
          w = weights_for(t, to_strategy(check_flags));
        } else {
          fail(ErrorCategory::usage, "check needs --network, --weights or --chain-min");
        }
        r = check_config(d, w, check_tol);
        out << "weights: " << w.str() << " [" << w.provenance.str() << "]\n";
      }
      print_report(out, r, !check_summary);
      return r.violated ? int{kSignal} : int{kOk};
    };
  });

  // witness
  auto* wit = app.add_subcommand("witness", "Witness multipartite entanglement of a pure network state");
  std::string wit_state, wit_basis;
  double wit_tol = kDefaultTolerance;
  wit->add_option("--state", wit_state, "Quantum state document")->required();
  wit->add_option("--basis", wit_basis, "Measurement basis document (default: computational)");
  wit->add_option("--tol", wit_tol, "Dependence tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);
  wit->callback([&] {
    action = [&] {
      const NetworkQuantumState s = parse_state(read_file(wit_state));
      std::vector<MeasurementBasis> bases;
      if (!wit_basis.empty()) bases = parse_bases(read_file(wit_basis), s);
      const WitnessVerdict v = witness_entanglement(s, bases, wit_tol);
      print_witness(out, v);
      return v.overall == WitnessOverall::entangled ? int{kSignal} : int{kOk};
    };
  });

  // compat
  auto* compat = app.add_subcommand("compat", "Try to refute that a distribution comes from a candidate network");
  std::string compat_dist, compat_network;
  StrategyFlags compat_flags;
  double compat_tol = kDefaultTolerance;
  compat->add_option("--dist", compat_dist, "Distribution document")->required();
  compat->add_option("--network", compat_network, "Candidate network document")->required();
  add_strategy_flags(compat, compat_flags, "--strategy", "greedy, optimal, family or facet");
  compat->add_option("--tol", compat_tol, "Violation tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);
  compat->callback([&] {
    action = [&] {
      const OutcomeDistribution d = parse_distribution(read_file(compat_dist));
      const NetworkTopology t = parse_network(read_file(compat_network));
      const CompatibilityVerdict v = compatibility_check(d, t, to_strategy(compat_flags), compat_tol);
      print_compatibility(out, v);
      return v.conclusion == Compatibility::incompatible ? int{kSignal} : int{kOk};
    };
  });

  // scan
  auto* scan = app.add_subcommand("scan", "Scan (theta, v) for a noisy experiment and write CSV");
  std::string scan_exp, scan_ineq = "fin3", scan_out;
  int scan_grid = 200, scan_m = 1000, scan_n = 4, scan_theta = 0, scan_v = 0;
  std::optional<double> scan_gamma;
  double scan_tol = 1e-9;
  scan->add_option("--experiment", scan_exp, "noisy_ghz, noisy_w, noisy_triangle or noisy_star")
      ->required()
      ->check(CLI::IsMember({"noisy_ghz", "noisy_w", "noisy_triangle", "noisy_star"}));
  scan->add_option("--n", scan_n, "Party count for noisy_star")->capture_default_str()->check(CLI::Range(3, 12));
  scan->add_option("--gamma", scan_gamma, "Fixed gamma for noisy_w (default: gamma = theta)");
  scan->add_option("--grid", scan_grid, "Points per axis")->capture_default_str()->check(CLI::Range(2, 1000));
  scan->add_option("--theta-points", scan_theta, "Theta points (overrides --grid)")->check(CLI::Range(2, 1'000'000));
  scan->add_option("--v-points", scan_v, "Visibility points (overrides --grid)")->check(CLI::Range(2, 1'000'000));
  scan->add_option("--m", scan_m, "Chain parameter m for fin3")->capture_default_str()->check(CLI::Range(2, 1'000'000'000));
  scan->add_option("--inequality", scan_ineq, "fin1 or fin3")->capture_default_str()->check(CLI::IsMember({"fin1", "fin3"}));
  scan->add_option("--tol", scan_tol, "Violation tolerance")->capture_default_str()->check(CLI::NonNegativeNumber);
  scan->add_option("-o,--output", scan_out, "Output CSV (default: stdout)");
  scan->callback([&] {
    action = [&] {
      ExperimentSpec e;
      e.kind = *parse_experiment(scan_exp);
      e.star_parties = scan_n;
      e.gamma = scan_gamma;
      const RegionTable r = region_scan(e, scan_theta ? scan_theta : scan_grid, scan_v ? scan_v : scan_grid, scan_m,
                                        *parse_inequality(scan_ineq), scan_tol);
      std::ostringstream csv;
      write_csv(csv, r);
      write_output(scan_out, csv.str(), out);
      return int{kOk};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "ERROR:usage:" << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "ERROR:" << to_string(e.category()) << ':' << e.what() << '\n';
    return category_exit(e.category());
  }

  try {
    if (!action) {
      err << "ERROR:usage:no subcommand given\n";
      return kUsage;
    }
    return action();
  } catch (const Error& e) {
    err << "ERROR:" << to_string(e.category()) << ':' << e.what() << '\n';
    return category_exit(e.category());
  } catch (const nlohmann::json::exception& e) {
    err << "ERROR:input:" << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    err << "ERROR:internal:" << e.what() << '\n';
    return kInput;
  }
}

}  // namespace netcfg::cli

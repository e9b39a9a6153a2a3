#include "netcfg/experiments.hpp"

#include "netcfg/error.hpp"
#include "netcfg/inequality.hpp"
#include "netcfg/quantum.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace netcfg {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

double visibility_threshold_ghz(double theta) {
  if (!(theta > 0 && theta < std::numbers::pi / 2)) fail(ErrorCategory::usage, "theta must lie in (0, pi/2)");
  const double c = std::cos(2 * theta);
  const double x = c * c;
  return 2 / (3 + std::sqrt(9 - 8 * x));
}

std::optional<Experiment> parse_experiment(std::string_view s) {
  if (s == "noisy_ghz") return Experiment::noisy_ghz;
  if (s == "noisy_w") return Experiment::noisy_w;
  if (s == "noisy_triangle") return Experiment::noisy_triangle;
  if (s == "noisy_star") return Experiment::noisy_star;
  return std::nullopt;
}

std::optional<InequalityId> parse_inequality(std::string_view s) {
  if (s == "fin1") return InequalityId::fin1;
  if (s == "fin3") return InequalityId::fin3;
  return std::nullopt;
}

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::noisy_ghz: return "noisy_ghz";
    case Experiment::noisy_w: return "noisy_w";
    case Experiment::noisy_triangle: return "noisy_triangle";
    case Experiment::noisy_star: return "noisy_star";
  }
  return "noisy_ghz";
}

std::string_view to_string(InequalityId i) { return i == InequalityId::fin1 ? "fin1" : "fin3"; }

OutcomeDistribution experiment_distribution(const ExperimentSpec& e, double theta, double v) {
  switch (e.kind) {
    case Experiment::noisy_ghz:
      return born_distribution(assemble({add_noise(make_state(state::Ghz{theta, 3}), v)}, {{0, 1, 2}}));
    case Experiment::noisy_w: {
      const double gamma = e.gamma.value_or(theta);
      return born_distribution(assemble({add_noise(make_state(state::W3{theta, gamma}), v)}, {{0, 1, 2}}));
    }
    case Experiment::noisy_triangle: {
      const QuantumComponent epr = add_noise(make_state(state::Epr{theta}), v);
      return born_distribution(assemble({epr, epr, epr}, {{0, 1}, {1, 2}, {0, 2}}));
    }
    case Experiment::noisy_star: {
      const int n = e.star_parties;
      if (n < 3) fail(ErrorCategory::usage, "noisy star needs at least 3 parties");
      const QuantumComponent epr = add_noise(make_state(state::Epr{theta}), v);
      std::vector<QuantumComponent> comps(n - 1, epr);
      std::vector<std::vector<int>> assignment;
      for (int j = 0; j + 1 < n; ++j) assignment.push_back({j, n - 1});
      return born_distribution(assemble(std::move(comps), std::move(assignment), n));
    }
  }
  fail(ErrorCategory::internal, "unknown experiment");
}

double experiment_margin(const ExperimentSpec& e, double theta, double v, int m, InequalityId ineq) {
  const OutcomeDistribution d = experiment_distribution(e, theta, v);
  if (ineq == InequalityId::fin1) {
    const std::vector<double> s(d.party_count(), 0.5);
    return max_violation(d, std::span<const double>(s)).margin;
  }
  return max_chain_violation(d, m, 1).margin;
}

RegionTable region_scan(const ExperimentSpec& e, int theta_points, int v_points, int m, InequalityId ineq,
                        double tolerance) {
  if (theta_points < 2 || v_points < 2) fail(ErrorCategory::usage, "grid resolution must be >= 2");
  if (m < 2) fail(ErrorCategory::usage, "m must be >= 2");
  if (static_cast<double>(theta_points) * v_points > static_cast<double>(kMaxGridPoints)) {
    fail(ErrorCategory::limit, "grid exceeds " + std::to_string(kMaxGridPoints) + " points");
  }
  RegionTable r;
  r.experiment = e;
  r.inequality = ineq;
  r.m = m;
  r.theta_points = theta_points;
  r.v_points = v_points;
  r.tolerance = tolerance;
  r.rows.reserve(static_cast<std::size_t>(theta_points) * v_points);
  for (int i = 0; i < theta_points; ++i) {
    const double theta = (i + 0.5) * (std::numbers::pi / 2) / theta_points;
    for (int j = 0; j < v_points; ++j) {
      const double v = (j + 0.5) / v_points;
      const double margin = experiment_margin(e, theta, v, m, ineq);
      r.rows.push_back({theta, v, margin, margin > tolerance});
    }
  }
  return r;
}

std::optional<double> threshold_bisect(const ExperimentSpec& e, double theta, int m, InequalityId ineq,
                                       double precision, double tolerance) {
  if (!(precision > 0)) fail(ErrorCategory::usage, "precision must be positive");
  auto violated = [&](double v) { return experiment_margin(e, theta, v, m, ineq) > tolerance; };
  if (!violated(1.0)) return std::nullopt;
  double lo = 0, hi = 1;
  if (violated(0.0)) return 0.0;
  while (hi - lo > precision) {
    const double mid = (lo + hi) / 2;
    (violated(mid) ? hi : lo) = mid;
  }
  return hi;
}

void write_csv(std::ostream& os, const RegionTable& r) {
  os << "# experiment=" << to_string(r.experiment.kind) << '\n';
  if (r.experiment.kind == Experiment::noisy_star) os << "# star_parties=" << r.experiment.star_parties << '\n';
  if (r.experiment.kind == Experiment::noisy_w) {
    os << "# gamma=" << (r.experiment.gamma ? fmt(*r.experiment.gamma) : std::string("theta")) << '\n';
  }
  os << "# inequality=" << to_string(r.inequality) << '\n';
  os << "# m=" << r.m << '\n';
  os << "# theta_points=" << r.theta_points << '\n';
  os << "# v_points=" << r.v_points << '\n';
  os << "# tolerance=" << fmt(r.tolerance) << '\n';
  os << "theta,v,margin,violated\n";
  for (const auto& row : r.rows) {
    os << fmt(row.theta) << ',' << fmt(row.v) << ',' << fmt(row.margin) << ',' << (row.violated ? 1 : 0) << '\n';
  }
}

void emit_csv(const RegionTable& r, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCategory::input, "cannot open '" + path.string() + "' for writing");
  write_csv(out, r);
  out.flush();
  if (!out) fail(ErrorCategory::input, "failed writing '" + path.string() + "'");
}

std::vector<RegionRow> parse_region_csv(std::istream& is) {
  std::vector<RegionRow> rows;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "theta,v,margin,violated") fail(ErrorCategory::input, "unexpected CSV header '" + line + "'");
      header = true;
      continue;
    }
    std::istringstream ls(line);
    RegionRow row{};
    std::string cell[4];
    for (auto& c : cell) {
      if (!std::getline(ls, c, ',')) fail(ErrorCategory::input, "short CSV row '" + line + "'");
    }
    try {
      row.theta = std::stod(cell[0]);
      row.v = std::stod(cell[1]);
      row.margin = std::stod(cell[2]);
    } catch (const std::exception&) {
      fail(ErrorCategory::input, "bad number in CSV row '" + line + "'");
    }
    if (cell[3] != "0" && cell[3] != "1") fail(ErrorCategory::input, "violated column must be 0 or 1");
    row.violated = cell[3] == "1";
    rows.push_back(row);
  }
  if (!header) fail(ErrorCategory::input, "CSV lacks a header");
  return rows;
}

}  // namespace netcfg

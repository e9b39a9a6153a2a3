#pragma once

#include "netcfg/distribution.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace netcfg {

/// Smallest visibility at which the noisy GHZ state violates the m -> infinity
/// chain facet at outcome (0,0,0): (3 - sqrt(9 - 8x)) / (4x) with x =
/// cos^2(2 theta), evaluated as 2 / (3 + sqrt(9 - 8x)) so theta = pi/4 gives
/// the limit 1/3. theta must lie in (0, pi/2).
double visibility_threshold_ghz(double theta);

enum class Experiment { noisy_ghz, noisy_w, noisy_triangle, noisy_star };
enum class InequalityId { fin1, fin3 };

std::optional<Experiment> parse_experiment(std::string_view s);
std::optional<InequalityId> parse_inequality(std::string_view s);
std::string_view to_string(Experiment e);
std::string_view to_string(InequalityId i);

struct ExperimentSpec {
  Experiment kind = Experiment::noisy_ghz;
  int star_parties = 4;                // noisy_star only
  std::optional<double> gamma;         // noisy_w only; defaults to gamma = theta
};

/// Computational-basis distribution of the noisy experiment at (theta, v).
OutcomeDistribution experiment_distribution(const ExperimentSpec& e, double theta, double v);

/// Max margin of `ineq` on that distribution: fin1 uses weights 1/2 on every
/// party, fin3 the two-sided chain bound with (m, k = 1).
double experiment_margin(const ExperimentSpec& e, double theta, double v, int m, InequalityId ineq);

inline constexpr std::size_t kMaxGridPoints = 1'000'000;

struct RegionRow {
  double theta;
  double v;
  double margin;
  bool violated;
};

struct RegionTable {
  ExperimentSpec experiment;
  InequalityId inequality = InequalityId::fin3;
  int m = 1000;
  int theta_points = 0;
  int v_points = 0;
  double tolerance = 1e-9;
  std::vector<RegionRow> rows;  // theta outer, v inner
};

/// Cell-centred grid: theta_i = (i + 1/2)(pi/2)/N_theta, v_j = (j + 1/2)/N_v.
RegionTable region_scan(const ExperimentSpec& e, int theta_points, int v_points, int m,
                        InequalityId ineq, double tolerance = 1e-9);

/// Smallest v in [0,1] at which the margin exceeds `tolerance`, by bisection
/// to `precision`. nullopt if v = 1 does not violate.
std::optional<double> threshold_bisect(const ExperimentSpec& e, double theta, int m,
                                       InequalityId ineq, double precision = 1e-4,
                                       double tolerance = 1e-9);

/// "#"-prefixed parameter lines, header "theta,v,margin,violated", rows with
/// 9 significant digits and violated as 0/1.
void write_csv(std::ostream& os, const RegionTable& r);
void emit_csv(const RegionTable& r, const std::filesystem::path& path);
/// Parses rows back (comment lines skipped).
std::vector<RegionRow> parse_region_csv(std::istream& is);

}  // namespace netcfg

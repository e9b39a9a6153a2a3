#pragma once

#include "netcfg/distribution.hpp"
#include "netcfg/fis.hpp"
#include "netcfg/rational.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace netcfg {

inline constexpr double kDefaultTolerance = 1e-9;

struct OutcomeEvaluation {
  Outcome outcome;
  double lhs = 0;     // P(a)
  double rhs = 0;     // bound
  double margin = 0;  // lhs - rhs
  double ratio = 0;   // lhs / rhs (inf when rhs == 0 < lhs)
};

struct ViolationReport {
  std::vector<OutcomeEvaluation> entries;
  double max_margin = 0;
  std::optional<Outcome> argmax;
  bool violated = false;
  double tolerance = kDefaultTolerance;
};

/// prod_j p_j(a_j)^{s_j} with 0^0 = 1.
double product_bound(const OutcomeDistribution& d, std::span<const int> outcome,
                     std::span<const double> exponents);

/// Evaluates P(a) <= prod_j p(a_j)^{s_j} on every outcome with P(a) > 0.
/// Ties for the maximum margin go to the lexicographically first outcome.
ViolationReport check_config(const OutcomeDistribution& d, const FractionalWeights& w,
                             double tolerance = kDefaultTolerance);
ViolationReport check_config(const OutcomeDistribution& d, std::span<const double> exponents,
                             double tolerance = kDefaultTolerance);

/// The two-sided chain bound: RHS is the smaller of the products with
/// (m-k)/m on odd parties and k/m on even parties, and vice versa.
ViolationReport chain_min_check(const OutcomeDistribution& d, int m, int k,
                                double tolerance = kDefaultTolerance);

struct MaxViolation {
  double margin;
  Outcome outcome;
};

/// max over all outcomes of P(a) - prod p(a_j)^{s_j}; first maximum in
/// lexicographic order.
MaxViolation max_violation(const OutcomeDistribution& d, const FractionalWeights& w);
MaxViolation max_violation(const OutcomeDistribution& d, std::span<const double> exponents);
/// Same for the two-sided chain bound.
MaxViolation max_chain_violation(const OutcomeDistribution& d, int m, int k);

struct ExpectationResult {
  double lhs;
  double rhs;
  bool satisfied;
};

/// E[prod f_j] <= prod_j (E[f_j^{1/s_j}])^{s_j}; for s_j = 0 the factor is
/// max{f_j(a) : p_j(a) > 0}. `post[j][a]` must be non-negative.
ExpectationResult expectation_finner(const OutcomeDistribution& d,
                                     const std::vector<std::vector<double>>& post,
                                     const FractionalWeights& w,
                                     double tolerance = kDefaultTolerance);

/// Largest common denominator check_config_exact will raise powers to.
inline constexpr long kMaxExactDenominator = 64;

/// Exact test of P(a) <= prod p_j(a_j)^{s_j} for a rational table: with D the
/// common denominator of s, compares P^D against prod p_j^{D s_j}. Returns
/// the outcomes (row-major indices) that violate.
std::vector<std::size_t> check_config_exact(std::span<const int> alphabets,
                                            std::span<const Rational> table,
                                            const std::vector<Rational>& weights);

/// Table "outcome lhs rhs margin" followed by the summary line
/// "VIOLATED margin=<x> at <outcome>" or "SATISFIED".
void print_report(std::ostream& os, const ViolationReport& r, bool include_table = true);

}  // namespace netcfg

#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace netcfg {

using Outcome = std::vector<int>;

/// Largest dense outcome table accepted.
inline constexpr std::size_t kMaxOutcomeCount = std::size_t{1} << 24;

/// Joint probability table over per-party finite alphabets. Stored densely in
/// row-major order (party 1 varies slowest). Single-party marginals are
/// computed on construction; the object is immutable afterwards.
class OutcomeDistribution {
 public:
  OutcomeDistribution() = default;

  /// Validates: entries in [0,1] (entries in [-1e-12, 0) are clamped to 0),
  /// total within 1e-9 of 1.
  OutcomeDistribution(std::vector<int> alphabets, std::vector<double> probs,
                      std::vector<std::string> names = {});

  int party_count() const noexcept { return static_cast<int>(alphabets_.size()); }
  const std::vector<int>& alphabets() const noexcept { return alphabets_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  std::size_t outcome_count() const noexcept { return probs_.size(); }

  std::size_t index_of(std::span<const int> outcome) const;
  Outcome outcome_at(std::size_t index) const;

  double operator()(std::span<const int> outcome) const { return probs_[index_of(outcome)]; }
  double operator()(std::initializer_list<int> outcome) const {
    return (*this)(std::span<const int>(outcome.begin(), outcome.size()));
  }

  /// p_j(a_j) for 0-based party j.
  const std::vector<double>& marginal(int party) const { return marginals_.at(party); }

 private:
  std::vector<int> alphabets_;
  std::vector<std::string> names_;
  std::vector<double> probs_;
  std::vector<std::vector<double>> marginals_;
};

/// Exact summation over the parties outside `subset` (0-based, in the order
/// given). Throws on an empty or out-of-range subset.
OutcomeDistribution marginal(const OutcomeDistribution& d, std::span<const int> subset);
OutcomeDistribution marginal(const OutcomeDistribution& d, std::initializer_list<int> subset);

/// Builds a distribution from sparse (outcome, p) pairs; missing outcomes are 0.
OutcomeDistribution from_entries(std::vector<int> alphabets,
                                 const std::vector<std::pair<Outcome, double>>& entries,
                                 std::vector<std::string> names = {});

/// {"parties":[{"name","alphabet"}], "probs":[{"outcome":[...],"p":x}]}.
/// Outcome symbols are 0-based. Omitted outcomes are zero.
OutcomeDistribution distribution_from_json(const nlohmann::json& doc);
OutcomeDistribution parse_distribution(std::string_view text);
/// Emits nonzero entries in row-major outcome order.
nlohmann::json serialize_distribution(const OutcomeDistribution& d);

std::string format_outcome(std::span<const int> outcome);

}  // namespace netcfg

#pragma once

#include "netcfg/distribution.hpp"
#include "netcfg/rational.hpp"
#include "netcfg/topology.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string_view>
#include <vector>

namespace netcfg {

/// Largest number of hidden-variable tuples classical_joint will enumerate.
inline constexpr std::uint64_t kMaxSourceTuples = 10'000'000;

/// Finite-alphabet source: probability of each value.
struct ClassicalSource {
  std::vector<double> probs;
};

/// Deterministic response of one party. `table` is indexed by the values of
/// the party's incident sources in ascending source order, mixed radix with
/// the last incident source varying fastest. A party with no incident source
/// has a one-entry table. Stochastic responses can be modelled by giving the
/// party a private source.
struct ResponseTable {
  int alphabet = 1;
  std::vector<int> table;
};

struct ClassicalNetwork {
  NetworkTopology topology;
  std::vector<ClassicalSource> sources;
  std::vector<ResponseTable> responses;
};

/// Validates sources (non-negative, sum within 1e-12) and responses (total,
/// in range). Throws Error(validation).
void validate_classical(const ClassicalNetwork& net);

/// P(a) = sum over source-value tuples of prod_j [response_j = a_j] prod mu.
/// Tuples are visited in a fixed lexicographic order.
OutcomeDistribution classical_joint(const ClassicalNetwork& net);

/// Same enumeration with exact rational source probabilities. Returns the
/// dense joint table; the outcome alphabets are the response alphabets.
std::vector<Rational> classical_joint_exact(const ClassicalNetwork& net,
                                            const std::vector<std::vector<Rational>>& source_probs);

/// Triangle of three independent bit pairs (x_i, y_i) = 00 w.p. p_i, 11 w.p.
/// 1 - p_i. a = 2 x1 + y3, b = 2 y1 + x2, c = 2 y2 + x3.
OutcomeDistribution triangle_bits(double p1, double p2, double p3);

/// The same distribution expressed as a classical network on sources
/// {1,2}, {2,3}, {1,3}.
ClassicalNetwork triangle_bits_network(double p1, double p2, double p3);

struct RandomNetworkBounds {
  int parties = 3;
  int sources = 3;
  int max_arity = 2;
  int max_alphabet = 2;
};

/// Deterministic in `seed` (uses only the raw mt19937_64 stream). Source
/// alphabets and party alphabets are drawn from [1, max_alphabet].
ClassicalNetwork random_classical_network(std::uint64_t seed, const RandomNetworkBounds& bounds);

/// Makes every source not in `keep` constant (value 0 with probability 1) and
/// re-indexes responses accordingly. Models "T1 inside T2".
ClassicalNetwork embed_in_supernetwork(const ClassicalNetwork& small, const NetworkTopology& big,
                                       const std::vector<int>& source_map);

/// {"network": <network doc>, "sources": [[p,...],...],
///  "responses": [{"alphabet": k, "rows": [{"in": [...], "out": a}, ...]}, ...]}
ClassicalNetwork classical_from_json(const nlohmann::json& doc);
ClassicalNetwork parse_classical(std::string_view text);
nlohmann::json serialize_classical(const ClassicalNetwork& net);

}  // namespace netcfg

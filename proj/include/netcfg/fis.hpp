#pragma once

#include "netcfg/rational.hpp"
#include "netcfg/topology.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace netcfg {

enum class FamilyKind { chain, star, cycle, complete };
enum class FamilyVariant { a, b };
enum class FacetVariant { even_parties, odd_parties, hub, leaves };

std::optional<FamilyKind> parse_family_kind(std::string_view s);
std::optional<FacetVariant> parse_facet_variant(std::string_view s);
std::string_view to_string(FamilyKind k);
std::string_view to_string(FacetVariant v);

/// Where a weight vector came from.
struct Provenance {
  enum class Kind { greedy, decomposed, family, optimal, facet, user };
  Kind kind = Kind::user;
  std::string detail;  // e.g. "chain m=5 k=2 variant=a"

  std::string str() const;
};

/// Exponent vector s = (s_1..s_n) of a configuration inequality. Values are
/// exact; `decimal_values` keeps user-supplied decimals so they can be used
/// as typed when exponentiating.
struct FractionalWeights {
  std::vector<Rational> values;
  Provenance provenance;
  std::optional<std::vector<double>> decimal_values;

  std::size_t size() const noexcept { return values.size(); }
  std::vector<double> exponents() const;
  /// Space-separated "p/q" rendering in party order.
  std::string str() const;
};

/// Parses "1/2,1/2,0.25" (commas or whitespace). Entries must lie in [0,1].
FractionalWeights parse_weights(std::string_view text);

/// Every source e satisfies sum_{j in e} s_j <= 1 and each 0 <= s_j <= 1,
/// compared exactly. Throws on length mismatch.
bool is_valid_fis(const NetworkTopology& t, const FractionalWeights& w);
bool is_valid_fis(const NetworkTopology& t, const std::vector<Rational>& s);

/// Each source of arity m_j offers 1/m_j; party i takes the minimum over its
/// incident sources. Isolated parties get 1.
FractionalWeights fis_greedy(const NetworkTopology& t);

/// `per_source[e][p]` is the value assigned to the p-th listed party of
/// source e. Each row must be non-negative with sum <= 1. Party i takes the
/// minimum over incident sources; isolated parties get 1.
FractionalWeights fis_decomposed(const NetworkTopology& t,
                                 const std::vector<std::vector<Rational>>& per_source);

/// Parametric families for the builtin topologies.
///   chain/cycle, variant a: even n -> (k/m, (m-k)/m, ...); odd n ->
///     ((m-k)/m, k/m, ..., (m-k)/m)
///   chain/cycle, variant b: even n -> ((m-k)/m, k/m, ..., k/m); odd n ->
///     ((m-k)/m, k/m, ..., k/m, k/m), needing 2k <= m
///   star a: leaves k/m, hub (m-k)/m; star b: swapped
///   complete: 1/m everywhere, where m is the source arity (k ignored)
/// Odd cycles additionally need 2k >= m for variant a.
FractionalWeights fis_family(FamilyKind kind, int n, int m, int k,
                             FamilyVariant variant = FamilyVariant::a);

/// The topology a family's weights are meant for.
NetworkTopology family_topology(FamilyKind kind, int n, int m);

/// Largest parties and sources fis_optimal accepts.
inline constexpr int kMaxOptimalParties = 32;
inline constexpr int kMaxOptimalSources = 128;

/// Maximises sum objective_j * s_j over the fractional independent set
/// polytope, exactly. Among optimal points picks the lexicographically
/// largest (s_1 first). Empty objective means all ones.
FractionalWeights fis_optimal(const NetworkTopology& t, const std::vector<Rational>& objective = {});

/// The m -> infinity limits of fis_family: 0/1 vectors.
FractionalWeights facet_weights(FamilyKind kind, int n, FacetVariant variant);

Rational objective_value(const std::vector<Rational>& objective, const FractionalWeights& w);

}  // namespace netcfg

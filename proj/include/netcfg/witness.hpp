#pragma once

#include "netcfg/distribution.hpp"
#include "netcfg/fis.hpp"
#include "netcfg/inequality.hpp"
#include "netcfg/quantum.hpp"
#include "netcfg/topology.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace netcfg {

/// Result of testing P(x, y) <= p(x) p(y) on one pair of parties.
struct PairVerdict {
  int first = 0;   // 0-based party indices
  int second = 1;
  bool dependent = false;
  double margin = 0;         // max over outcomes of P(x,y) - p(x)p(y)
  Outcome outcome;           // where the maximum sits
};

/// Two-party distribution only. Dependent iff max margin > tolerance; since
/// the deviations sum to zero, any positive margin certifies dependence.
PairVerdict pair_independence(const OutcomeDistribution& d2, double tolerance = kDefaultTolerance);

enum class WitnessOverall { entangled, inconclusive };

struct WitnessVerdict {
  std::vector<PairVerdict> pairs;
  WitnessOverall overall = WitnessOverall::inconclusive;
  double tolerance = kDefaultTolerance;
  int pair_tests = 0;
};

/// Tests adjacent pairs (1,2), (2,3), ..., (n-1,n) of a pure state, or the
/// given `pairs` (e.g. a spanning tree). Entangled iff every tested pair is
/// dependent; otherwise inconclusive. A negative pair test in one basis is
/// not evidence of separability. Throws if purity < 1 - 1e-9 or n < 2.
WitnessVerdict witness_entanglement(const NetworkQuantumState& s,
                                    std::span<const MeasurementBasis> bases = {},
                                    double tolerance = kDefaultTolerance,
                                    std::span<const std::pair<int, int>> pairs = {});

/// Merges parties into blocks; block outcome is the mixed-radix code of its
/// members' outcomes in the listed order. Blocks must partition the parties.
OutcomeDistribution coarse_grain(const OutcomeDistribution& d,
                                 const std::vector<std::vector<int>>& blocks);

/// P(S_1..S_k) <= prod_i P(S_i)^{(m-1)/m} on an already coarse-grained
/// distribution (k >= 2 block parties). A violation rules out
/// k-separability across that partition.
ViolationReport k_separability_test(const OutcomeDistribution& blocks, int m,
                                    double tolerance = kDefaultTolerance);

struct Strategy {
  enum class Kind { greedy, optimal, family, facet };
  Kind kind = Kind::greedy;
  int m = 1000;
  int k = 1;
  FamilyVariant variant = FamilyVariant::a;
  std::optional<FacetVariant> facet;  // default: odd_parties (chain/cycle), hub (star)
};

enum class Compatibility { incompatible, not_refuted };

struct CompatibilityVerdict {
  NetworkTopology candidate;
  FractionalWeights weights;
  ViolationReport report;
  Compatibility conclusion = Compatibility::not_refuted;
};

/// Synthesises weights for `candidate` and runs check_config. Incompatible is
/// a refutation; not_refuted proves nothing. family/facet need the candidate
/// to be a recognised builtin topology.
CompatibilityVerdict compatibility_check(const OutcomeDistribution& d,
                                         const NetworkTopology& candidate, const Strategy& strategy,
                                         double tolerance = kDefaultTolerance);

FractionalWeights weights_for(const NetworkTopology& candidate, const Strategy& strategy);

void print_witness(std::ostream& os, const WitnessVerdict& v);
void print_compatibility(std::ostream& os, const CompatibilityVerdict& v);

}  // namespace netcfg

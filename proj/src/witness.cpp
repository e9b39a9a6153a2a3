#include "netcfg/witness.hpp"

#include "netcfg/error.hpp"

#include <cstdio>
#include <limits>
#include <ostream>

namespace netcfg {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

FamilyKind family_of(BuiltinKind b) {
  switch (b) {
    case BuiltinKind::chain: return FamilyKind::chain;
    case BuiltinKind::star: return FamilyKind::star;
    case BuiltinKind::cycle: return FamilyKind::cycle;
    case BuiltinKind::complete:
    case BuiltinKind::single_source: return FamilyKind::complete;
  }
  return FamilyKind::complete;
}

}  // namespace

PairVerdict pair_independence(const OutcomeDistribution& d2, double tolerance) {
  if (d2.party_count() != 2) fail(ErrorCategory::validation, "pair test needs a two-party distribution");
  const double ones[] = {1.0, 1.0};
  const MaxViolation mv = max_violation(d2, std::span<const double>(ones));
  PairVerdict v;
  v.margin = mv.margin;
  v.outcome = mv.outcome;
  v.dependent = mv.margin > tolerance;
  return v;
}

WitnessVerdict witness_entanglement(const NetworkQuantumState& s, std::span<const MeasurementBasis> bases,
                                    double tolerance, std::span<const std::pair<int, int>> pairs) {
  const int n = s.party_count();
  if (n < 2) fail(ErrorCategory::validation, "witnessing needs at least two parties");
  const double purity = s.purity();
  if (purity < 1 - 1e-9) {
    fail(ErrorCategory::validation, "witnessing needs a pure state (purity " + fmt(purity) + ")");
  }
  std::vector<std::pair<int, int>> tested(pairs.begin(), pairs.end());
  if (tested.empty()) {
    for (int i = 0; i + 1 < n; ++i) tested.emplace_back(i, i + 1);
  }
  const OutcomeDistribution d = born_distribution(s, bases);
  WitnessVerdict verdict;
  verdict.tolerance = tolerance;
  bool all = true;
  for (const auto& [i, j] : tested) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) fail(ErrorCategory::validation, "invalid party pair");
    PairVerdict pv = pair_independence(marginal(d, {i, j}), tolerance);
    pv.first = i;
    pv.second = j;
    all = all && pv.dependent;
    verdict.pairs.push_back(std::move(pv));
    ++verdict.pair_tests;
  }
  verdict.overall = all ? WitnessOverall::entangled : WitnessOverall::inconclusive;
  return verdict;
}

OutcomeDistribution coarse_grain(const OutcomeDistribution& d, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> seen(d.party_count(), 0);
  for (const auto& b : blocks) {
    if (b.empty()) fail(ErrorCategory::validation, "blocks must be non-empty");
    for (int p : b) {
      if (p < 0 || p >= d.party_count()) fail(ErrorCategory::validation, "block party out of range");
      ++seen[p];
    }
  }
  for (int c : seen) {
    if (c != 1) fail(ErrorCategory::validation, "blocks must partition the parties");
  }
  std::vector<int> alph;
  std::vector<std::string> names;
  for (const auto& b : blocks) {
    int size = 1;
    std::string name;
    for (int p : b) {
      size *= d.alphabets()[p];
      name += d.names()[p];
    }
    alph.push_back(size);
    names.push_back(name);
  }
  std::size_t total = 1;
  for (int a : alph) total *= static_cast<std::size_t>(a);
  std::vector<double> probs(total, 0.0);
  for (std::size_t i = 0; i < d.outcome_count(); ++i) {
    const Outcome a = d.outcome_at(i);
    std::size_t idx = 0;
    for (std::size_t q = 0; q < blocks.size(); ++q) {
      int code = 0;
      for (int p : blocks[q]) code = code * d.alphabets()[p] + a[p];
      idx = idx * alph[q] + code;
    }
    probs[idx] += d.probs()[i];
  }
  return OutcomeDistribution(std::move(alph), std::move(probs), std::move(names));
}

ViolationReport k_separability_test(const OutcomeDistribution& blocks, int m, double tolerance) {
  if (blocks.party_count() < 2) fail(ErrorCategory::validation, "separability test needs at least two blocks");
  if (m < 2) fail(ErrorCategory::usage, "separability test needs m >= 2");
  const std::vector<double> s(blocks.party_count(), static_cast<double>(m - 1) / m);
  return check_config(blocks, std::span<const double>(s), tolerance);
}

FractionalWeights weights_for(const NetworkTopology& candidate, const Strategy& strategy) {
  switch (strategy.kind) {
    case Strategy::Kind::greedy: return fis_greedy(candidate);
    case Strategy::Kind::optimal: return fis_optimal(candidate);
    case Strategy::Kind::family:
    case Strategy::Kind::facet: {
      int arity = 2;
      const auto kind = recognize_builtin(candidate, &arity);
      if (!kind) fail(ErrorCategory::usage, "candidate is not a chain, star, cycle or complete network");
      const FamilyKind fk = family_of(*kind);
      const int n = candidate.party_count();
      if (strategy.kind == Strategy::Kind::family) {
        return fis_family(fk, n, fk == FamilyKind::complete ? arity : strategy.m, strategy.k, strategy.variant);
      }
      FacetVariant fv;
      if (strategy.facet) {
        fv = *strategy.facet;
      } else if (fk == FamilyKind::star) {
        fv = FacetVariant::hub;
      } else if (fk == FamilyKind::cycle && n % 2 == 1) {
        fv = FacetVariant::even_parties;
      } else {
        fv = FacetVariant::odd_parties;
      }
      return facet_weights(fk, n, fv);
    }
  }
  fail(ErrorCategory::internal, "unknown strategy");
}

CompatibilityVerdict compatibility_check(const OutcomeDistribution& d, const NetworkTopology& candidate,
                                         const Strategy& strategy, double tolerance) {
  if (d.party_count() != candidate.party_count()) {
    fail(ErrorCategory::validation, "distribution has " + std::to_string(d.party_count()) + " parties, candidate has " +
                                        std::to_string(candidate.party_count()));
  }
  CompatibilityVerdict v;
  v.candidate = candidate;
  v.weights = weights_for(candidate, strategy);
  if (!is_valid_fis(candidate, v.weights)) fail(ErrorCategory::internal, "synthesised weights are not independent");
  v.report = check_config(d, v.weights, tolerance);
  v.conclusion = v.report.violated ? Compatibility::incompatible : Compatibility::not_refuted;
  return v;
}

void print_witness(std::ostream& os, const WitnessVerdict& v) {
  for (const auto& p : v.pairs) {
    os << "pair (" << p.first + 1 << ',' << p.second + 1 << "): ";
    if (p.dependent) {
      os << "DEPENDENT margin=" << fmt(p.margin) << " at " << format_outcome(p.outcome) << '\n';
    } else {
      os << "INDEPENDENT margin=" << fmt(p.margin) << '\n';
    }
  }
  os << (v.overall == WitnessOverall::entangled ? "ENTANGLED" : "INCONCLUSIVE") << '\n';
}

void print_compatibility(std::ostream& os, const CompatibilityVerdict& v) {
  os << "weights: " << v.weights.str() << " [" << v.weights.provenance.str() << "]\n";
  print_report(os, v.report, false);
  if (v.conclusion == Compatibility::incompatible) {
    os << "INCOMPATIBLE with " << describe(v.candidate) << '\n';
  } else {
    os << "NOT REFUTED\n";
  }
}

}  // namespace netcfg

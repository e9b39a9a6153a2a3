#include "netcfg/inequality.hpp"

#include "netcfg/error.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

namespace netcfg {

namespace {

void check_arity(const OutcomeDistribution& d, std::size_t exponents) {
  if (static_cast<int>(exponents) != d.party_count()) {
    fail(ErrorCategory::validation, "weights have " + std::to_string(exponents) + " entries, distribution has " +
                                        std::to_string(d.party_count()) + " parties");
  }
}

void check_exponents(std::span<const double> s) {
  for (double x : s) {
    if (!(x >= 0 && x <= 1)) fail(ErrorCategory::validation, "exponents must lie in [0,1]");
  }
}

void check_chain_params(const OutcomeDistribution& d, int m, int k) {
  if (m < 2 || k < 1 || k > m - 1) fail(ErrorCategory::usage, "chain bound needs m >= 2 and 1 <= k <= m-1");
  if (d.party_count() < 2) fail(ErrorCategory::validation, "chain bound needs at least two parties");
}

std::pair<std::vector<double>, std::vector<double>> chain_exponents(int n, int m, int k) {
  const double hi = static_cast<double>(m - k) / m, lo = static_cast<double>(k) / m;
  std::vector<double> odd_hi(n), odd_lo(n);
  for (int j = 0; j < n; ++j) {
    const bool odd_index = j % 2 == 0;
    odd_hi[j] = odd_index ? hi : lo;
    odd_lo[j] = odd_index ? lo : hi;
  }
  return {odd_hi, odd_lo};
}

OutcomeEvaluation evaluate(Outcome a, double lhs, double rhs) {
  OutcomeEvaluation e;
  e.outcome = std::move(a);
  e.lhs = lhs;
  e.rhs = rhs;
  e.margin = lhs - rhs;
  e.ratio = rhs > 0 ? lhs / rhs : (lhs > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  return e;
}

template <class Bound>
ViolationReport report(const OutcomeDistribution& d, double tol, Bound&& bound) {
  ViolationReport r;
  r.tolerance = tol;
  r.max_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.outcome_count(); ++i) {
    const double lhs = d.probs()[i];
    if (lhs <= 0) continue;
    Outcome a = d.outcome_at(i);
    const double rhs = bound(a);
    r.entries.push_back(evaluate(std::move(a), lhs, rhs));
    if (r.entries.back().margin > r.max_margin) {
      r.max_margin = r.entries.back().margin;
      r.argmax = r.entries.back().outcome;
    }
  }
  r.violated = r.argmax.has_value() && r.max_margin > tol;
  return r;
}

template <class Bound>
MaxViolation maximise(const OutcomeDistribution& d, Bound&& bound) {
  MaxViolation best{-std::numeric_limits<double>::infinity(), {}};
  for (std::size_t i = 0; i < d.outcome_count(); ++i) {
    Outcome a = d.outcome_at(i);
    const double margin = d.probs()[i] - bound(a);
    if (margin > best.margin) best = {margin, std::move(a)};
  }
  return best;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

double product_bound(const OutcomeDistribution& d, std::span<const int> outcome, std::span<const double> exponents) {
  check_arity(d, exponents.size());
  double rhs = 1;
  for (int j = 0; j < d.party_count(); ++j) {
    if (exponents[j] == 0) continue;
    const double p = d.marginal(j).at(outcome[j]);
    if (p <= 0) return 0;
    rhs *= std::pow(p, exponents[j]);
  }
  return rhs;
}

ViolationReport check_config(const OutcomeDistribution& d, std::span<const double> exponents, double tolerance) {
  check_arity(d, exponents.size());
  check_exponents(exponents);
  return report(d, tolerance, [&](const Outcome& a) { return product_bound(d, a, exponents); });
}

ViolationReport check_config(const OutcomeDistribution& d, const FractionalWeights& w, double tolerance) {
  const auto s = w.exponents();
  return check_config(d, std::span<const double>(s), tolerance);
}

ViolationReport chain_min_check(const OutcomeDistribution& d, int m, int k, double tolerance) {
  check_chain_params(d, m, k);
  const auto [s1, s2] = chain_exponents(d.party_count(), m, k);
  return report(d, tolerance, [&](const Outcome& a) {
    return std::min(product_bound(d, a, s1), product_bound(d, a, s2));
  });
}

MaxViolation max_violation(const OutcomeDistribution& d, std::span<const double> exponents) {
  check_arity(d, exponents.size());
  check_exponents(exponents);
  return maximise(d, [&](const Outcome& a) { return product_bound(d, a, exponents); });
}

MaxViolation max_violation(const OutcomeDistribution& d, const FractionalWeights& w) {
  const auto s = w.exponents();
  return max_violation(d, std::span<const double>(s));
}

MaxViolation max_chain_violation(const OutcomeDistribution& d, int m, int k) {
  check_chain_params(d, m, k);
  const auto [s1, s2] = chain_exponents(d.party_count(), m, k);
  return maximise(d, [&](const Outcome& a) {
    return std::min(product_bound(d, a, s1), product_bound(d, a, s2));
  });
}

ExpectationResult expectation_finner(const OutcomeDistribution& d, const std::vector<std::vector<double>>& post,
                                     const FractionalWeights& w, double tolerance) {
  const auto s = w.exponents();
  check_arity(d, s.size());
  check_exponents(s);
  if (static_cast<int>(post.size()) != d.party_count()) fail(ErrorCategory::validation, "one function per party is required");
  for (int j = 0; j < d.party_count(); ++j) {
    if (static_cast<int>(post[j].size()) != d.alphabets()[j]) {
      fail(ErrorCategory::validation, "function for party " + std::to_string(j + 1) + " must cover its alphabet");
    }
    for (double f : post[j]) {
      if (!(f >= 0)) fail(ErrorCategory::validation, "post-processing values must be non-negative");
    }
  }
  double lhs = 0;
  for (std::size_t i = 0; i < d.outcome_count(); ++i) {
    if (d.probs()[i] == 0) continue;
    const Outcome a = d.outcome_at(i);
    double prod = d.probs()[i];
    for (int j = 0; j < d.party_count(); ++j) prod *= post[j][a[j]];
    lhs += prod;
  }
  double rhs = 1;
  for (int j = 0; j < d.party_count(); ++j) {
    const auto& p = d.marginal(j);
    if (s[j] == 0) {
      double sup = 0;
      for (int a = 0; a < d.alphabets()[j]; ++a) {
        if (p[a] > 0) sup = std::max(sup, post[j][a]);
      }
      rhs *= sup;
    } else {
      double norm = 0;
      for (int a = 0; a < d.alphabets()[j]; ++a) norm += p[a] * std::pow(post[j][a], 1 / s[j]);
      rhs *= std::pow(norm, s[j]);
    }
  }
  return {lhs, rhs, lhs <= rhs + tolerance};
}

std::vector<std::size_t> check_config_exact(std::span<const int> alphabets, std::span<const Rational> table,
                                            const std::vector<Rational>& weights) {
  const int n = static_cast<int>(alphabets.size());
  if (static_cast<int>(weights.size()) != n) fail(ErrorCategory::validation, "weights and alphabets differ in length");
  std::size_t total = 1;
  for (int a : alphabets) {
    if (a < 1) fail(ErrorCategory::validation, "alphabet sizes must be >= 1");
    total *= static_cast<std::size_t>(a);
  }
  if (table.size() != total) fail(ErrorCategory::validation, "table size does not match the alphabets");
  long den = 1;
  for (const auto& s : weights) {
    if (s < 0 || s > 1) fail(ErrorCategory::validation, "weights must lie in [0,1]");
    const BigInt q = boost::multiprecision::denominator(s);
    if (q > kMaxExactDenominator) fail(ErrorCategory::limit, "weight denominators must not exceed 64");
    den = std::lcm(den, q.convert_to<long>());
    if (den > kMaxExactDenominator) fail(ErrorCategory::limit, "common weight denominator exceeds 64");
  }
  std::vector<std::vector<Rational>> marg(n);
  for (int j = 0; j < n; ++j) marg[j].assign(alphabets[j], Rational(0));
  std::vector<int> a(n, 0);
  for (std::size_t i = 0; i < total; ++i) {
    for (int j = 0; j < n; ++j) marg[j][a[j]] += table[i];
    for (int j = n - 1; j >= 0; --j) {
      if (++a[j] < alphabets[j]) break;
      a[j] = 0;
    }
  }
  std::vector<unsigned> power(n);
  for (int j = 0; j < n; ++j) power[j] = (weights[j] * den).convert_to<unsigned>();
  std::vector<std::size_t> out;
  std::fill(a.begin(), a.end(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    if (table[i] > 0) {
      Rational lhs = 1;
      for (long r = 0; r < den; ++r) lhs *= table[i];
      Rational rhs = 1;
      for (int j = 0; j < n; ++j) {
        for (unsigned r = 0; r < power[j]; ++r) rhs *= marg[j][a[j]];
      }
      if (lhs > rhs) out.push_back(i);
    }
    for (int j = n - 1; j >= 0; --j) {
      if (++a[j] < alphabets[j]) break;
      a[j] = 0;
    }
  }
  return out;
}

void print_report(std::ostream& os, const ViolationReport& r, bool include_table) {
  if (include_table) {
    os << "outcome lhs rhs margin\n";
    for (const auto& e : r.entries) {
      os << format_outcome(e.outcome) << ' ' << fmt(e.lhs) << ' ' << fmt(e.rhs) << ' ' << fmt(e.margin) << '\n';
    }
  }
  if (r.violated) {
    os << "VIOLATED margin=" << fmt(r.max_margin) << " at " << format_outcome(*r.argmax) << '\n';
  } else {
    os << "SATISFIED\n";
  }
}

}  // namespace netcfg

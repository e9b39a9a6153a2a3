// Acceptance checks. Run with a criterion number, or with no argument to run all.
#include "netcfg/classical.hpp"
#include "netcfg/error.hpp"
#include "netcfg/experiments.hpp"
#include "netcfg/fis.hpp"
#include "netcfg/inequality.hpp"
#include "netcfg/quantum.hpp"
#include "netcfg/witness.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>

using namespace netcfg;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome_ {
  bool pass;
  std::string detail;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Independent exact feasibility test.
bool oracle_valid(const NetworkTopology& t, const std::vector<Rational>& s) {
  for (const auto& x : s) {
    if (x < 0 || x > 1) return false;
  }
  for (const auto& e : t.sources()) {
    Rational sum = 0;
    for (int p : e.parties) sum += s[p];
    if (sum > 1) return false;
  }
  return true;
}

std::vector<std::vector<double>> vertex_exponents(const NetworkTopology& t) {
  std::vector<std::vector<double>> out;
  for (const auto& v : support::fis_vertices<Rational>(t)) out.push_back(to_doubles(v));
  return out;
}

Outcome_ criterion_1() {
  support::Rng rng(20240101);
  int checked = 0, bad = 0;
  auto test = [&](const NetworkTopology& t, const FractionalWeights& w) {
    ++checked;
    if (!is_valid_fis(t, w) || !oracle_valid(t, w.values)) ++bad;
  };
  for (int i = 0; i < 500; ++i) {
    const auto t = support::random_hypergraph(rng, 10, 15, 4);
    test(t, fis_greedy(t));
    test(t, fis_optimal(t));
    std::vector<std::vector<Rational>> per;
    for (const auto& s : t.sources()) {
      std::vector<Rational> row;
      Rational left = 1;
      for (std::size_t p = 0; p < s.parties.size(); ++p) {
        const Rational x = left * Rational(rng.between(0, 6), 6);
        row.push_back(x);
        left -= x;
      }
      per.push_back(row);
    }
    test(t, fis_decomposed(t, per));
    if (recognize_builtin(t)) {
      for (auto kind : {Strategy::Kind::family, Strategy::Kind::facet}) {
        Strategy st;
        st.kind = kind;
        st.m = rng.between(2, 9);
        st.k = rng.between(1, st.m - 1);
        try {
          test(t, weights_for(t, st));
        } catch (const Error& e) {
          if (e.category() != ErrorCategory::usage) ++bad;
        }
      }
    }
  }
  for (auto kind : {FamilyKind::chain, FamilyKind::star, FamilyKind::cycle, FamilyKind::complete}) {
    for (int n = 3; n <= 10; ++n) {
      for (int m = 2; m <= 12; ++m) {
        if (kind == FamilyKind::complete && m > n) continue;
        for (int k = 1; k < m; ++k) {
          for (auto v : {FamilyVariant::a, FamilyVariant::b}) {
            try {
              test(family_topology(kind, n, m), fis_family(kind, n, m, k, v));
            } catch (const Error& e) {
              if (e.category() != ErrorCategory::usage) ++bad;
            }
          }
        }
      }
      if (kind == FamilyKind::complete) continue;
      for (auto f : {FacetVariant::even_parties, FacetVariant::odd_parties, FacetVariant::hub, FacetVariant::leaves}) {
        try {
          test(family_topology(kind, n, 2), facet_weights(kind, n, f));
        } catch (const Error& e) {
          if (e.category() != ErrorCategory::usage) ++bad;
        }
      }
    }
  }
  return {bad == 0, std::to_string(checked) + " weight vectors, " + std::to_string(bad) + " invalid"};
}

Outcome_ criterion_2() {
  const auto t = NetworkTopology::with_party_count(5, {{{0, 1}}, {{1, 2}}, {{0, 2}}, {{2, 3, 4}}});
  const auto greedy = fis_greedy(t);
  const Rational h(1, 2), q(1, 4);
  const auto dec = fis_decomposed(t, {{h, h}, {h, h}, {h, h}, {h, q, q}});
  const std::vector<Rational> want_greedy{h, h, Rational(1, 3), Rational(1, 3), Rational(1, 3)};
  const std::vector<Rational> want_dec{h, h, h, q, q};
  return {greedy.values == want_greedy && dec.values == want_dec,
          "greedy " + greedy.str() + ", decomposed " + dec.str()};
}

Outcome_ criterion_3() {
  double worst = -1;
  int vectors = 0;
  for (int i = 0; i < 200; ++i) {
    support::Rng rng(7000 + i);
    RandomNetworkBounds b;
    b.parties = rng.between(1, 5);
    b.sources = rng.between(0, 5);
    b.max_arity = b.parties;
    b.max_alphabet = 3;
    const auto net = random_classical_network(9000 + i, b);
    const auto d = classical_joint(net);
    for (const auto& s : vertex_exponents(net.topology)) {
      worst = std::max(worst, max_violation(d, s).margin);
      ++vectors;
    }
    worst = std::max(worst, max_violation(d, fis_optimal(net.topology)).margin);
    worst = std::max(worst, max_violation(d, fis_greedy(net.topology)).margin);
  }
  return {worst <= 1e-12, std::to_string(vectors) + " vertex weight vectors, max margin " + num(worst)};
}

Outcome_ criterion_4() {
  support::Rng rng(4242);
  double worst = -1;
  int networks = 0;
  while (networks < 100) {
    const int shape = rng.below(3);
    const int n = shape == 2 ? 3 : rng.between(3, 5);
    std::vector<std::pair<int, int>> edges;
    if (shape == 0) {
      for (int j = 0; j + 1 < n; ++j) edges.emplace_back(j, j + 1);
    } else if (shape == 1) {
      for (int j = 0; j + 1 < n; ++j) edges.emplace_back(j, n - 1);
    } else {
      edges = {{0, 1}, {1, 2}, {0, 2}};
    }
    std::vector<QuantumComponent> comps;
    std::vector<std::vector<int>> assignment;
    long dim = 1;
    for (auto [a, b] : edges) {
      const double theta = rng.uniform(0.01, kPi / 2 - 0.01);
      switch (rng.below(3)) {
        case 0:
          comps.push_back(make_state(state::Epr{theta}));
          assignment.push_back({a, b});
          break;
        case 1:
          comps.push_back(make_state(state::Ghz{theta, 2}));
          assignment.push_back({a, b});
          break;
        default:
          comps.push_back(make_state(state::Ghz{theta, 3}));
          assignment.push_back(rng.below(2) == 0 ? std::vector<int>{a, b, b} : std::vector<int>{a, a, b});
      }
      dim *= comps.back().dimension();
    }
    if (dim > 1024) continue;
    const auto s = assemble(comps, assignment, n);
    std::vector<MeasurementBasis> bases;
    for (int d : s.party_dims()) bases.emplace_back(support::random_unitary(rng, d));
    const auto dist = born_distribution(s, bases);
    for (const auto& w : vertex_exponents(s.topology())) worst = std::max(worst, max_violation(dist, w).margin);
    ++networks;
  }
  return {worst <= 1e-9, std::to_string(networks) + " networks, max margin " + num(worst)};
}

Outcome_ criterion_5() {
  double worst = 0;
  int support_points = 0, off_support_bad = 0;
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      const double t1 = i * (kPi / 2) / 6, t2 = j * (kPi / 2) / 6;
      const auto s = assemble({make_state(state::Epr{t1}), make_state(state::Epr{t2})}, {{0, 1}, {1, 2}});
      const auto d = born_distribution(s);
      for (std::size_t k = 0; k < d.outcome_count(); ++k) {
        const auto a = d.outcome_at(k);
        const double rhs = std::sqrt(d.marginal(0)[a[0]] * d.marginal(1)[a[1]] * d.marginal(2)[a[2]]);
        if (d.probs()[k] > 0) {
          worst = std::max(worst, std::abs(d.probs()[k] - rhs));
          ++support_points;
        } else if (rhs < 0) {
          ++off_support_bad;
        }
      }
    }
  }
  return {worst <= 1e-12 && support_points == 100 && off_support_bad == 0,
          std::to_string(support_points) + " outcomes with P>0, max |P - sqrt(p p p)| " + num(worst)};
}

Outcome_ criterion_6() {
  double worst = 0, corner = 0;
  for (double theta : {0.3, 0.7, 1.2}) {
    for (double gamma : {0.2, 0.8, 1.4}) {
      const double c = std::cos(theta), s = std::sin(theta), g = std::sin(gamma), h = std::cos(gamma);
      const double lo = c * c * c * c * s * s, hi = c * c * s * s * s * s;
      std::map<Outcome, double> want{{{0, 0, 0}, std::pow(c, 6)}, {{3, 3, 3}, std::pow(s, 6)}};
      for (auto a : {Outcome{1, 1, 0}, Outcome{0, 2, 1}, Outcome{2, 0, 2}}) want[a] = g * g * g * g * lo;
      for (auto a : {Outcome{1, 2, 0}, Outcome{2, 1, 0}, Outcome{0, 2, 2}, Outcome{2, 0, 1}, Outcome{0, 1, 1},
                     Outcome{1, 0, 2}}) {
        want[a] = g * g * h * h * lo;
      }
      for (auto a : {Outcome{2, 2, 0}, Outcome{0, 1, 2}, Outcome{1, 0, 1}}) want[a] = h * h * h * h * lo;
      for (auto a : {Outcome{1, 3, 1}, Outcome{3, 1, 2}, Outcome{2, 2, 3}}) want[a] = g * g * g * g * hi;
      for (auto a : {Outcome{2, 3, 1}, Outcome{2, 1, 3}, Outcome{3, 1, 1}, Outcome{1, 3, 2}, Outcome{3, 2, 2},
                     Outcome{1, 2, 3}}) {
        want[a] = g * g * h * h * hi;
      }
      for (auto a : {Outcome{3, 2, 1}, Outcome{2, 3, 2}, Outcome{1, 1, 3}}) want[a] = h * h * h * h * hi;
      const auto epr = make_state(state::Epr{theta});
      const auto st = assemble({epr, epr, epr}, {{0, 1}, {1, 2}, {0, 2}});
      const auto basis = make_basis(basis::Gamma{gamma}, 4);
      const std::vector<MeasurementBasis> bases(3, basis);
      const auto d = born_distribution(st, bases);
      for (std::size_t k = 0; k < d.outcome_count(); ++k) {
        const auto it = want.find(d.outcome_at(k));
        worst = std::max(worst, std::abs(d.probs()[k] - (it == want.end() ? 0.0 : it->second)));
      }
      const double p0 = d.marginal(0)[0] * d.marginal(1)[0] * d.marginal(2)[0];
      corner = std::max(corner, std::abs(d({0, 0, 0}) - std::sqrt(p0)));
    }
  }
  return {worst <= 1e-12 && corner <= 1e-12,
          "max table deviation " + num(worst) + ", |P(0,0,0) - sqrt(p p p)| " + num(corner)};
}

// Largest bisection threshold over a cell-centred theta grid; a theta that
// never violates counts as threshold 1.
double sup_threshold(const ExperimentSpec& e, int points, int m, InequalityId ineq) {
  double sup = 0;
  for (int i = 0; i < points; ++i) {
    const double theta = (i + 0.5) * (kPi / 2) / points;
    sup = std::max(sup, threshold_bisect(e, theta, m, ineq, 1e-4).value_or(1.0));
  }
  return sup;
}

Outcome_ criterion_7() {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentSpec ghz{Experiment::noisy_ghz};
  double worst = 0;
  bool found = true;
  for (int i = 1; i <= 5; ++i) {
    const double theta = i * kPi / 12;
    const auto v = threshold_bisect(ghz, theta, 1000, InequalityId::fin3, 1e-4);
    found = found && v.has_value();
    if (v) worst = std::max(worst, std::abs(*v - visibility_threshold_ghz(theta)));
  }
  const double limit = visibility_threshold_ghz(kPi / 4);
  const double sup3 = sup_threshold(ghz, 200, 1000, InequalityId::fin3);
  const double sup1 = sup_threshold(ghz, 200, 1000, InequalityId::fin1);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = found && worst <= 0.01 && std::abs(limit - 1.0 / 3) <= 1e-6 && std::abs(sup3 - 0.50) <= 0.01 &&
                    std::abs(sup1 - 0.88) <= 0.03 && seconds <= 30;
  return {pass, "max |bisect - v*| " + num(worst) + ", v*(pi/4) " + std::to_string(limit) + ", sup fin3 " +
                    num(sup3) + ", sup fin1 " + num(sup1) + ", " + num(seconds) + " s"};
}

Outcome_ criterion_8() {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentSpec tri{Experiment::noisy_triangle};
  int detected = 0;
  for (int i = 0; i < 50; ++i) {
    const double theta = (i + 0.5) * (kPi / 2) / 50;
    if (experiment_margin(tri, theta, 0.62, 1000, InequalityId::fin3) > 1e-9) ++detected;
  }
  const double sup = sup_threshold(tri, 50, 1000, InequalityId::fin3);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {detected == 50 && std::abs(sup - 0.59) <= 0.03 && seconds <= 30,
          std::to_string(detected) + "/50 detected at v=0.62, sup threshold " + num(sup) + ", " + num(seconds) + " s"};
}

Outcome_ criterion_9() {
  const ExperimentSpec w{Experiment::noisy_w, 4, kPi / 4};
  const std::vector<int> a{0, 0, 1};
  const std::vector<double> half(3, 0.5);
  std::string fin3_signs;
  bool fin3_ok = true;
  double max1 = -1, max1_all = -1;
  for (int i = 1; i <= 9; ++i) {
    const double v = i / 10.0;
    const auto d = experiment_distribution(w, kPi / 4, v);
    double m3 = std::nan("");
    for (const auto& e : chain_min_check(d, 1000, 1).entries) {
      if (e.outcome == a) m3 = e.margin;
    }
    fin3_ok = fin3_ok && m3 > 0;
    fin3_signs += m3 > 0 ? '+' : '-';
    max1 = std::max(max1, d(a) - product_bound(d, a, half));
    max1_all = std::max(max1_all, max_violation(d, half).margin);
  }
  return {fin3_ok && max1 <= 0,
          "fin3 sign at (0,0,1) for v=0.1..0.9: " + fin3_signs + ", max fin1 margin at (0,0,1) " + num(max1) +
              " (over all outcomes " + num(max1_all) + ")"};
}

Outcome_ criterion_10() {
  const auto chain = builtin(BuiltinKind::chain, 3);
  double worst = 0;
  int incompatible = 0;
  for (double p : {0.3, 0.5, 0.7}) {
    for (int m : {3, 10, 1000}) {
      Strategy st;
      st.kind = Strategy::Kind::family;
      st.m = m;
      st.k = 1;
      const auto v = compatibility_check(triangle_bits(p, p, p), chain, st);
      if (v.conclusion == Compatibility::incompatible) ++incompatible;
      const double closed = p * p * p - p * p * std::pow(p, (2.0 * m - 2) / m);
      double at_zero = std::nan("");
      for (const auto& e : v.report.entries) {
        if (e.outcome == Outcome{0, 0, 0}) at_zero = e.margin;
      }
      worst = std::max(worst, std::isnan(at_zero) ? 1.0 : std::abs(at_zero - closed));
    }
  }
  return {incompatible == 9 && worst <= 1e-12,
          std::to_string(incompatible) + "/9 incompatible, max |margin at (0,0,0) - closed form| " + num(worst)};
}

Outcome_ criterion_11() {
  support::Rng rng(1111);
  int entangled = 0, expected_entangled = 0, count_errors = 0;
  auto tally = [&](const NetworkQuantumState& s) {
    const auto v = witness_entanglement(s);
    if (v.pair_tests != s.party_count() - 1) ++count_errors;
    return v;
  };
  auto spread = [](int n) {
    std::vector<int> a(n);
    for (int i = 0; i < n; ++i) a[i] = i;
    return a;
  };
  for (int n : {3, 4, 5}) {
    for (int i = 1; i <= 5; ++i) {
      ++expected_entangled;
      if (tally(assemble({make_state(state::Ghz{i * (kPi / 2) / 6, n})}, {spread(n)})).overall ==
          WitnessOverall::entangled) {
        ++entangled;
      }
    }
    for (int i = 0; i < 10; ++i) {
      std::vector<double> alphas;
      for (;;) {
        alphas.clear();
        double norm = 0;
        for (int j = 0; j < n; ++j) {
          alphas.push_back(rng.uniform(0.1, 1.0));
          norm += alphas.back() * alphas.back();
        }
        bool ok = true;
        for (auto& x : alphas) {
          x /= std::sqrt(norm);
          ok = ok && x >= 0.1;
        }
        if (ok) break;
      }
      ++expected_entangled;
      if (tally(assemble({make_state(state::WN{alphas})}, {spread(n)})).overall == WitnessOverall::entangled) {
        ++entangled;
      }
    }
  }
  for (int i = 0; i < 100; ++i) {
    double a[5];
    for (;;) {
      double norm = 0;
      for (double& x : a) {
        x = rng.uniform(0.05, 1.0);
        norm += x * x;
      }
      bool ok = true;
      for (double& x : a) {
        x /= std::sqrt(norm);
        ok = ok && x >= 0.05;
      }
      if (ok) break;
    }
    ++expected_entangled;
    const auto s = assemble({make_state(state::Acin{a[0], a[1], a[2], a[3], a[4], rng.uniform(0, 2 * kPi)})}, {spread(3)});
    if (tally(s).overall == WitnessOverall::entangled) ++entangled;
  }

  const auto special = assemble({make_state(state::Acin{0.5, 0, 0.5, 0.5, 0.5, 0})}, {spread(3)});
  const auto sv = tally(special);
  const auto d = born_distribution(special);
  const auto bc = marginal(d, {1, 2});
  double dev = 0;
  for (std::size_t k = 0; k < bc.outcome_count(); ++k) {
    const auto o = bc.outcome_at(k);
    dev = std::max(dev, std::abs(bc.probs()[k] - bc.marginal(0)[o[0]] * bc.marginal(1)[o[1]]));
  }
  const bool special_ok = dev <= 1e-12 && sv.overall == WitnessOverall::inconclusive && !sv.pairs[1].dependent;

  int product_inconclusive = 0, product_dependent = 0;
  for (int i = 0; i < 20; ++i) {
    const int n = rng.between(2, 5);
    std::vector<Eigen::VectorXcd> factors;
    for (int j = 0; j < n; ++j) factors.push_back(support::random_qubit(rng));
    const auto v = tally(assemble({make_state(state::Product{factors})}, {spread(n)}));
    if (v.overall == WitnessOverall::inconclusive) ++product_inconclusive;
    for (const auto& p : v.pairs) product_dependent += p.dependent ? 1 : 0;
  }
  return {entangled == expected_entangled && special_ok && product_inconclusive == 20 && product_dependent == 0 &&
              count_errors == 0,
          std::to_string(entangled) + "/" + std::to_string(expected_entangled) + " entangled, exceptional (B,C) deviation " +
              num(dev) + (special_ok ? " inconclusive" : " NOT inconclusive") + ", products " +
              std::to_string(product_inconclusive) + "/20 inconclusive with " + std::to_string(product_dependent) +
              " dependent pairs"};
}

Outcome_ criterion_12() {
  double worst = 0, min_margin = 1;
  for (int m : {3, 5, 1000}) {
    const double lo = (m - 2.0) / m, hi = 1.0 / m;
    const std::vector<double> s{lo, lo, hi, hi};
    for (int i = 1; i <= 5; ++i) {
      for (int j = 1; j <= 5; ++j) {
        const double t1 = i * (kPi / 2) / 6, t2 = j * (kPi / 2) / 6;
        const auto st = assemble({make_state(state::Ghz{t1, 3}), make_state(state::Ghz{t2, 3})},
                                 {{0, 1, 2}, {1, 2, 3}});
        const auto d = born_distribution(st);
        const std::vector<int> zero(4, 0);
        const double margin = d(zero) - product_bound(d, zero, s);
        const double c1 = std::cos(t1), c2 = std::cos(t2), e = (6.0 * m - 12) / m;
        const double closed = c1 * c1 * c2 * c2 - std::pow(c1, e) * std::pow(c2, e);
        min_margin = std::min(min_margin, margin);
        worst = std::max(worst, std::abs(margin - closed));
      }
    }
  }
  return {min_margin > 0 && worst <= 1e-12,
          "min margin " + num(min_margin) + ", max |margin - closed form| " + num(worst)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome_()>> criteria{criterion_1, criterion_2, criterion_3,  criterion_4,
                                                        criterion_5, criterion_6, criterion_7,  criterion_8,
                                                        criterion_9, criterion_10, criterion_11, criterion_12};
  std::vector<int> which;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  } else {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) which.push_back(i);
  }
  bool all = true;
  for (int id : which) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    Outcome_ r;
    try {
      r = criteria[id - 1]();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %02d: %s %s\n", id, r.pass ? "PASS" : "FAIL", r.detail.c_str());
    all = all && r.pass;
  }
  return all ? 0 : 1;
}

#include "netcfg/classical.hpp"
#include "netcfg/error.hpp"
#include "netcfg/inequality.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace netcfg;

namespace {

FractionalWeights weights(std::vector<Rational> v) {
  FractionalWeights w;
  w.values = std::move(v);
  return w;
}

double oracle_max_margin(const OutcomeDistribution& d, const std::vector<double>& s) {
  double best = -1e300;
  for (std::size_t i = 0; i < d.outcome_count(); ++i) {
    const auto a = d.outcome_at(i);
    double rhs = 1;
    for (int j = 0; j < d.party_count(); ++j) {
      const double p = support::direct_marginal(d, j)[a[j]];
      rhs *= s[j] == 0 ? 1.0 : std::pow(p, s[j]);
    }
    best = std::max(best, d.probs()[i] - rhs);
  }
  return best;
}

}  // namespace

TEST_CASE("product bound conventions") {
  const auto d = from_entries({2, 2}, {{{0, 0}, 0.5}, {{0, 1}, 0.5}});
  const std::vector<double> s{0.5, 0.0};
  CHECK(product_bound(d, std::vector<int>{0, 0}, s) == doctest::Approx(1.0));
  CHECK(product_bound(d, std::vector<int>{1, 0}, s) == 0.0);
  const std::vector<double> zero{0.0, 0.0};
  CHECK(product_bound(d, std::vector<int>{1, 1}, zero) == 1.0);
}

TEST_CASE("perfectly correlated bits violate the half-half bound") {
  const auto d = from_entries({2, 2}, {{{0, 0}, 0.5}, {{1, 1}, 0.5}});
  const auto r = check_config(d, weights({Rational(1), Rational(1)}));
  CHECK(r.violated);
  CHECK(r.max_margin == doctest::Approx(0.25));
  CHECK(*r.argmax == Outcome{0, 0});
  CHECK(r.entries.size() == 2);
  const auto half = check_config(d, weights({Rational(1, 2), Rational(1, 2)}));
  CHECK_FALSE(half.violated);
  CHECK(half.max_margin == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("check_config agrees with a direct maximum") {
  support::Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const auto net = random_classical_network(1000 + trial, {3, 3, 2, 3});
    const auto d = classical_joint(net);
    std::vector<double> s(3);
    for (auto& x : s) x = rng.unit();
    const auto mv = max_violation(d, s);
    CHECK(mv.margin == doctest::Approx(oracle_max_margin(d, s)).epsilon(1e-12));
    const auto r = check_config(d, s);
    CHECK(r.max_margin <= mv.margin + 1e-15);
  }
}

TEST_CASE("classical networks never violate an inequality built from a valid weight vector") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto net = random_classical_network(seed, {3, 3, 2, 2});
    std::vector<std::vector<Rational>> probs;
    support::Rng rng(seed + 77);
    for (const auto& src : net.sources) {
      std::vector<Rational> p;
      int total = 0;
      for (std::size_t v = 0; v + 1 < src.probs.size(); ++v) {
        const int x = rng.between(1, 3);
        p.push_back(x);
        total += x;
      }
      p.push_back(rng.between(1, 3));
      total += static_cast<int>(p.back());
      for (auto& x : p) x /= total;
      probs.push_back(p);
    }
    const auto table = classical_joint_exact(net, probs);
    std::vector<int> alphabets;
    for (const auto& r : net.responses) alphabets.push_back(r.alphabet);
    for (const auto& v : support::fis_vertices<Rational>(net.topology)) {
      CHECK(check_config_exact(alphabets, table, v).empty());
    }
  }
}

TEST_CASE("exact check flags a violation") {
  const std::vector<int> alphabets{2, 2};
  const std::vector<Rational> table{Rational(1, 2), 0, 0, Rational(1, 2)};
  CHECK(check_config_exact(alphabets, table, {Rational(1, 2), Rational(1, 2)}).empty());
  CHECK(check_config_exact(alphabets, table, {Rational(1, 2), Rational(2, 3)}).size() == 2);
  CHECK_THROWS_AS(check_config_exact(alphabets, table, {Rational(1, 97), Rational(1, 2)}), Error);
}

TEST_CASE("two-sided chain bound takes the smaller product") {
  const auto d = from_entries({2, 2, 2}, {{{0, 0, 0}, 0.5}, {{1, 1, 1}, 0.5}});
  const auto r = chain_min_check(d, 3, 1);
  const double expected = 0.5 - std::pow(0.5, 2.0 / 3 + 1.0 / 3 + 2.0 / 3);
  CHECK(r.max_margin == doctest::Approx(expected));
  CHECK(max_chain_violation(d, 3, 1).margin == doctest::Approx(expected));
  CHECK_THROWS_AS(chain_min_check(d, 3, 3), Error);
}

TEST_CASE("expectation form") {
  const auto d = from_entries({2, 2}, {{{0, 0}, 0.5}, {{1, 1}, 0.5}});
  const std::vector<std::vector<double>> f{{1, 0}, {1, 0}};
  const auto loose = expectation_finner(d, f, weights({Rational(1, 2), Rational(1, 2)}));
  CHECK(loose.satisfied);
  CHECK(loose.lhs == doctest::Approx(0.5));
  CHECK(loose.rhs == doctest::Approx(0.5));
  const auto tight = expectation_finner(d, f, weights({Rational(1), Rational(1)}));
  CHECK_FALSE(tight.satisfied);
  const auto zero = expectation_finner(d, f, weights({Rational(0), Rational(1)}));
  CHECK(zero.rhs == doctest::Approx(0.5));
  CHECK_THROWS_AS(expectation_finner(d, {{-1, 0}, {1, 0}}, weights({Rational(1, 2), Rational(1, 2)})), Error);
}

TEST_CASE("report format") {
  const auto d = from_entries({2, 2}, {{{0, 0}, 0.5}, {{1, 1}, 0.5}});
  std::ostringstream os;
  print_report(os, check_config(d, weights({Rational(1), Rational(1)})));
  const std::string text = os.str();
  CHECK(text.rfind("outcome lhs rhs margin\n", 0) == 0);
  CHECK(text.find("(0,0) 0.5 0.25 0.25\n") != std::string::npos);
  CHECK(text.find("VIOLATED margin=0.25 at (0,0)") != std::string::npos);
  std::ostringstream quiet;
  print_report(quiet, check_config(d, weights({Rational(1, 2), Rational(1, 2)})), false);
  CHECK(quiet.str() == "SATISFIED\n");
}

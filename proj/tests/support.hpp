#pragma once

#include "netcfg/distribution.hpp"
#include "netcfg/rational.hpp"
#include "netcfg/topology.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace support {

// Raw mt19937_64 draws only, so streams agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int below(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  double normal() {
    double u = unit();
    while (u <= 0) u = unit();
    return std::sqrt(-2 * std::log(u)) * std::cos(2 * 3.14159265358979323846 * unit());
  }

 private:
  std::mt19937_64 gen_;
};

inline netcfg::NetworkTopology random_hypergraph(Rng& rng, int max_parties, int max_sources, int max_arity) {
  const int n = rng.between(1, max_parties);
  const int ns = rng.between(0, max_sources);
  std::vector<netcfg::Source> sources;
  for (int e = 0; e < ns; ++e) {
    const int arity = rng.between(1, std::min(max_arity, n));
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    netcfg::Source s;
    for (int i = 0; i < arity; ++i) {
      std::swap(pool[i], pool[i + rng.below(n - i)]);
      s.parties.push_back(pool[i]);
    }
    sources.push_back(s);
  }
  return netcfg::NetworkTopology::with_party_count(n, sources);
}

// Vertices of {s : 0 <= s <= 1, sum_{j in e} s_j <= 1 for every source e},
// found by solving every n-subset of constraints as equalities.
template <class Scalar>
std::vector<std::vector<Scalar>> fis_vertices(const netcfg::NetworkTopology& t) {
  const int n = t.party_count();
  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;
  for (const auto& s : t.sources()) {
    std::vector<Scalar> r(n, Scalar(0));
    for (int p : s.parties) r[p] = 1;
    rows.push_back(r);
    rhs.push_back(Scalar(1));
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Scalar> up(n, Scalar(0)), down(n, Scalar(0));
    up[j] = 1;
    down[j] = -1;
    rows.push_back(up);
    rhs.push_back(Scalar(1));
    rows.push_back(down);
    rhs.push_back(Scalar(0));
  }
  auto is_zero = [](const Scalar& x) {
    if constexpr (std::is_floating_point_v<Scalar>) return std::abs(x) < 1e-9;
    else return x == 0;
  };
  auto leq = [](const Scalar& a, const Scalar& b) {
    if constexpr (std::is_floating_point_v<Scalar>) return a <= b + 1e-9;
    else return a <= b;
  };
  const int m = static_cast<int>(rows.size());
  std::vector<std::vector<Scalar>> out;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  for (;;) {
    std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n + 1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a[i][j] = rows[pick[i]][j];
      a[i][n] = rhs[pick[i]];
    }
    bool singular = false;
    for (int c = 0; c < n && !singular; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r) {
        if (!is_zero(a[r][c]) && (piv < 0 || std::abs(static_cast<double>(a[r][c])) > std::abs(static_cast<double>(a[piv][c])))) piv = r;
      }
      if (piv < 0) {
        singular = true;
        break;
      }
      std::swap(a[c], a[piv]);
      for (int r = 0; r < n; ++r) {
        if (r == c || is_zero(a[r][c])) continue;
        const Scalar f = a[r][c] / a[c][c];
        for (int j = c; j <= n; ++j) a[r][j] -= f * a[c][j];
      }
    }
    if (!singular) {
      std::vector<Scalar> x(n);
      for (int i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
      bool feasible = true;
      for (int r = 0; r < m && feasible; ++r) {
        Scalar lhs = 0;
        for (int j = 0; j < n; ++j) lhs += rows[r][j] * x[j];
        feasible = leq(lhs, rhs[r]);
      }
      if (feasible) {
        bool dup = false;
        for (const auto& v : out) {
          bool same = true;
          for (int j = 0; j < n && same; ++j) same = is_zero(v[j] - x[j]);
          dup = dup || same;
        }
        if (!dup) out.push_back(x);
      }
    }
    int i = n - 1;
    while (i >= 0 && pick[i] == m - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

// Lexicographically largest maximiser of sum_j s_j among the vertices.
inline std::vector<netcfg::Rational> lp_oracle(const netcfg::NetworkTopology& t) {
  const auto vs = fis_vertices<netcfg::Rational>(t);
  std::vector<netcfg::Rational> best;
  netcfg::Rational best_value = -1;
  for (const auto& v : vs) {
    netcfg::Rational value = 0;
    for (const auto& x : v) value += x;
    if (value > best_value || (value == best_value && v > best)) {
      best = v;
      best_value = value;
    }
  }
  return best;
}

inline Eigen::MatrixXcd random_unitary(Rng& rng, int d) {
  Eigen::MatrixXcd g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = {rng.normal(), rng.normal()};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
}

inline Eigen::VectorXcd random_qubit(Rng& rng) {
  Eigen::VectorXcd v(2);
  v << std::complex<double>(rng.normal(), rng.normal()), std::complex<double>(rng.normal(), rng.normal());
  return v / v.norm();
}

// Single-party marginal by direct summation, independent of the cached one.
inline std::vector<double> direct_marginal(const netcfg::OutcomeDistribution& d, int party) {
  std::vector<double> m(d.alphabets()[party], 0.0);
  for (std::size_t i = 0; i < d.outcome_count(); ++i) m[d.outcome_at(i)[party]] += d.probs()[i];
  return m;
}

}  // namespace support

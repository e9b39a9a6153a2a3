#include "netcfg/fis.hpp"

#include "netcfg/error.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace netcfg {

namespace {

Provenance make_provenance(Provenance::Kind kind, std::string detail = {}) {
  Provenance p;
  p.kind = kind;
  p.detail = std::move(detail);
  return p;
}

void check_family_params(int m, int k, bool need_k) {
  if (m < 2) fail(ErrorCategory::usage, "family parameter m must be >= 2");
  if (need_k && (k < 1 || k > m - 1)) fail(ErrorCategory::usage, "family parameter k must satisfy 1 <= k <= m-1");
}

// Dense simplex tableau over exact rationals for
//   max c.s  s.t.  A s <= 1, s <= 1, s >= 0.
// The origin is feasible, so the slack basis is a valid start.
class Tableau {
 public:
  Tableau(const NetworkTopology& t) : n_(t.party_count()) {
    const int sources = t.source_count();
    rows_ = sources + n_;
    cols_ = n_ + rows_;
    a_.assign(rows_, std::vector<Rational>(cols_ + 1, Rational(0)));
    for (int e = 0; e < sources; ++e) {
      for (int p : t.sources()[e].parties) a_[e][p] = 1;
    }
    for (int j = 0; j < n_; ++j) a_[sources + j][j] = 1;
    for (int i = 0; i < rows_; ++i) {
      a_[i][n_ + i] = 1;
      a_[i][cols_] = 1;
    }
    basis_.resize(rows_);
    for (int i = 0; i < rows_; ++i) basis_[i] = n_ + i;
    frozen_.assign(cols_, false);
  }

  // Optimises `obj` (over structural variables) on the current optimal face,
  // then restricts the face to the optimum of `obj`.
  void optimise(const std::vector<Rational>& obj) {
    for (;;) {
      const auto d = reduced_costs(obj);
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (!frozen_[j] && d[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) {
        for (int j = 0; j < cols_; ++j) {
          if (d[j] < 0) frozen_[j] = true;
        }
        return;
      }
      int leave = -1;
      Rational best;
      for (int i = 0; i < rows_; ++i) {
        if (a_[i][enter] <= 0) continue;
        const Rational ratio = a_[i][cols_] / a_[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) fail(ErrorCategory::internal, "unbounded linear program");
      pivot(leave, enter);
    }
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> s(n_, Rational(0));
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < n_) s[basis_[i]] = a_[i][cols_];
    }
    return s;
  }

 private:
  std::vector<Rational> reduced_costs(const std::vector<Rational>& obj) const {
    auto cost = [&](int j) { return j < n_ ? obj[j] : Rational(0); };
    std::vector<Rational> d(cols_);
    for (int j = 0; j < cols_; ++j) {
      Rational z = 0;
      for (int i = 0; i < rows_; ++i) {
        if (a_[i][j] != 0) z += cost(basis_[i]) * a_[i][j];
      }
      d[j] = cost(j) - z;
    }
    return d;
  }

  void pivot(int r, int c) {
    const Rational pv = a_[r][c];
    for (auto& x : a_[r]) x /= pv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || a_[i][c] == 0) continue;
      const Rational f = a_[i][c];
      for (int j = 0; j <= cols_; ++j) {
        if (a_[r][j] != 0) a_[i][j] -= f * a_[r][j];
      }
    }
    basis_[r] = c;
  }

  int n_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<Rational>> a_;
  std::vector<int> basis_;
  std::vector<bool> frozen_;
};

}  // namespace

std::optional<FamilyKind> parse_family_kind(std::string_view s) {
  if (s == "chain") return FamilyKind::chain;
  if (s == "star") return FamilyKind::star;
  if (s == "cycle") return FamilyKind::cycle;
  if (s == "complete") return FamilyKind::complete;
  return std::nullopt;
}

std::optional<FacetVariant> parse_facet_variant(std::string_view s) {
  if (s == "even_parties" || s == "even") return FacetVariant::even_parties;
  if (s == "odd_parties" || s == "odd") return FacetVariant::odd_parties;
  if (s == "hub") return FacetVariant::hub;
  if (s == "leaves") return FacetVariant::leaves;
  return std::nullopt;
}

std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::chain: return "chain";
    case FamilyKind::star: return "star";
    case FamilyKind::cycle: return "cycle";
    case FamilyKind::complete: return "complete";
  }
  return "chain";
}

std::string_view to_string(FacetVariant v) {
  switch (v) {
    case FacetVariant::even_parties: return "even_parties";
    case FacetVariant::odd_parties: return "odd_parties";
    case FacetVariant::hub: return "hub";
    case FacetVariant::leaves: return "leaves";
  }
  return "even_parties";
}

std::string Provenance::str() const {
  std::string name;
  switch (kind) {
    case Kind::greedy: name = "greedy"; break;
    case Kind::decomposed: name = "decomposed"; break;
    case Kind::family: name = "family"; break;
    case Kind::optimal: name = "optimal"; break;
    case Kind::facet: name = "facet"; break;
    case Kind::user: name = "user"; break;
  }
  return detail.empty() ? name : name + "(" + detail + ")";
}

std::vector<double> FractionalWeights::exponents() const {
  if (decimal_values) return *decimal_values;
  return to_doubles(values);
}

std::string FractionalWeights::str() const {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += to_string(values[i]);
  }
  return out;
}

FractionalWeights parse_weights(std::string_view text) {
  FractionalWeights w;
  w.provenance = make_provenance(Provenance::Kind::user);
  std::vector<double> decimals;
  bool any_decimal = false;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    const std::string_view tok = text.substr(i, j - i);
    const Rational r = parse_rational(tok);
    if (r < 0 || r > 1) fail(ErrorCategory::input, "weight '" + std::string(tok) + "' outside [0,1]");
    double value = to_double(r);
    if (is_decimal_literal(tok)) {
      any_decimal = true;
      std::from_chars(tok.data() + (tok[0] == '+'), tok.data() + tok.size(), value);
    }
    w.values.push_back(r);
    decimals.push_back(value);
    i = j;
  }
  if (w.values.empty()) fail(ErrorCategory::input, "empty weight list");
  if (any_decimal) w.decimal_values = std::move(decimals);
  return w;
}

bool is_valid_fis(const NetworkTopology& t, const std::vector<Rational>& s) {
  if (static_cast<int>(s.size()) != t.party_count()) {
    fail(ErrorCategory::validation, "weight vector has " + std::to_string(s.size()) + " entries, network has " +
                                        std::to_string(t.party_count()) + " parties");
  }
  for (const auto& x : s) {
    if (x < 0 || x > 1) return false;
  }
  for (const auto& src : t.sources()) {
    Rational sum = 0;
    for (int p : src.parties) sum += s[p];
    if (sum > 1) return false;
  }
  return true;
}

bool is_valid_fis(const NetworkTopology& t, const FractionalWeights& w) { return is_valid_fis(t, w.values); }

FractionalWeights fis_greedy(const NetworkTopology& t) {
  FractionalWeights w;
  w.provenance = make_provenance(Provenance::Kind::greedy);
  for (int i = 0; i < t.party_count(); ++i) {
    Rational s = 1;
    for (int e : t.incident_sources(i)) {
      s = std::min(s, Rational(1, static_cast<int>(t.sources()[e].parties.size())));
    }
    w.values.push_back(s);
  }
  return w;
}

FractionalWeights fis_decomposed(const NetworkTopology& t, const std::vector<std::vector<Rational>>& per_source) {
  if (static_cast<int>(per_source.size()) != t.source_count()) {
    fail(ErrorCategory::validation, "expected " + std::to_string(t.source_count()) + " per-source assignments, got " +
                                        std::to_string(per_source.size()));
  }
  for (int e = 0; e < t.source_count(); ++e) {
    const auto& row = per_source[e];
    const std::string label = "assignment for source " + std::to_string(e + 1);
    if (row.size() != t.sources()[e].parties.size()) {
      fail(ErrorCategory::validation, label + " has " + std::to_string(row.size()) + " entries, source reaches " +
                                          std::to_string(t.sources()[e].parties.size()) + " parties");
    }
    Rational sum = 0;
    for (const auto& x : row) {
      if (x < 0) fail(ErrorCategory::validation, label + " has a negative entry");
      sum += x;
    }
    if (sum > 1) fail(ErrorCategory::validation, label + " sums to " + to_string(sum) + " > 1");
  }
  FractionalWeights w;
  w.provenance = make_provenance(Provenance::Kind::decomposed);
  w.values.assign(t.party_count(), Rational(1));
  for (int e = 0; e < t.source_count(); ++e) {
    const auto& ps = t.sources()[e].parties;
    for (std::size_t q = 0; q < ps.size(); ++q) w.values[ps[q]] = std::min(w.values[ps[q]], per_source[e][q]);
  }
  return w;
}

NetworkTopology family_topology(FamilyKind kind, int n, int m) {
  switch (kind) {
    case FamilyKind::chain: return builtin(BuiltinKind::chain, n);
    case FamilyKind::star: return builtin(BuiltinKind::star, n);
    case FamilyKind::cycle: return builtin(BuiltinKind::cycle, n);
    case FamilyKind::complete: return builtin(BuiltinKind::complete, n, m);
  }
  fail(ErrorCategory::internal, "unknown family");
}

FractionalWeights fis_family(FamilyKind kind, int n, int m, int k, FamilyVariant variant) {
  check_family_params(m, k, kind != FamilyKind::complete);
  FractionalWeights w;
  const char* vname = variant == FamilyVariant::a ? "a" : "b";
  w.provenance = make_provenance(Provenance::Kind::family, std::string(to_string(kind)) + " m=" + std::to_string(m) +
                                                               " k=" + std::to_string(k) + " variant=" + vname);
  const Rational lo(k, m), hi(m - k, m);
  switch (kind) {
    case FamilyKind::chain:
    case FamilyKind::cycle: {
      const int min_n = kind == FamilyKind::chain ? 2 : 3;
      if (n < min_n) fail(ErrorCategory::usage, std::string(to_string(kind)) + " needs n >= " + std::to_string(min_n));
      const bool odd = n % 2 == 1;
      if (odd && variant == FamilyVariant::b && 2 * k > m) {
        fail(ErrorCategory::usage, "odd-n variant b needs 2k <= m");
      }
      if (odd && variant == FamilyVariant::a && kind == FamilyKind::cycle && 2 * k < m) {
        fail(ErrorCategory::usage, "odd cycle variant a needs 2k >= m");
      }
      for (int j = 1; j <= n; ++j) {
        const bool odd_index = j % 2 == 1;
        Rational s;
        if (variant == FamilyVariant::a) {
          s = odd ? (odd_index ? hi : lo) : (odd_index ? lo : hi);
        } else {
          s = odd_index ? hi : lo;
          if (odd && j == n) s = lo;
        }
        w.values.push_back(s);
      }
      break;
    }
    case FamilyKind::star:
      if (n < 2) fail(ErrorCategory::usage, "star needs n >= 2");
      for (int j = 1; j < n; ++j) w.values.push_back(variant == FamilyVariant::a ? lo : hi);
      w.values.push_back(variant == FamilyVariant::a ? hi : lo);
      break;
    case FamilyKind::complete:
      if (n < m) fail(ErrorCategory::usage, "complete network needs n >= m");
      w.values.assign(n, Rational(1, m));
      break;
  }
  return w;
}

FractionalWeights fis_optimal(const NetworkTopology& t, const std::vector<Rational>& objective) {
  const int n = t.party_count();
  if (n > kMaxOptimalParties || t.source_count() > kMaxOptimalSources) {
    fail(ErrorCategory::limit, "exact optimiser accepts at most " + std::to_string(kMaxOptimalParties) + " parties and " +
                                   std::to_string(kMaxOptimalSources) + " sources");
  }
  std::vector<Rational> obj = objective;
  if (obj.empty()) obj.assign(n, Rational(1));
  if (static_cast<int>(obj.size()) != n) fail(ErrorCategory::usage, "objective length must equal the party count");
  for (const auto& x : obj) {
    if (x < 0) fail(ErrorCategory::usage, "objective entries must be non-negative");
  }
  Tableau tab(t);
  tab.optimise(obj);
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> unit(n, Rational(0));
    unit[j] = 1;
    tab.optimise(unit);
  }
  FractionalWeights w;
  w.provenance = make_provenance(Provenance::Kind::optimal);
  w.values = tab.solution();
  return w;
}

FractionalWeights facet_weights(FamilyKind kind, int n, FacetVariant variant) {
  FractionalWeights w;
  w.provenance = make_provenance(Provenance::Kind::facet,
                                 std::string(to_string(kind)) + " " + std::string(to_string(variant)));
  switch (kind) {
    case FamilyKind::chain:
    case FamilyKind::cycle: {
      if (variant != FacetVariant::even_parties && variant != FacetVariant::odd_parties) {
        fail(ErrorCategory::usage, "chain and cycle facets are even_parties or odd_parties");
      }
      const int min_n = kind == FamilyKind::chain ? 2 : 3;
      if (n < min_n) fail(ErrorCategory::usage, std::string(to_string(kind)) + " needs n >= " + std::to_string(min_n));
      if (kind == FamilyKind::cycle && n % 2 == 1 && variant == FacetVariant::odd_parties) {
        fail(ErrorCategory::usage, "odd_parties is not independent on an odd cycle");
      }
      const int parity = variant == FacetVariant::odd_parties ? 1 : 0;
      for (int j = 1; j <= n; ++j) w.values.push_back(Rational(j % 2 == parity ? 1 : 0));
      break;
    }
    case FamilyKind::star:
      if (variant != FacetVariant::hub && variant != FacetVariant::leaves) {
        fail(ErrorCategory::usage, "star facets are hub or leaves");
      }
      if (n < 2) fail(ErrorCategory::usage, "star needs n >= 2");
      for (int j = 1; j < n; ++j) w.values.push_back(Rational(variant == FacetVariant::leaves ? 1 : 0));
      w.values.push_back(Rational(variant == FacetVariant::hub ? 1 : 0));
      break;
    case FamilyKind::complete:
      fail(ErrorCategory::usage, "complete networks have no facet variant");
  }
  return w;
}

Rational objective_value(const std::vector<Rational>& objective, const FractionalWeights& w) {
  Rational v = 0;
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    v += (objective.empty() ? Rational(1) : objective.at(i)) * w.values[i];
  }
  return v;
}

}  // namespace netcfg

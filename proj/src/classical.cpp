#include "netcfg/classical.hpp"

#include "netcfg/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace netcfg {

namespace {

std::uint64_t tuple_count(const ClassicalNetwork& net) {
  std::uint64_t total = 1;
  for (const auto& s : net.sources) {
    const auto a = static_cast<std::uint64_t>(s.probs.size());
    if (total > kMaxSourceTuples / a) {
      fail(ErrorCategory::limit, "more than " + std::to_string(kMaxSourceTuples) + " source-value tuples");
    }
    total *= a;
  }
  return total;
}

std::size_t expected_table_size(const ClassicalNetwork& net, int party) {
  std::size_t size = 1;
  for (int e : net.topology.incident_sources(party)) size *= net.sources[e].probs.size();
  return size;
}

// Calls f(tuple) for every source-value tuple in lexicographic order, the last
// source varying fastest, with the outcome each party produces.
template <class F>
void enumerate(const ClassicalNetwork& net, F&& f) {
  const int n = net.topology.party_count();
  const int ns = net.topology.source_count();
  const std::uint64_t total = tuple_count(net);
  std::vector<int> lambda(ns, 0);
  Outcome a(n);
  for (std::uint64_t t = 0; t < total; ++t) {
    for (int p = 0; p < n; ++p) {
      std::size_t idx = 0;
      for (int e : net.topology.incident_sources(p)) idx = idx * net.sources[e].probs.size() + lambda[e];
      a[p] = net.responses[p].table[idx];
    }
    f(lambda, a);
    for (int e = ns - 1; e >= 0; --e) {
      if (++lambda[e] < static_cast<int>(net.sources[e].probs.size())) break;
      lambda[e] = 0;
    }
  }
}

std::size_t outcome_index(const ClassicalNetwork& net, const Outcome& a) {
  std::size_t idx = 0;
  for (std::size_t p = 0; p < a.size(); ++p) idx = idx * net.responses[p].alphabet + a[p];
  return idx;
}

std::vector<int> response_alphabets(const ClassicalNetwork& net) {
  std::vector<int> alph;
  for (const auto& r : net.responses) alph.push_back(r.alphabet);
  return alph;
}

std::size_t outcome_space(const ClassicalNetwork& net) {
  std::size_t size = 1;
  for (const auto& r : net.responses) {
    if (size > kMaxOutcomeCount / static_cast<std::size_t>(r.alphabet)) {
      fail(ErrorCategory::limit, "outcome table exceeds " + std::to_string(kMaxOutcomeCount) + " entries");
    }
    size *= r.alphabet;
  }
  return size;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int below(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

void validate_classical(const ClassicalNetwork& net) {
  const auto& t = net.topology;
  if (static_cast<int>(net.sources.size()) != t.source_count()) {
    fail(ErrorCategory::validation, "expected " + std::to_string(t.source_count()) + " source distributions, got " +
                                        std::to_string(net.sources.size()));
  }
  for (std::size_t e = 0; e < net.sources.size(); ++e) {
    const auto& p = net.sources[e].probs;
    const std::string label = "source " + std::to_string(e + 1);
    if (p.empty()) fail(ErrorCategory::validation, label + " has an empty alphabet");
    double sum = 0;
    for (double x : p) {
      if (!(x >= 0)) fail(ErrorCategory::validation, label + " has a negative probability");
      sum += x;
    }
    if (std::abs(sum - 1) > 1e-12) fail(ErrorCategory::validation, label + " probabilities do not sum to 1");
  }
  if (static_cast<int>(net.responses.size()) != t.party_count()) {
    fail(ErrorCategory::validation, "expected " + std::to_string(t.party_count()) + " response tables, got " +
                                        std::to_string(net.responses.size()));
  }
  for (int p = 0; p < t.party_count(); ++p) {
    const auto& r = net.responses[p];
    const std::string label = "response table of party " + std::to_string(p + 1);
    if (r.alphabet < 1) fail(ErrorCategory::validation, label + " has alphabet < 1");
    if (r.table.size() != expected_table_size(net, p)) {
      fail(ErrorCategory::validation, label + " has " + std::to_string(r.table.size()) + " rows, expected " +
                                          std::to_string(expected_table_size(net, p)));
    }
    for (int out : r.table) {
      if (out < 0 || out >= r.alphabet) fail(ErrorCategory::validation, label + " maps outside its alphabet");
    }
  }
}

OutcomeDistribution classical_joint(const ClassicalNetwork& net) {
  validate_classical(net);
  std::vector<double> probs(outcome_space(net), 0.0);
  enumerate(net, [&](const std::vector<int>& lambda, const Outcome& a) {
    double w = 1;
    for (std::size_t e = 0; e < lambda.size(); ++e) w *= net.sources[e].probs[lambda[e]];
    if (w != 0) probs[outcome_index(net, a)] += w;
  });
  return OutcomeDistribution(response_alphabets(net), std::move(probs), net.topology.parties());
}

std::vector<Rational> classical_joint_exact(const ClassicalNetwork& net,
                                            const std::vector<std::vector<Rational>>& source_probs) {
  ClassicalNetwork shaped = net;
  if (source_probs.size() != net.sources.size()) fail(ErrorCategory::validation, "source probability count mismatch");
  for (std::size_t e = 0; e < source_probs.size(); ++e) {
    Rational sum = 0;
    for (const auto& x : source_probs[e]) {
      if (x < 0) fail(ErrorCategory::validation, "negative source probability");
      sum += x;
    }
    if (sum != 1) fail(ErrorCategory::validation, "source " + std::to_string(e + 1) + " probabilities do not sum to 1");
    shaped.sources[e].probs = to_doubles(source_probs[e]);
  }
  for (std::size_t e = 0; e < shaped.sources.size(); ++e) {
    double s = 0;
    for (double x : shaped.sources[e].probs) s += x;
    for (auto& x : shaped.sources[e].probs) x /= s;
  }
  validate_classical(shaped);
  std::vector<Rational> probs(outcome_space(net), Rational(0));
  enumerate(shaped, [&](const std::vector<int>& lambda, const Outcome& a) {
    Rational w = 1;
    for (std::size_t e = 0; e < lambda.size(); ++e) w *= source_probs[e][lambda[e]];
    if (w != 0) probs[outcome_index(net, a)] += w;
  });
  return probs;
}

ClassicalNetwork triangle_bits_network(double p1, double p2, double p3) {
  for (double p : {p1, p2, p3}) {
    if (!(p >= 0 && p <= 1)) fail(ErrorCategory::usage, "triangle bit probabilities must lie in [0,1]");
  }
  ClassicalNetwork net;
  net.topology = NetworkTopology::with_party_count(3, {{{0, 1}}, {{1, 2}}, {{0, 2}}});
  net.sources = {{{p1, 1 - p1}}, {{p2, 1 - p2}}, {{p3, 1 - p3}}};
  // Incident sources in ascending order: A {1,3}, B {1,2}, C {2,3}.
  net.responses = {{4, {0, 1, 2, 3}}, {4, {0, 1, 2, 3}}, {4, {0, 1, 2, 3}}};
  return net;
}

OutcomeDistribution triangle_bits(double p1, double p2, double p3) {
  return classical_joint(triangle_bits_network(p1, p2, p3));
}

ClassicalNetwork random_classical_network(std::uint64_t seed, const RandomNetworkBounds& b) {
  if (b.parties < 1 || b.sources < 0 || b.max_arity < 1 || b.max_alphabet < 1) {
    fail(ErrorCategory::usage, "random network bounds must be positive");
  }
  Rng rng(seed);
  const int n = b.parties;
  std::vector<Source> sources;
  for (int e = 0; e < b.sources; ++e) {
    const int arity = 1 + rng.below(std::min(b.max_arity, n));
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    Source s;
    for (int i = 0; i < arity; ++i) {
      const int j = i + rng.below(n - i);
      std::swap(pool[i], pool[j]);
      s.parties.push_back(pool[i]);
    }
    std::sort(s.parties.begin(), s.parties.end());
    sources.push_back(std::move(s));
  }
  ClassicalNetwork net;
  net.topology = NetworkTopology::with_party_count(n, std::move(sources));
  std::uint64_t tuples = 1;
  for (int e = 0; e < b.sources; ++e) {
    const int alphabet = 1 + rng.below(b.max_alphabet);
    tuples *= static_cast<std::uint64_t>(alphabet);
    if (tuples > kMaxSourceTuples) fail(ErrorCategory::limit, "random network exceeds the enumeration cap");
    std::vector<double> p(alphabet);
    double sum = 0;
    for (auto& x : p) sum += (x = rng.unit());
    if (sum == 0) {
      p.assign(alphabet, 1.0 / alphabet);
    } else {
      for (auto& x : p) x /= sum;
    }
    double partial = 0;
    for (int i = 0; i + 1 < alphabet; ++i) partial += p[i];
    p.back() = std::max(0.0, 1.0 - partial);
    net.sources.push_back({std::move(p)});
  }
  for (int party = 0; party < n; ++party) {
    ResponseTable r;
    r.alphabet = 1 + rng.below(b.max_alphabet);
    r.table.resize(expected_table_size(net, party));
    for (auto& x : r.table) x = rng.below(r.alphabet);
    net.responses.push_back(std::move(r));
  }
  validate_classical(net);
  return net;
}

ClassicalNetwork embed_in_supernetwork(const ClassicalNetwork& small, const NetworkTopology& big,
                                       const std::vector<int>& source_map) {
  validate_classical(small);
  const auto& st = small.topology;
  if (big.party_count() != st.party_count()) fail(ErrorCategory::validation, "networks have different party counts");
  if (static_cast<int>(source_map.size()) != st.source_count()) {
    fail(ErrorCategory::validation, "source map must list one target per source");
  }
  std::vector<int> inverse(big.source_count(), -1);
  for (int e = 0; e < st.source_count(); ++e) {
    const int target = source_map[e];
    if (target < 0 || target >= big.source_count()) fail(ErrorCategory::validation, "source map target out of range");
    if (inverse[target] >= 0) fail(ErrorCategory::validation, "source map is not injective");
    inverse[target] = e;
    const auto& have = big.sources()[target].parties;
    for (int p : st.sources()[e].parties) {
      if (std::find(have.begin(), have.end(), p) == have.end()) {
        fail(ErrorCategory::validation, "source " + std::to_string(e + 1) + " is not contained in its target");
      }
    }
  }
  ClassicalNetwork out;
  out.topology = big;
  for (int f = 0; f < big.source_count(); ++f) {
    out.sources.push_back(inverse[f] >= 0 ? small.sources[inverse[f]] : ClassicalSource{{1.0}});
  }
  for (int p = 0; p < big.party_count(); ++p) {
    const auto& big_inc = big.incident_sources(p);
    const auto& small_inc = st.incident_sources(p);
    std::vector<int> radix;
    for (int f : big_inc) radix.push_back(static_cast<int>(out.sources[f].probs.size()));
    std::size_t size = 1;
    for (int r : radix) size *= r;
    ResponseTable r;
    r.alphabet = small.responses[p].alphabet;
    r.table.resize(size);
    std::vector<int> digits(big_inc.size(), 0);
    for (std::size_t idx = 0; idx < size; ++idx) {
      std::size_t small_idx = 0;
      for (int e : small_inc) {
        const auto it = std::find(big_inc.begin(), big_inc.end(), source_map[e]);
        if (it == big_inc.end()) fail(ErrorCategory::validation, "party lost an incident source in the embedding");
        small_idx = small_idx * small.sources[e].probs.size() + digits[it - big_inc.begin()];
      }
      r.table[idx] = small.responses[p].table[small_idx];
      for (int j = static_cast<int>(digits.size()) - 1; j >= 0; --j) {
        if (++digits[j] < radix[j]) break;
        digits[j] = 0;
      }
    }
    out.responses.push_back(std::move(r));
  }
  validate_classical(out);
  return out;
}

ClassicalNetwork classical_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("network") || !doc.contains("sources") || !doc.contains("responses")) {
    fail(ErrorCategory::input, "classical document needs 'network', 'sources' and 'responses'");
  }
  ClassicalNetwork net;
  net.topology = network_from_json(doc.at("network"));
  const auto& js = doc.at("sources");
  if (!js.is_array()) fail(ErrorCategory::input, "'sources' must be an array of probability vectors");
  for (const auto& s : js) {
    if (!s.is_array()) fail(ErrorCategory::input, "each source must be a probability vector");
    ClassicalSource src;
    for (const auto& x : s) {
      if (!x.is_number()) fail(ErrorCategory::input, "source probabilities must be numbers");
      src.probs.push_back(x.get<double>());
    }
    net.sources.push_back(std::move(src));
  }
  if (static_cast<int>(net.sources.size()) != net.topology.source_count()) {
    fail(ErrorCategory::validation, "one probability vector per source is required");
  }
  const auto& jr = doc.at("responses");
  if (!jr.is_array() || static_cast<int>(jr.size()) != net.topology.party_count()) {
    fail(ErrorCategory::input, "'responses' must list one table per party");
  }
  for (int p = 0; p < net.topology.party_count(); ++p) {
    const auto& r = jr[p];
    if (!r.is_object() || !r.contains("alphabet") || !r.at("alphabet").is_number_integer() || !r.contains("rows") ||
        !r.at("rows").is_array()) {
      fail(ErrorCategory::input, "each response needs integer 'alphabet' and 'rows'");
    }
    ResponseTable table;
    table.alphabet = r.at("alphabet").get<int>();
    const auto& inc = net.topology.incident_sources(p);
    table.table.assign(expected_table_size(net, p), -1);
    for (const auto& row : r.at("rows")) {
      if (!row.is_object() || !row.contains("in") || !row.at("in").is_array() || !row.contains("out") ||
          !row.at("out").is_number_integer()) {
        fail(ErrorCategory::input, "response rows need 'in' (array) and integer 'out'");
      }
      const auto& in = row.at("in");
      if (in.size() != inc.size()) {
        fail(ErrorCategory::validation, "response row for party " + std::to_string(p + 1) + " needs " +
                                            std::to_string(inc.size()) + " inputs");
      }
      std::size_t idx = 0;
      for (std::size_t q = 0; q < inc.size(); ++q) {
        const int radix = static_cast<int>(net.sources[inc[q]].probs.size());
        if (!in[q].is_number_integer() || in[q].get<int>() < 0 || in[q].get<int>() >= radix) {
          fail(ErrorCategory::validation, "response input outside the source alphabet");
        }
        idx = idx * radix + in[q].get<int>();
      }
      if (table.table[idx] != -1) fail(ErrorCategory::validation, "duplicate response row");
      table.table[idx] = row.at("out").get<int>();
    }
    if (std::find(table.table.begin(), table.table.end(), -1) != table.table.end()) {
      fail(ErrorCategory::validation, "response table of party " + std::to_string(p + 1) + " is not total");
    }
    net.responses.push_back(std::move(table));
  }
  validate_classical(net);
  return net;
}

ClassicalNetwork parse_classical(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::input, std::string("malformed classical JSON: ") + e.what());
  }
  return classical_from_json(doc);
}

nlohmann::json serialize_classical(const ClassicalNetwork& net) {
  nlohmann::json doc;
  doc["network"] = serialize_network(net.topology);
  auto sources = nlohmann::json::array();
  for (const auto& s : net.sources) sources.push_back(s.probs);
  doc["sources"] = std::move(sources);
  auto responses = nlohmann::json::array();
  for (int p = 0; p < net.topology.party_count(); ++p) {
    const auto& inc = net.topology.incident_sources(p);
    auto rows = nlohmann::json::array();
    std::vector<int> digits(inc.size(), 0);
    for (std::size_t idx = 0; idx < net.responses[p].table.size(); ++idx) {
      rows.push_back({{"in", digits}, {"out", net.responses[p].table[idx]}});
      for (int j = static_cast<int>(digits.size()) - 1; j >= 0; --j) {
        if (++digits[j] < static_cast<int>(net.sources[inc[j]].probs.size())) break;
        digits[j] = 0;
      }
    }
    responses.push_back({{"alphabet", net.responses[p].alphabet}, {"rows", std::move(rows)}});
  }
  doc["responses"] = std::move(responses);
  return doc;
}

}  // namespace netcfg

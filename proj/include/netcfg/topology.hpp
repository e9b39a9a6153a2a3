#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace netcfg {

/// One independent source: the (0-based) parties it reaches.
struct Source {
  std::vector<int> parties;

  bool operator==(const Source&) const = default;
};

/// A structural problem found by validate().
struct Finding {
  std::string message;
};

/// Parties are hypergraph vertices, sources are hyperedges. Duplicate
/// hyperedges are distinct sources. Party indices are 0-based in memory and
/// 1-based in documents and reports.
class NetworkTopology {
 public:
  NetworkTopology() = default;

  /// Builds and validates; throws Error(validation) on any finding.
  NetworkTopology(std::vector<std::string> parties, std::vector<Source> sources,
                  std::vector<int> dimension_hints = {});

  /// Unnamed parties get "A1".."An".
  static NetworkTopology with_party_count(int n, std::vector<Source> sources);

  int party_count() const noexcept { return static_cast<int>(parties_.size()); }
  int source_count() const noexcept { return static_cast<int>(sources_.size()); }
  const std::vector<std::string>& parties() const noexcept { return parties_; }
  const std::vector<Source>& sources() const noexcept { return sources_; }
  const std::vector<int>& dimension_hints() const noexcept { return hints_; }

  /// Source indices incident to `party`, ascending.
  const std::vector<int>& incident_sources(int party) const { return incidence_.at(party); }

  bool operator==(const NetworkTopology& o) const {
    return parties_ == o.parties_ && sources_ == o.sources_ && hints_ == o.hints_;
  }

 private:
  std::vector<std::string> parties_;
  std::vector<Source> sources_;
  std::vector<int> hints_;
  std::vector<std::vector<int>> incidence_;
};

/// Checks invariants without throwing. Empty result iff the inputs form a
/// valid topology.
std::vector<Finding> validate(const std::vector<std::string>& parties,
                              const std::vector<Source>& sources,
                              const std::vector<int>& dimension_hints = {});
std::vector<Finding> validate(const NetworkTopology& t);

enum class BuiltinKind { chain, star, cycle, complete, single_source };

std::optional<BuiltinKind> parse_builtin_kind(std::string_view name);
std::string_view to_string(BuiltinKind kind);

/// Named families. chain: {j,j+1}; star: {j,n} with party n as hub; cycle:
/// chain plus {1,n}; complete: one source per `arity`-subset (lexicographic);
/// single_source: one hyperedge over all parties.
NetworkTopology builtin(BuiltinKind kind, int n, int arity = 2);

/// Which builtin family `t` is, comparing source multisets. Checks chain,
/// star, cycle, complete (bipartite and higher arity), single_source in that
/// order.
std::optional<BuiltinKind> recognize_builtin(const NetworkTopology& t, int* arity = nullptr);

/// Network document: {"parties": [names], "sources": [{"parties": [1-based]}]}.
NetworkTopology network_from_json(const nlohmann::json& doc);
NetworkTopology parse_network(std::string_view text);
nlohmann::json serialize_network(const NetworkTopology& t);

/// Compact rendering: "A,B,C | {1,2} {2,3}".
std::string describe(const NetworkTopology& t);

}  // namespace netcfg

#include "netcfg/topology.hpp"

#include "netcfg/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace netcfg {

namespace {

std::vector<std::vector<int>> canonical(const std::vector<Source>& sources) {
  std::vector<std::vector<int>> out;
  out.reserve(sources.size());
  for (const auto& s : sources) {
    auto p = s.parties;
    std::sort(p.begin(), p.end());
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("A" + std::to_string(i));
  return names;
}

}  // namespace

std::vector<Finding> validate(const std::vector<std::string>& parties,
                              const std::vector<Source>& sources,
                              const std::vector<int>& hints) {
  std::vector<Finding> out;
  const int n = static_cast<int>(parties.size());
  if (n < 1) out.push_back({"network needs at least one party"});
  std::set<std::string> seen;
  for (const auto& name : parties) {
    if (name.empty()) out.push_back({"empty party name"});
    else if (!seen.insert(name).second) out.push_back({"duplicate party name '" + name + "'"});
  }
  for (std::size_t e = 0; e < sources.size(); ++e) {
    const auto& ps = sources[e].parties;
    const std::string label = "source " + std::to_string(e + 1);
    if (ps.empty()) {
      out.push_back({label + " reaches no party"});
      continue;
    }
    std::set<int> within;
    for (int p : ps) {
      if (p < 0 || p >= n) {
        out.push_back({label + " references party " + std::to_string(p + 1) + " out of range 1.." +
                       std::to_string(n)});
      } else if (!within.insert(p).second) {
        out.push_back({label + " lists party " + std::to_string(p + 1) + " twice"});
      }
    }
  }
  if (!hints.empty()) {
    if (static_cast<int>(hints.size()) != n) {
      out.push_back({"dimension hints: expected " + std::to_string(n) + " entries, got " +
                     std::to_string(hints.size())});
    }
    for (int h : hints) {
      if (h < 1) out.push_back({"dimension hint must be >= 1"});
    }
  }
  return out;
}

std::vector<Finding> validate(const NetworkTopology& t) {
  return validate(t.parties(), t.sources(), t.dimension_hints());
}

NetworkTopology::NetworkTopology(std::vector<std::string> parties, std::vector<Source> sources,
                                 std::vector<int> dimension_hints)
    : parties_(std::move(parties)), sources_(std::move(sources)), hints_(std::move(dimension_hints)) {
  const auto findings = validate(parties_, sources_, hints_);
  if (!findings.empty()) fail(ErrorCategory::validation, findings.front().message);
  incidence_.assign(parties_.size(), {});
  for (int e = 0; e < static_cast<int>(sources_.size()); ++e) {
    for (int p : sources_[e].parties) incidence_[p].push_back(e);
  }
}

NetworkTopology NetworkTopology::with_party_count(int n, std::vector<Source> sources) {
  if (n < 1) fail(ErrorCategory::validation, "network needs at least one party");
  return NetworkTopology(default_names(n), std::move(sources));
}

std::optional<BuiltinKind> parse_builtin_kind(std::string_view name) {
  if (name == "chain") return BuiltinKind::chain;
  if (name == "star") return BuiltinKind::star;
  if (name == "cycle") return BuiltinKind::cycle;
  if (name == "complete") return BuiltinKind::complete;
  if (name == "single_source") return BuiltinKind::single_source;
  return std::nullopt;
}

std::string_view to_string(BuiltinKind kind) {
  switch (kind) {
    case BuiltinKind::chain: return "chain";
    case BuiltinKind::star: return "star";
    case BuiltinKind::cycle: return "cycle";
    case BuiltinKind::complete: return "complete";
    case BuiltinKind::single_source: return "single_source";
  }
  return "chain";
}

NetworkTopology builtin(BuiltinKind kind, int n, int arity) {
  if (n < 1) fail(ErrorCategory::usage, "builtin network needs n >= 1");
  std::vector<Source> s;
  switch (kind) {
    case BuiltinKind::chain:
      if (n < 2) fail(ErrorCategory::usage, "chain needs n >= 2");
      for (int j = 0; j + 1 < n; ++j) s.push_back({{j, j + 1}});
      break;
    case BuiltinKind::star:
      if (n < 2) fail(ErrorCategory::usage, "star needs n >= 2");
      for (int j = 0; j + 1 < n; ++j) s.push_back({{j, n - 1}});
      break;
    case BuiltinKind::cycle:
      if (n < 3) fail(ErrorCategory::usage, "cycle needs n >= 3");
      for (int j = 0; j + 1 < n; ++j) s.push_back({{j, j + 1}});
      s.push_back({{0, n - 1}});
      break;
    case BuiltinKind::complete: {
      if (arity < 2 || arity > n) fail(ErrorCategory::usage, "complete network needs 2 <= arity <= n");
      std::vector<int> idx(arity);
      for (int i = 0; i < arity; ++i) idx[i] = i;
      for (;;) {
        s.push_back({idx});
        int i = arity - 1;
        while (i >= 0 && idx[i] == n - arity + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < arity; ++j) idx[j] = idx[j - 1] + 1;
      }
      break;
    }
    case BuiltinKind::single_source: {
      Source all;
      for (int j = 0; j < n; ++j) all.parties.push_back(j);
      s.push_back(std::move(all));
      break;
    }
  }
  return NetworkTopology::with_party_count(n, std::move(s));
}

std::optional<BuiltinKind> recognize_builtin(const NetworkTopology& t, int* arity) {
  const int n = t.party_count();
  const auto have = canonical(t.sources());
  auto matches = [&](BuiltinKind k, int a) {
    try {
      return canonical(builtin(k, n, a).sources()) == have;
    } catch (const Error&) {
      return false;
    }
  };
  for (auto k : {BuiltinKind::chain, BuiltinKind::star, BuiltinKind::cycle}) {
    if (matches(k, 2)) {
      if (arity) *arity = 2;
      return k;
    }
  }
  if (!have.empty()) {
    const int a = static_cast<int>(have.front().size());
    if (matches(BuiltinKind::complete, a)) {
      if (arity) *arity = a;
      return BuiltinKind::complete;
    }
  }
  if (matches(BuiltinKind::single_source, n)) {
    if (arity) *arity = n;
    return BuiltinKind::single_source;
  }
  return std::nullopt;
}

NetworkTopology network_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) fail(ErrorCategory::input, "network document must be a JSON object");
  if (!doc.contains("parties")) fail(ErrorCategory::input, "network document lacks 'parties'");
  if (!doc.contains("sources")) fail(ErrorCategory::input, "network document lacks 'sources'");
  std::vector<std::string> names;
  const auto& jp = doc.at("parties");
  if (jp.is_number_integer()) {
    const int n = jp.get<int>();
    if (n < 1) fail(ErrorCategory::validation, "network needs at least one party");
    names = default_names(n);
  } else if (jp.is_array()) {
    for (const auto& x : jp) {
      if (!x.is_string()) fail(ErrorCategory::input, "party names must be strings");
      names.push_back(x.get<std::string>());
    }
  } else {
    fail(ErrorCategory::input, "'parties' must be an array of names or a count");
  }
  std::vector<Source> sources;
  const auto& js = doc.at("sources");
  if (!js.is_array()) fail(ErrorCategory::input, "'sources' must be an array");
  for (const auto& x : js) {
    const nlohmann::json* list = &x;
    if (x.is_object()) {
      if (!x.contains("parties")) fail(ErrorCategory::input, "source lacks 'parties'");
      list = &x.at("parties");
    }
    if (!list->is_array()) fail(ErrorCategory::input, "source parties must be an array");
    Source s;
    for (const auto& p : *list) {
      if (!p.is_number_integer()) fail(ErrorCategory::input, "source parties must be integers");
      s.parties.push_back(p.get<int>() - 1);
    }
    sources.push_back(std::move(s));
  }
  std::vector<int> hints;
  if (doc.contains("dimensions")) {
    const auto& jd = doc.at("dimensions");
    if (!jd.is_array()) fail(ErrorCategory::input, "'dimensions' must be an array");
    for (const auto& d : jd) {
      if (!d.is_number_integer()) fail(ErrorCategory::input, "dimensions must be integers");
      hints.push_back(d.get<int>());
    }
  }
  return NetworkTopology(std::move(names), std::move(sources), std::move(hints));
}

NetworkTopology parse_network(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::input, std::string("malformed network JSON: ") + e.what());
  }
  return network_from_json(doc);
}

nlohmann::json serialize_network(const NetworkTopology& t) {
  nlohmann::json doc;
  doc["parties"] = t.parties();
  auto sources = nlohmann::json::array();
  for (const auto& s : t.sources()) {
    std::vector<int> p;
    for (int i : s.parties) p.push_back(i + 1);
    sources.push_back({{"parties", p}});
  }
  doc["sources"] = std::move(sources);
  if (!t.dimension_hints().empty()) doc["dimensions"] = t.dimension_hints();
  return doc;
}

std::string describe(const NetworkTopology& t) {
  std::ostringstream os;
  for (int i = 0; i < t.party_count(); ++i) os << (i ? "," : "") << t.parties()[i];
  os << " |";
  for (const auto& s : t.sources()) {
    os << " {";
    for (std::size_t i = 0; i < s.parties.size(); ++i) os << (i ? "," : "") << s.parties[i] + 1;
    os << "}";
  }
  return os.str();
}

}  // namespace netcfg

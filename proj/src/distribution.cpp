#include "netcfg/distribution.hpp"

#include "netcfg/error.hpp"

#include <cmath>
#include <sstream>

namespace netcfg {

namespace {

std::size_t table_size(const std::vector<int>& alphabets) {
  std::size_t total = 1;
  for (int a : alphabets) {
    if (a < 1) fail(ErrorCategory::validation, "alphabet sizes must be >= 1");
    if (total > kMaxOutcomeCount / static_cast<std::size_t>(a)) {
      fail(ErrorCategory::limit, "outcome table exceeds " + std::to_string(kMaxOutcomeCount) + " entries");
    }
    total *= static_cast<std::size_t>(a);
  }
  return total;
}

}  // namespace

OutcomeDistribution::OutcomeDistribution(std::vector<int> alphabets, std::vector<double> probs,
                                         std::vector<std::string> names)
    : alphabets_(std::move(alphabets)), names_(std::move(names)), probs_(std::move(probs)) {
  if (alphabets_.empty()) fail(ErrorCategory::validation, "distribution needs at least one party");
  const std::size_t total = table_size(alphabets_);
  if (probs_.size() != total) {
    fail(ErrorCategory::validation, "expected " + std::to_string(total) + " probabilities, got " +
                                        std::to_string(probs_.size()));
  }
  if (names_.empty()) {
    for (int i = 1; i <= party_count(); ++i) names_.push_back("A" + std::to_string(i));
  } else if (static_cast<int>(names_.size()) != party_count()) {
    fail(ErrorCategory::validation, "party name count does not match alphabet count");
  }
  double sum = 0;
  for (auto& p : probs_) {
    if (!std::isfinite(p)) fail(ErrorCategory::validation, "non-finite probability");
    if (p < 0 && p >= -1e-12) p = 0;
    if (p < 0 || p > 1 + 1e-12) fail(ErrorCategory::validation, "probability outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1) > 1e-9) {
    std::ostringstream os;
    os.precision(12);
    os << "probabilities sum to " << sum;
    fail(ErrorCategory::validation, os.str());
  }
  marginals_.resize(alphabets_.size());
  for (std::size_t j = 0; j < alphabets_.size(); ++j) marginals_[j].assign(alphabets_[j], 0.0);
  Outcome a(alphabets_.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    for (std::size_t j = 0; j < a.size(); ++j) marginals_[j][a[j]] += probs_[idx];
    for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j) {
      if (++a[j] < alphabets_[j]) break;
      a[j] = 0;
    }
  }
}

std::size_t OutcomeDistribution::index_of(std::span<const int> outcome) const {
  if (outcome.size() != alphabets_.size()) {
    fail(ErrorCategory::validation, "outcome has " + std::to_string(outcome.size()) + " symbols, expected " +
                                        std::to_string(alphabets_.size()));
  }
  std::size_t idx = 0;
  for (std::size_t j = 0; j < outcome.size(); ++j) {
    if (outcome[j] < 0 || outcome[j] >= alphabets_[j]) {
      fail(ErrorCategory::validation, "outcome " + format_outcome(outcome) + " outside the alphabet");
    }
    idx = idx * alphabets_[j] + outcome[j];
  }
  return idx;
}

Outcome OutcomeDistribution::outcome_at(std::size_t index) const {
  if (index >= probs_.size()) fail(ErrorCategory::validation, "outcome index out of range");
  Outcome a(alphabets_.size());
  for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j) {
    a[j] = static_cast<int>(index % alphabets_[j]);
    index /= alphabets_[j];
  }
  return a;
}

OutcomeDistribution marginal(const OutcomeDistribution& d, std::span<const int> subset) {
  if (subset.empty()) fail(ErrorCategory::validation, "marginal needs a non-empty party subset");
  std::vector<int> alph;
  std::vector<std::string> names;
  std::vector<bool> used(d.party_count(), false);
  for (int p : subset) {
    if (p < 0 || p >= d.party_count()) fail(ErrorCategory::validation, "marginal party out of range");
    if (used[p]) fail(ErrorCategory::validation, "marginal lists a party twice");
    used[p] = true;
    alph.push_back(d.alphabets()[p]);
    names.push_back(d.names()[p]);
  }
  std::vector<double> out(table_size(alph), 0.0);
  Outcome a(d.party_count(), 0);
  for (std::size_t idx = 0; idx < d.outcome_count(); ++idx) {
    std::size_t k = 0;
    for (std::size_t q = 0; q < subset.size(); ++q) k = k * alph[q] + a[subset[q]];
    out[k] += d.probs()[idx];
    for (int j = d.party_count() - 1; j >= 0; --j) {
      if (++a[j] < d.alphabets()[j]) break;
      a[j] = 0;
    }
  }
  return OutcomeDistribution(std::move(alph), std::move(out), std::move(names));
}

OutcomeDistribution marginal(const OutcomeDistribution& d, std::initializer_list<int> subset) {
  return marginal(d, std::span<const int>(subset.begin(), subset.size()));
}

OutcomeDistribution from_entries(std::vector<int> alphabets, const std::vector<std::pair<Outcome, double>>& entries,
                                 std::vector<std::string> names) {
  if (alphabets.empty()) fail(ErrorCategory::validation, "distribution needs at least one party");
  std::vector<double> probs(table_size(alphabets), 0.0);
  for (const auto& [outcome, p] : entries) {
    if (outcome.size() != alphabets.size()) {
      fail(ErrorCategory::validation, "outcome " + format_outcome(outcome) + " has the wrong length");
    }
    std::size_t idx = 0;
    for (std::size_t j = 0; j < outcome.size(); ++j) {
      if (outcome[j] < 0 || outcome[j] >= alphabets[j]) {
        fail(ErrorCategory::validation, "outcome " + format_outcome(outcome) + " outside the alphabet");
      }
      idx = idx * alphabets[j] + outcome[j];
    }
    probs[idx] += p;
  }
  return OutcomeDistribution(std::move(alphabets), std::move(probs), std::move(names));
}

OutcomeDistribution distribution_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("parties") || !doc.contains("probs")) {
    fail(ErrorCategory::input, "distribution document needs 'parties' and 'probs'");
  }
  const auto& jp = doc.at("parties");
  if (!jp.is_array() || jp.empty()) fail(ErrorCategory::input, "'parties' must be a non-empty array");
  std::vector<int> alph;
  std::vector<std::string> names;
  for (const auto& p : jp) {
    if (!p.is_object() || !p.contains("alphabet") || !p.at("alphabet").is_number_integer()) {
      fail(ErrorCategory::input, "each party needs an integer 'alphabet'");
    }
    alph.push_back(p.at("alphabet").get<int>());
    if (p.contains("name")) {
      if (!p.at("name").is_string()) fail(ErrorCategory::input, "party name must be a string");
      names.push_back(p.at("name").get<std::string>());
    } else {
      names.push_back("A" + std::to_string(names.size() + 1));
    }
  }
  const auto& jprobs = doc.at("probs");
  if (!jprobs.is_array()) fail(ErrorCategory::input, "'probs' must be an array");
  std::vector<std::pair<Outcome, double>> entries;
  for (const auto& e : jprobs) {
    if (!e.is_object() || !e.contains("outcome") || !e.contains("p") || !e.at("p").is_number() ||
        !e.at("outcome").is_array()) {
      fail(ErrorCategory::input, "each probability entry needs 'outcome' (array) and numeric 'p'");
    }
    Outcome o;
    for (const auto& x : e.at("outcome")) {
      if (!x.is_number_integer()) fail(ErrorCategory::input, "outcome symbols must be integers");
      o.push_back(x.get<int>());
    }
    entries.emplace_back(std::move(o), e.at("p").get<double>());
  }
  return from_entries(std::move(alph), entries, std::move(names));
}

OutcomeDistribution parse_distribution(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::input, std::string("malformed distribution JSON: ") + e.what());
  }
  return distribution_from_json(doc);
}

nlohmann::json serialize_distribution(const OutcomeDistribution& d) {
  nlohmann::json doc;
  auto parties = nlohmann::json::array();
  for (int j = 0; j < d.party_count(); ++j) {
    parties.push_back({{"name", d.names()[j]}, {"alphabet", d.alphabets()[j]}});
  }
  doc["parties"] = std::move(parties);
  auto probs = nlohmann::json::array();
  for (std::size_t i = 0; i < d.outcome_count(); ++i) {
    if (d.probs()[i] != 0.0) probs.push_back({{"outcome", d.outcome_at(i)}, {"p", d.probs()[i]}});
  }
  doc["probs"] = std::move(probs);
  return doc;
}

std::string format_outcome(std::span<const int> outcome) {
  std::string s = "(";
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(outcome[i]);
  }
  return s + ")";
}

}  // namespace netcfg

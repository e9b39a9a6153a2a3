#include "netcfg/error.hpp"
#include "netcfg/topology.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace netcfg;

TEST_CASE("parse triangle document") {
  const auto t = parse_network(R"({"parties":["A","B","C"],"sources":[{"parties":[1,2]},{"parties":[2,3]},{"parties":[1,3]}]})");
  CHECK(t.party_count() == 3);
  CHECK(t.source_count() == 3);
  CHECK(t.sources()[2].parties == std::vector<int>{0, 2});
  CHECK(t.incident_sources(0) == std::vector<int>{0, 2});
  CHECK(recognize_builtin(t) == BuiltinKind::cycle);
}

TEST_CASE("plain-array sources and a lone party") {
  const auto t = parse_network(R"({"parties":["A","B","C"],"sources":[[1,2],[2,3]]})");
  CHECK(t.source_count() == 2);
  const auto lone = parse_network(R"({"parties":["A"],"sources":[]})");
  CHECK(lone.party_count() == 1);
  CHECK(lone.incident_sources(0).empty());
}

TEST_CASE("structural errors") {
  auto category_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.category();
    }
    return ErrorCategory::internal;
  };
  CHECK(category_of([] { parse_network(R"({"parties":["A","B"],"sources":[[1,3]]})"); }) == ErrorCategory::validation);
  CHECK(category_of([] { parse_network(R"({"parties":["A","B"],"sources":[[]]})"); }) == ErrorCategory::validation);
  CHECK(category_of([] { parse_network(R"({"parties":["A","B"],"sources":[[1,1]]})"); }) == ErrorCategory::validation);
  CHECK(category_of([] { parse_network(R"({"parties":[],"sources":[]})"); }) == ErrorCategory::validation);
  CHECK(category_of([] { parse_network(R"({"parties":["A"]})"); }) == ErrorCategory::input);
  CHECK(category_of([] { parse_network("{not json"); }) == ErrorCategory::input);
}

TEST_CASE("validate reports findings without throwing") {
  const auto findings = validate({"A", "B"}, {Source{{0, 1}}, Source{{}}, Source{{0, 5}}});
  REQUIRE(findings.size() == 2);
  CHECK(findings[0].message.find("source 2") != std::string::npos);
  CHECK(findings[1].message.find("source 3") != std::string::npos);
  CHECK(validate({"A", "B"}, {Source{{0, 1}}, Source{{0, 1}}}).empty());
  CHECK(validate(builtin(BuiltinKind::cycle, 3)).empty());
}

TEST_CASE("builtin families") {
  const auto chain = builtin(BuiltinKind::chain, 3);
  CHECK(chain.sources() == std::vector<Source>{{{0, 1}}, {{1, 2}}});
  const auto star = builtin(BuiltinKind::star, 4);
  CHECK(star.sources() == std::vector<Source>{{{0, 3}}, {{1, 3}}, {{2, 3}}});
  CHECK(builtin(BuiltinKind::cycle, 5).source_count() == 5);
  for (int n = 2; n <= 7; ++n) {
    CHECK(builtin(BuiltinKind::chain, n).source_count() == n - 1);
    CHECK(builtin(BuiltinKind::complete, n, 2).source_count() == n * (n - 1) / 2);
  }
  CHECK(builtin(BuiltinKind::complete, 5, 3).source_count() == 10);
  const auto single = builtin(BuiltinKind::single_source, 4);
  CHECK(single.source_count() == 1);
  CHECK(single.sources()[0].parties.size() == 4);
  CHECK_THROWS_AS(builtin(BuiltinKind::complete, 3, 4), Error);
  CHECK_THROWS_AS(builtin(BuiltinKind::cycle, 2), Error);
}

TEST_CASE("builtin recognition") {
  int arity = 0;
  CHECK(recognize_builtin(builtin(BuiltinKind::chain, 4)) == BuiltinKind::chain);
  CHECK(recognize_builtin(builtin(BuiltinKind::star, 5)) == BuiltinKind::star);
  CHECK(recognize_builtin(builtin(BuiltinKind::cycle, 6)) == BuiltinKind::cycle);
  CHECK(recognize_builtin(builtin(BuiltinKind::complete, 4, 3), &arity) == BuiltinKind::complete);
  CHECK(arity == 3);
  const auto shuffled = NetworkTopology::with_party_count(3, {{{2, 1}}, {{1, 0}}});
  CHECK(recognize_builtin(shuffled) == BuiltinKind::chain);
  const auto other = NetworkTopology::with_party_count(3, {{{0, 1}}, {{0, 1}}});
  CHECK_FALSE(recognize_builtin(other).has_value());
}

TEST_CASE("serialize then parse is the identity") {
  support::Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto t = support::random_hypergraph(rng, 8, 10, 4);
    CHECK(parse_network(serialize_network(t).dump()) == t);
  }
  const NetworkTopology hinted({"X", "Y"}, {Source{{0, 1}}}, {2, 4});
  CHECK(parse_network(serialize_network(hinted).dump()) == hinted);
}

TEST_CASE("describe") {
  CHECK(describe(builtin(BuiltinKind::chain, 3)) == "A1,A2,A3 | {1,2} {2,3}");
}

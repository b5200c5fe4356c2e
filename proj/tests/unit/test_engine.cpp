#include "consnet/engine.hpp"

#include "consnet/error.hpp"

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace consnet;
using namespace consnet::testing;

namespace {

std::vector<std::string> theorems(const AnalysisReport& report) {
    std::vector<std::string> out;
    for (const auto& line : report.lines) out.push_back(line.theorem);
    return out;
}

const GuaranteeLine& line_of(const AnalysisReport& report, const std::string& theorem) {
    auto it = std::find_if(report.lines.begin(), report.lines.end(),
                           [&](const GuaranteeLine& l) { return l.theorem == theorem; });
    REQUIRE(it != report.lines.end());
    return *it;
}

bool has_evidence(const GuaranteeLine& line, const std::string& item) {
    return std::find(line.evidence.begin(), line.evidence.end(), item) != line.evidence.end();
}

} // namespace

TEST_CASE("all-different example fires no global consistency guarantee") {
    ConstraintNetwork net = n2();
    AnalysisReport report = analyze(net);
    CHECK(report.r == 2);
    CHECK_FALSE(report.globally_consistent);
    CHECK(report.satisfiable);
    CHECK(report.oracle_agrees);
    for (const auto& line : report.lines) CHECK(line.conclusion != kGloballyConsistent);
    CHECK(line_of(report, "dual-adaptive").conclusion == kNotEstablished);
    CHECK(has_evidence(line_of(report, "dual-adaptive"), "dually-adaptive=no"));
}

TEST_CASE("lines appear in a fixed order") {
    AnalysisOptions options;
    options.m_values = {2, 1, 2};
    AnalysisReport report = analyze(n2(), options);
    CHECK(report.m_values == std::vector<std::size_t>{1, 2});
    CHECK(theorems(report) == std::vector<std::string>{"tree-convexity", "tree-convexity-relational",
                                                       "weak-tightness", "weak-tightness-relational",
                                                       "weak-tightness", "weak-tightness-relational",
                                                       "dual-adaptive"});
}

TEST_CASE("default m values come from proper tightness") {
    // Constraints among x1, x2, x3 are properly 2-tight; those on x are
    // properly 3-tight.
    CHECK(analyze(n2()).m_values == std::vector<std::size_t>{2, 3});
    CHECK(analyze(leq_1_to_10()).m_values == std::vector<std::size_t>{10});
}

TEST_CASE("accessibility is tree convex and globally consistent") {
    ConstraintNetwork net = accessibility();
    AnalysisReport report = analyze(net);
    CHECK(report.globally_consistent);
    CHECK(report.oracle_agrees);
    const GuaranteeLine& tree = line_of(report, "tree-convexity");
    CHECK(tree.preconditions_hold);
    CHECK(tree.conclusion == kGloballyConsistent);
    CHECK(has_evidence(tree, "tree-convex=yes"));
    CHECK(has_evidence(tree, "tree-source=searched"));
    CHECK(has_evidence(tree, "strongly-2-consistent=yes"));
    REQUIRE(report.searched_tree.has_value());
    CHECK(report.searched_tree->holds);

    AnalysisOptions options;
    options.tree = ValueTree::from_edges({"L", "N", "W", "A", "b", "r", "w", "f"}, "L",
                                         {{"L", "N"}, {"L", "W"}, {"L", "A"}, {"L", "b"}, {"b", "r"}, {"b", "w"}, {"b", "f"}});
    AnalysisReport given = analyze(net, options);
    CHECK(has_evidence(line_of(given, "tree-convexity"), "tree-source=given"));
    CHECK_FALSE(given.searched_tree.has_value());
}

TEST_CASE("search beyond the exact limit is reported, not concluded") {
    AnalysisReport report = analyze(leq_1_to_10());
    REQUIRE(report.search_error.has_value());
    const GuaranteeLine& tree = line_of(report, "tree-convexity");
    CHECK(tree.error.has_value());
    CHECK(has_evidence(tree, "tree-convex=unknown"));
    CHECK(tree.conclusion == kNotEstablished);
}

TEST_CASE("weak tightness above the network size is vacuous") {
    AnalysisOptions options;
    options.m_values = {1};
    AnalysisReport report = analyze(leq_1_to_10(), options);
    const GuaranteeLine& weak = line_of(report, "weak-tightness");
    CHECK(has_evidence(weak, "weakly-1-tight-at-3=vacuous"));
    CHECK(has_evidence(line_of(report, "weak-tightness-relational"), "weakly-1-tight-at-3=vacuous"));
}

TEST_CASE("relational weak tightness also needs the low levels") {
    // Strongly relationally 2-consistent and vacuously weakly 1-tight at
    // level 3, yet (v0=1, v1=0) has no value of v2.
    ConstraintNetwork net;
    net.add_variable("v0", {"0", "1", "2"});
    net.add_variable("v1", {"0", "1"});
    net.add_variable("v2", {"0", "1", "2"});
    net.add_constraint("c_v2", {"v2"}, {{"0"}, {"2"}});
    net.add_constraint("c_v0_v1", {"v0", "v1"}, {{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}, {"2", "1"}});
    net.add_constraint("c_v0_v2", {"v0", "v2"},
                       {{"0", "0"}, {"0", "1"}, {"0", "2"}, {"1", "1"}, {"1", "2"}, {"2", "0"}});
    net.add_constraint("c_v1_v2", {"v1", "v2"}, {{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "2"}});
    AnalysisOptions options;
    options.m_values = {1};
    AnalysisReport report = analyze(net, options);
    CHECK_FALSE(report.globally_consistent);
    CHECK(report.oracle_agrees);
    const GuaranteeLine& rel = line_of(report, "weak-tightness-relational");
    CHECK(has_evidence(rel, "strongly-relationally-2-consistent=yes"));
    CHECK(has_evidence(rel, "strongly-3-consistent=no"));
    CHECK(rel.conclusion == kNotEstablished);
}

TEST_CASE("empty networks are rejected") {
    CHECK_THROWS_AS(analyze(ConstraintNetwork{}), InputError);
}

TEST_CASE("random networks: every fired guarantee agrees with brute force") {
    Rng rng(71);
    NetworkShape shape;
    shape.max_vars = 5;
    shape.tuple_density = 0.75;
    std::size_t fired = 0;
    for (int round = 0; round < 300; ++round) {
        ConstraintNetwork net = random_network(rng, shape);
        AnalysisReport report = analyze(net);
        CHECK(report.oracle_agrees);
        CHECK(report.globally_consistent == oracle_globally_consistent(net));
        CHECK(report.satisfiable == !oracle_solutions(net).empty());
        for (const auto& line : report.lines) {
            if (line.conclusion == kGloballyConsistent) {
                ++fired;
                CHECK(report.globally_consistent);
            }
            if (line.conclusion != kNotEstablished) CHECK(line.preconditions_hold);
        }
    }
    CHECK(fired > 0);
}

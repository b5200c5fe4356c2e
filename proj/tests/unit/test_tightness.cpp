#include "consnet/tightness.hpp"

#include "consnet/error.hpp"

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>

using namespace consnet;
using namespace consnet::testing;

namespace {

VarSet scope_of(std::initializer_list<VarId> vars) {
    VarSet s = 0;
    for (VarId v : vars) s |= var_bit(v);
    return s;
}

/// Variables 1..5 over {0,1}, every pair and triple constrained. Scopes in
/// `tight` get a properly 1-tight relation (parity for triples, equality for
/// pairs); the rest stay universal.
ConstraintNetwork five_with_tight(const std::vector<VarSet>& tight) {
    ConstraintNetwork net = complete_five();
    for (VarSet scope : tight) {
        for_each_instantiation(net, scope, false, [&](const Instantiation& a) {
            int parity = 0;
            for (VarId v : var_list(scope)) parity ^= a[v];
            if (parity != 0) net.forbid(a, scope);
            return true;
        });
    }
    return net;
}

/// Extension-set sizes counted tuple by tuple through Constraint::allows.
Tightness counted_tightness(const ConstraintNetwork& net, std::size_t c, VarId x) {
    const Constraint& con = net.constraint(c);
    const VarSet rest = con.scope_set() & ~var_bit(x);
    Tightness t;
    t.domain_size = net.variable(x).domain_size();
    for_each_instantiation(net, rest, false, [&](const Instantiation& a) {
        Instantiation full = a;
        std::size_t count = 0;
        for (std::size_t u = 0; u < t.domain_size; ++u) {
            full.bind(x, static_cast<int>(u));
            if (con.allows(full)) ++count;
        }
        t.proper_m_tight = std::max(t.proper_m_tight, count);
        if (count < t.domain_size) t.m_tight = std::max(t.m_tight, count);
        return true;
    });
    return t;
}

/// Complete binary network whose relations are random partial matchings,
/// hence properly 1-tight.
ConstraintNetwork random_matching_network(Rng& rng, std::size_t n, std::size_t d) {
    ConstraintNetwork net;
    std::vector<std::string> dom;
    for (std::size_t i = 0; i < d; ++i) dom.push_back(std::to_string(i));
    for (std::size_t v = 0; v < n; ++v) net.add_variable("v" + std::to_string(v), dom);
    for (VarId a = 0; a < n; ++a)
        for (VarId b = a + 1; b < n; ++b) {
            Constraint c("c_" + std::to_string(a) + "_" + std::to_string(b), {a, b}, {d, d});
            std::vector<int> perm(d);
            for (std::size_t i = 0; i < d; ++i) perm[i] = static_cast<int>(i);
            std::shuffle(perm.begin(), perm.end(), rng);
            for (std::size_t i = 0; i < d; ++i)
                if (chance(rng, 0.8)) c.allow(std::vector<int>{static_cast<int>(i), perm[i]});
            net.add_constraint(std::move(c));
        }
    return net;
}

} // namespace

TEST_CASE("tightness of x <= y over 1..10") {
    ConstraintNetwork net = leq_1_to_10();
    for (const char* v : {"x", "y"}) {
        Tightness t = constraint_tightness(net, 0, net.var_id(v));
        CHECK(t.m_tight == 9);
        CHECK(t.proper_m_tight == 10);
        CHECK(t.domain_size == 10);
    }
    CHECK_FALSE(is_properly_m_tight(net, 0, 9));
    CHECK(is_properly_m_tight(net, 0, 10));
}

TEST_CASE("tightness of the bipartite relation") {
    ConstraintNetwork net = c5();
    CHECK(constraint_tightness(net, 0, net.var_id("y")).proper_m_tight == 2);
    Tightness tx = constraint_tightness(net, 0, net.var_id("x"));
    CHECK(tx.proper_m_tight == 3);
    CHECK(tx.m_tight == 2);
}

TEST_CASE("universal and empty relations") {
    ConstraintNetwork net;
    net.add_variable("x", {"a", "b", "c"});
    net.add_variable("y", {"a", "b"});
    net.ensure_constraint(net.var_set({"x", "y"}));
    Tightness t = constraint_tightness(net, 0, 0);
    CHECK(t.m_tight == 0);
    CHECK(t.proper_m_tight == 3);

    ConstraintNetwork empty = unsatisfiable_pair();
    CHECK(is_properly_m_tight(empty, 0, 0));
}

TEST_CASE("tightness rejects variables outside the scope") {
    ConstraintNetwork net = n1();
    CHECK_THROWS_AS(constraint_tightness(net, net.constraint_id("c_S3"), net.var_id("x1")), InputError);
}

TEST_CASE("tightness agrees with per-tuple counting and never grows under tightening") {
    Rng rng(21);
    for (int round = 0; round < 200; ++round) {
        ConstraintNetwork net = random_network(rng, {});
        for (const auto& e : tightness_report(net)) {
            Tightness expect = counted_tightness(net, e.constraint, e.variable);
            CHECK(e.tightness.m_tight == expect.m_tight);
            CHECK(e.tightness.proper_m_tight == expect.proper_m_tight);
            CHECK(e.tightness.m_tight <= e.tightness.proper_m_tight);
            CHECK(e.tightness.proper_m_tight <= e.tightness.domain_size);
        }
        if (net.constraint_count() == 0) continue;
        ConstraintNetwork tighter = net;
        const std::size_t c = uniform(rng, 0, net.constraint_count() - 1);
        const VarSet scope = net.constraint(c).scope_set();
        for_each_instantiation(net, scope, false, [&](const Instantiation& a) {
            if (chance(rng, 0.3)) tighter.forbid(a, scope);
            return true;
        });
        for (VarId x : net.constraint(c).scope())
            CHECK(constraint_tightness(tighter, c, x).proper_m_tight <=
                  constraint_tightness(net, c, x).proper_m_tight);
    }
}

TEST_CASE("weak tightness counterexample through non-tight neighbours") {
    ConstraintNetwork net = weakly_tight_counterexample();
    const VarId y2 = net.var_id("y2");
    auto at3 = is_weakly_m_tight(net, 1, 3);
    CHECK_FALSE(at3.holds);
    REQUIRE(at3.counterexample.has_value());
    CHECK(at3.counterexample->first == net.var_set({"y1", "y3", "y4"}));
    CHECK(at3.counterexample->second == y2);

    auto at2 = is_weakly_m_tight(net, 1, 2);
    CHECK_FALSE(at2.holds);
    REQUIRE(at2.counterexample.has_value());
    CHECK(at2.counterexample->first == net.var_set({"y1", "y3"}));
    CHECK(at2.counterexample->second == y2);

    // With m = 3 every constraint qualifies.
    CHECK(is_weakly_m_tight(net, 3, 2).holds);
    CHECK_THROWS_AS(is_weakly_m_tight(net, 1, 0), InputError);
    CHECK_THROWS_AS(is_weakly_m_tight(net, 1, 4), InputError);
}

TEST_CASE("pairs without relevant constraints are reported as vacuous") {
    ConstraintNetwork net;
    for (const char* v : {"a", "b", "c"}) net.add_variable(v, {"0", "1"});
    net.add_constraint("c_a_b", {"a", "b"}, {{"0", "0"}, {"1", "1"}});
    auto v = is_weakly_m_tight(net, 1, 1);
    CHECK(v.holds);
    CHECK_FALSE(v.vacuous.empty());
    CHECK(std::find(v.vacuous.begin(), v.vacuous.end(), std::make_pair(var_bit(0), VarId{2})) != v.vacuous.end());
}

TEST_CASE("five-variable table: relevant constraints per row") {
    ConstraintNetwork net = complete_five();
    auto names = [&](VarSet y, VarId x) {
        std::vector<std::string> out;
        for (std::size_t c : relevant_constraints(net, y, x)) {
            std::string s;
            for (VarId v : net.constraint(c).scope()) s += net.variable(v).name();
            out.push_back(s);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    auto sorted = [](std::vector<std::string> v) {
        for (auto& s : v) std::sort(s.begin(), s.end());
        std::sort(v.begin(), v.end());
        return v;
    };
    // Row label: the four assigned variables, then x.
    CHECK(names(scope_of({0, 1, 2, 3}), 4) ==
          sorted({"125", "135", "145", "235", "245", "345", "15", "25", "35", "45"}));
    CHECK(names(scope_of({1, 2, 3, 4}), 0) ==
          sorted({"231", "241", "251", "341", "351", "451", "21", "31", "41", "51"}));
    CHECK(names(scope_of({2, 3, 4, 0}), 1) ==
          sorted({"132", "142", "152", "342", "352", "452", "12", "32", "42", "52"}));
    CHECK(names(scope_of({3, 4, 0, 1}), 2) ==
          sorted({"123", "143", "153", "243", "253", "453", "13", "23", "43", "53"}));
    CHECK(names(scope_of({4, 0, 1, 2}), 3) ==
          sorted({"124", "134", "154", "234", "254", "354", "14", "24", "34", "54"}));
}

TEST_CASE("five-variable table: tight choices that give weak tightness at level 4") {
    const VarSet s125 = scope_of({0, 1, 4});
    const VarSet s134 = scope_of({0, 2, 3});
    CHECK(is_weakly_m_tight(five_with_tight({s125, s134}), 1, 4).holds);
    CHECK(is_weakly_m_tight(five_with_tight({scope_of({0, 4}), scope_of({1, 2}), scope_of({2, 3})}), 1, 4).holds);

    auto only = is_weakly_m_tight(five_with_tight({s125}), 1, 4);
    CHECK_FALSE(only.holds);
    REQUIRE(only.counterexample.has_value());
    CHECK(only.counterexample->first == scope_of({0, 1, 2, 4}));
    CHECK(only.counterexample->second == 3);

    CHECK_FALSE(is_weakly_m_tight(complete_five(), 1, 4).holds);
    CHECK(is_weakly_m_tight(complete_five(), 2, 1).holds);
}

TEST_CASE("whole-constraint mode is stricter") {
    // c5 is properly 2-tight w.r.t. y only; x = z covers the extensions to x.
    ConstraintNetwork net = c5();
    net.add_variable("z", {"a", "b", "c"});
    net.add_constraint("c_xz", {"x", "z"}, {{"a", "a"}, {"b", "b"}, {"c", "c"}});
    CHECK(is_weakly_m_tight(net, 2, 2).holds);
    auto whole = is_weakly_m_tight(net, 2, 2, TightnessMode::WholeConstraint);
    CHECK_FALSE(whole.holds);
    REQUIRE(whole.counterexample.has_value());
    CHECK(whole.counterexample->first == net.var_set({"x", "z"}));
    CHECK(whole.counterexample->second == net.var_id("y"));

    Rng rng(35);
    for (int round = 0; round < 200; ++round) {
        ConstraintNetwork r = random_network(rng, {});
        const std::size_t m = uniform(rng, 1, 2);
        const std::size_t k = uniform(rng, 1, r.variable_count() - 1);
        if (is_weakly_m_tight(r, m, k, TightnessMode::WholeConstraint).holds) CHECK(is_weakly_m_tight(r, m, k).holds);
    }
}

TEST_CASE("every pair tight gives weak tightness at every level") {
    Rng rng(33);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = uniform(rng, 3, 6);
        ConstraintNetwork net = random_matching_network(rng, n, uniform(rng, 2, 4));
        for (std::size_t k = 1; k < n; ++k) {
            CHECK(is_weakly_m_tight(net, 1, k).holds);
            CHECK(weak_tightness_sufficient_by_degree(net, 1, k));
        }
    }
}

TEST_CASE("random networks: level monotonicity and degree sufficiency") {
    Rng rng(34);
    NetworkShape shape;
    shape.max_vars = 6;
    shape.binary_density = 0.8;
    shape.tuple_density = 0.45;
    for (int round = 0; round < 300; ++round) {
        ConstraintNetwork net = random_network(rng, shape);
        const std::size_t n = net.variable_count();
        const std::size_t m = uniform(rng, 1, 2);
        for (std::size_t k = 1; k < n; ++k) {
            const bool holds = is_weakly_m_tight(net, m, k).holds;
            if (holds)
                for (std::size_t j = k + 1; j < n; ++j) CHECK(is_weakly_m_tight(net, m, j).holds);
            if (weak_tightness_sufficient_by_degree(net, m, k)) CHECK(holds);
        }
    }
}

TEST_CASE("degree condition examples") {
    // Four variables, complete binary; each variable in exactly two equality
    // constraints (a 4-cycle) and one universal constraint.
    ConstraintNetwork net;
    for (const char* v : {"a", "b", "c", "d"}) net.add_variable(v, {"0", "1", "2"});
    auto eq = [&](const char* p, const char* q) {
        net.add_constraint(std::string("c_") + p + "_" + q, {p, q}, {{"0", "0"}, {"1", "1"}, {"2", "2"}});
    };
    eq("a", "b");
    eq("b", "c");
    eq("c", "d");
    eq("a", "d");
    CHECK(tight_binary_degrees(net, 1) == std::vector<std::size_t>{2, 2, 2, 2});
    CHECK(weak_tightness_sufficient_by_degree(net, 1, 2));
    CHECK(is_weakly_m_tight(with_universal_binaries(net), 1, 2).holds);
    CHECK_FALSE(weak_tightness_sufficient_by_degree(net, 1, 1));

    ConstraintNetwork loose = with_universal_binaries(weakly_tight_counterexample());
    CHECK(tight_binary_degrees(loose, 1)[loose.var_id("y2")] == 0);
    CHECK_FALSE(weak_tightness_sufficient_by_degree(loose, 1, 2));
}

TEST_CASE("minimum tight count") {
    CHECK(minimum_tight_count(3) == 1);
    CHECK(minimum_tight_count(4) == 4);
    CHECK(minimum_tight_count(5) == 7);
    CHECK(minimum_tight_count(6) == 11);
    CHECK(minimum_tight_count(7) == 17);
    CHECK_THROWS_AS(minimum_tight_count(2), InputError);
}

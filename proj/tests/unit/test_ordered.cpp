#include "consnet/ordered.hpp"

#include "consnet/error.hpp"

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace consnet;
using namespace consnet::testing;

namespace {

std::vector<VarId> ids(const ConstraintNetwork& net, std::initializer_list<std::string_view> names) {
    std::vector<VarId> out;
    for (auto n : names) out.push_back(net.var_id(n));
    return out;
}

/// Ordering y, w, z, x with w = y, w != z, and DR(x) = {x = y, x != z,
/// universal on (x, w)}. Adaptively consistent, yet x = y and x != z alone
/// strand (y, z) = (0, 0), which no solution uses.
ConstraintNetwork partial_context_network() {
    ConstraintNetwork net;
    for (const char* v : {"y", "w", "z", "x"}) net.add_variable(v, {"0", "1"});
    net.add_constraint("c_yw", {"y", "w"}, {{"0", "0"}, {"1", "1"}});
    net.add_constraint("c_wz", {"w", "z"}, {{"0", "1"}, {"1", "0"}});
    net.add_constraint("c_xy", {"y", "x"}, {{"0", "0"}, {"1", "1"}});
    net.add_constraint("c_xz", {"z", "x"}, {{"0", "1"}, {"1", "0"}});
    net.ensure_constraint(net.var_set({"w", "x"}));
    return net;
}

bool valid_solution(const ConstraintNetwork& net, const Instantiation& s) {
    if (s.variables() != net.all_variables()) return false;
    Assignment a(net.variable_count());
    for (VarId v = 0; v < net.variable_count(); ++v) a[v] = s[v];
    return oracle_consistent(net, a);
}

} // namespace

TEST_CASE("widths and directional relevance on the four-constraint example") {
    ConstraintNetwork net = n1();
    OrderedView view(net, ids(net, {"x1", "x2", "x4", "x5", "x3"}));
    const VarId x3 = net.var_id("x3");
    CHECK(view.width("x3") == 4);
    CHECK(view.width("x1") == 0);
    CHECK(view.position(x3) == 4);
    CHECK(view.predecessors(x3) == net.var_set({"x1", "x2", "x4", "x5"}));

    const std::vector<std::size_t> pair{net.constraint_id("c_S1"), net.constraint_id("c_S3")};
    CHECK(dr_consistent_on(view, pair, x3).holds);
    CHECK_THROWS_AS(dr_consistent_on(view, pair, net.var_id("x2")), InputError);
    CHECK_THROWS_AS(dr_consistent_on(view, pair, x3, var_bit(x3)), InputError);

    auto tight = tightest_dr_constraint(view, x3);
    REQUIRE(tight.has_value());
    CHECK(tight->constraint == net.constraint_id("c_S1"));
    CHECK(tight->m == 2);
    CHECK_FALSE(tightest_dr_constraint(view, net.var_id("x1")).has_value());
}

TEST_CASE("tightest constraint on x <= y") {
    ConstraintNetwork net = leq_1_to_10();
    OrderedView view(net);
    auto t = tightest_dr_constraint(view, net.var_id("y"));
    REQUIRE(t.has_value());
    CHECK(t->m == 10);
}

TEST_CASE("orderings must be permutations") {
    ConstraintNetwork net = n2();
    CHECK_THROWS_AS(OrderedView(net, {0, 1, 2}), InputError);
    CHECK_THROWS_AS(OrderedView(net, {0, 1, 2, 2}), InputError);
    OrderedView view(net);
    CHECK(view.ordering() == std::vector<VarId>{0, 1, 2, 3});
}

TEST_CASE("all-different example under its ordering") {
    ConstraintNetwork net = n2();
    OrderedView view(net);
    const VarId x3 = net.var_id("x3");

    auto adaptive = is_adaptively_consistent(view);
    CHECK_FALSE(adaptive.holds);
    REQUIRE(adaptive.witness.has_value());
    CHECK(adaptive.witness->variable == x3);
    CHECK(net.format(adaptive.witness->assignment) == "x1=1,x2=2,x=3");

    auto dual = is_dually_adaptively_consistent(view);
    CHECK_FALSE(dual.holds);
    REQUIRE(dual.witness.has_value());
    CHECK(dual.witness->variable == x3);

    auto greedy = backtrack_free_solve(view);
    CHECK_FALSE(greedy.solution.has_value());
    REQUIRE(greedy.stuck_at.has_value());
    CHECK(*greedy.stuck_at == x3);
    CHECK(net.format(greedy.prefix) == "x1=1,x2=2,x=3");

    auto search = backtracking_solve(net);
    REQUIRE(search.solution.has_value());
    CHECK(valid_solution(net, *search.solution));
    CHECK(search.backtracks > 0);
    CHECK(count_solutions(net) == 6);

    ConstraintNetwork adapted = enforce_adaptive_consistency(view);
    CHECK(is_adaptively_consistent(OrderedView(adapted)).holds);
    CHECK(same_solutions(net, adapted));
    auto after = backtrack_free_solve(OrderedView(adapted));
    REQUIRE(after.solution.has_value());
    CHECK(after.backtracks == 0);

    ConstraintNetwork dualized = enforce_dually_adaptive(view);
    CHECK(is_dually_adaptively_consistent(OrderedView(dualized)).holds);
    CHECK(same_solutions(net, dualized));
}

TEST_CASE("dual obligations range over the whole directional context") {
    ConstraintNetwork net = partial_context_network();
    OrderedView view(net);
    const VarId x = net.var_id("x");
    const std::vector<std::size_t> pair{net.constraint_id("c_xy"), net.constraint_id("c_xz")};
    CHECK_FALSE(dr_consistent_on(view, pair, x).holds);
    CHECK(dr_consistent_on(view, pair, x, net.var_set({"y", "w", "z"})).holds);
    CHECK(is_adaptively_consistent(view).holds);
    CHECK(is_dually_adaptively_consistent(view).holds);
    CHECK(backtrack_free_solve(view).solution.has_value());
}

TEST_CASE("unsatisfiable networks") {
    ConstraintNetwork net = unsatisfiable_pair();
    OrderedView view(net);
    CHECK(count_solutions(net) == 0);
    CHECK_FALSE(backtracking_solve(net).solution.has_value());
    auto greedy = backtrack_free_solve(view);
    CHECK_FALSE(greedy.solution.has_value());
    CHECK(greedy.stuck_at.has_value());
    CHECK_FALSE(is_adaptively_consistent(OrderedView(enforce_adaptive_consistency(view))).holds);
    CHECK_FALSE(is_dually_adaptively_consistent(OrderedView(enforce_dually_adaptive(view))).holds);
}

TEST_CASE("random networks and orderings") {
    Rng rng(61);
    NetworkShape shape;
    shape.max_vars = 6;
    for (int round = 0; round < 250; ++round) {
        ConstraintNetwork net = random_network(rng, shape);
        OrderedView view(net, random_ordering(rng, net.variable_count()));
        const auto expected = oracle_solutions(net);
        const bool satisfiable = !expected.empty();
        CHECK(count_solutions(net) == expected.size());
        CHECK(backtracking_solve(net, view.ordering()).solution.has_value() == satisfiable);

        const bool adaptive = is_adaptively_consistent(view).holds;
        const bool dual = is_dually_adaptively_consistent(view).holds;
        if (adaptive) CHECK(dual);
        if (dual) {
            auto trace = backtrack_free_solve(view);
            CHECK(trace.backtracks == 0);
            if (satisfiable) {
                REQUIRE(trace.solution.has_value());
                CHECK(valid_solution(net, *trace.solution));
            }
        }

        ConstraintNetwork adapted = enforce_adaptive_consistency(view);
        CHECK(same_solutions(net, adapted));
        CHECK(only_tightened(net, adapted));
        CHECK(is_adaptively_consistent(OrderedView(adapted)).holds == satisfiable);

        ConstraintNetwork dualized = enforce_dually_adaptive(view);
        CHECK(same_solutions(net, dualized));
        CHECK(only_tightened(net, dualized));
        CHECK(is_dually_adaptively_consistent(OrderedView(dualized)).holds == satisfiable);
        if (satisfiable) {
            auto trace = backtrack_free_solve(OrderedView(dualized));
            REQUIRE(trace.solution.has_value());
            CHECK(valid_solution(net, *trace.solution));
        }
    }
}

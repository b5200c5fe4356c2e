#include "fixtures.hpp"

#include <vector>

#ifndef CONSNET_TEST_DATA_DIR
#error "CONSNET_TEST_DATA_DIR must point at tests/data"
#endif

namespace consnet::testing {

namespace {

using Rows = std::vector<std::vector<std::string>>;

Rows pairs_where(const std::vector<std::string>& xs, const std::vector<std::string>& ys,
                 bool (*keep)(const std::string&, const std::string&)) {
    Rows rows;
    for (const auto& x : xs)
        for (const auto& y : ys)
            if (keep(x, y)) rows.push_back({x, y});
    return rows;
}

bool different(const std::string& a, const std::string& b) { return a != b; }
bool equal(const std::string& a, const std::string& b) { return a == b; }

} // namespace

std::string data_path(const std::string& file) { return std::string(CONSNET_TEST_DATA_DIR) + "/" + file; }

ConstraintNetwork n1() {
    ConstraintNetwork net;
    net.add_variable("x1", {"a"});
    net.add_variable("x2", {"b"});
    net.add_variable("x3", {"a", "b", "c", "d"});
    net.add_variable("x4", {"a"});
    net.add_variable("x5", {"a"});
    net.add_constraint("c_S1", {"x1", "x2", "x3"}, {{"a", "b", "d"}, {"a", "b", "a"}});
    net.add_constraint("c_S2", {"x2", "x4", "x3"}, {{"b", "a", "d"}, {"b", "a", "b"}});
    net.add_constraint("c_S3", {"x2", "x3"}, {{"b", "d"}, {"b", "c"}});
    net.add_constraint("c_S4", {"x2", "x5", "x3"}, {{"b", "a", "d"}, {"b", "a", "a"}});
    return net;
}

ConstraintNetwork n2() {
    const std::vector<std::string> small{"1", "2", "3"};
    const std::vector<std::string> large{"1", "2", "3", "4"};
    ConstraintNetwork net;
    net.add_variable("x1", small);
    net.add_variable("x2", small);
    net.add_variable("x", large);
    net.add_variable("x3", small);
    const std::vector<std::string> names{"x1", "x2", "x", "x3"};
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            const auto& di = net.variable(i).domain();
            const auto& dj = net.variable(j).domain();
            net.add_constraint("c_" + names[i] + "_" + names[j], {names[i], names[j]}, pairs_where(di, dj, different));
        }
    net.set_ordering(std::vector<VarId>{0, 1, 2, 3});
    return net;
}

ConstraintNetwork accessibility() {
    ConstraintNetwork net;
    net.add_variable("staff", {"N", "W", "A", "L"});
    net.add_variable("access", {"r", "w", "f", "b"});
    net.add_constraint("c_access", {"staff", "access"},
                       {{"N", "r"}, {"N", "b"}, {"W", "w"}, {"W", "b"}, {"A", "f"}, {"A", "b"},
                        {"L", "r"}, {"L", "w"}, {"L", "f"}, {"L", "b"}});
    return net;
}

ConstraintNetwork leq_1_to_10() {
    std::vector<std::string> d;
    for (int i = 1; i <= 10; ++i) d.push_back(std::to_string(i));
    ConstraintNetwork net;
    net.add_variable("x", d);
    net.add_variable("y", d);
    Rows rows;
    for (int i = 1; i <= 10; ++i)
        for (int j = i; j <= 10; ++j) rows.push_back({std::to_string(i), std::to_string(j)});
    net.add_constraint("c_leq", {"x", "y"}, rows);
    return net;
}

ConstraintNetwork c5() {
    ConstraintNetwork net;
    net.add_variable("x", {"a", "b", "c"});
    net.add_variable("y", {"a", "b", "c"});
    net.add_constraint("c5", {"x", "y"}, {{"a", "a"}, {"a", "b"}, {"b", "a"}, {"b", "b"}, {"c", "a"}, {"c", "c"}});
    return net;
}

ConstraintNetwork complete_five() {
    ConstraintNetwork net;
    for (int i = 1; i <= 5; ++i) net.add_variable(std::to_string(i), {"0", "1"});
    for (VarId a = 0; a < 5; ++a)
        for (VarId b = a + 1; b < 5; ++b)
            for (VarId c = b + 1; c < 5; ++c) net.ensure_constraint(var_bit(a) | var_bit(b) | var_bit(c));
    for (VarId a = 0; a < 5; ++a)
        for (VarId b = a + 1; b < 5; ++b) net.ensure_constraint(var_bit(a) | var_bit(b));
    return net;
}

ConstraintNetwork weakly_tight_counterexample() {
    const std::vector<std::string> d{"0", "1", "2"};
    ConstraintNetwork net;
    for (const char* name : {"y1", "y2", "y3", "y4"}) net.add_variable(name, d);
    net.add_constraint("c_y1_y2", {"y1", "y2"}, pairs_where(d, d, different));
    net.add_constraint("c_y1_y3", {"y1", "y3"}, pairs_where(d, d, equal));
    net.add_constraint("c_y1_y4", {"y1", "y4"}, pairs_where(d, d, equal));
    net.add_constraint("c_y2_y4", {"y2", "y4"}, pairs_where(d, d, different));
    net.add_constraint("c_y3_y4", {"y3", "y4"}, pairs_where(d, d, equal));
    return net;
}

ConstraintNetwork unsatisfiable_pair() {
    ConstraintNetwork net;
    net.add_variable("x", {"v"});
    net.add_variable("y", {"v"});
    net.add_constraint("c_x_y", {"x", "y"}, {});
    return net;
}

} // namespace consnet::testing

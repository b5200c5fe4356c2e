#include "consnet/convexity.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace consnet {

namespace {

/// Map from domain index of x to tree vertex.
std::vector<int> vertex_map(const ConstraintNetwork& net, VarId x, const ValueTree& tree) {
    std::vector<int> out;
    for (const auto& token : net.variable(x).domain()) {
        int v = tree.index_of(token);
        if (v < 0)
            throw InputError("value '" + token + "' of '" + net.variable(x).name() + "' is not in the tree");
        out.push_back(v);
    }
    return out;
}

std::optional<ConvexityCounterexample> first_violation(const ConstraintNetwork& net, std::size_t constraint,
                                                       VarId x, const ValueTree& tree) {
    const Constraint& c = net.constraint(constraint);
    int xpos = c.position_of(x);
    if (xpos < 0)
        throw InputError("'" + net.variable(x).name() + "' is not in the scope of '" + c.name() + "'");
    const auto to_vertex = vertex_map(net, x, tree);

    std::optional<ConvexityCounterexample> found;
    std::vector<int> vertices;
    for_each_extension(c, static_cast<std::size_t>(xpos), [&](std::span<const int> tuple, std::span<const int> ext) {
        if (found || ext.empty()) return;
        vertices.clear();
        for (int u : ext) vertices.push_back(to_vertex[static_cast<std::size_t>(u)]);
        if (is_subtree(tree, vertices)) return;
        ConvexityCounterexample cx;
        cx.constraint = constraint;
        cx.variable = x;
        cx.assignment = net.empty_instantiation();
        for (std::size_t i = 0; i < c.arity(); ++i)
            if (static_cast<int>(i) != xpos) cx.assignment.bind(c.scope()[i], tuple[i]);
        cx.extension.assign(ext.begin(), ext.end());
        found = std::move(cx);
    });
    return found;
}

void require_universe(const ConstraintNetwork& net, const ValueTree& tree) {
    auto universe = net.value_universe();
    std::set<std::string> want(universe.begin(), universe.end());
    std::set<std::string> have(tree.universe().begin(), tree.universe().end());
    if (want != have) throw InputError("tree must span exactly the union of all domains");
}

} // namespace

ConvexityVerdict is_tree_convex_constraint(const ConstraintNetwork& net, std::size_t constraint, VarId x,
                                           const ValueTree& tree) {
    ConvexityVerdict out;
    out.counterexample = first_violation(net, constraint, x, tree);
    out.holds = !out.counterexample;
    out.tree = tree;
    return out;
}

ConvexityVerdict is_tree_convex_network(const ConstraintNetwork& net, const ValueTree& tree) {
    require_universe(net, tree);
    ConvexityVerdict out;
    out.tree = tree;
    for (std::size_t c = 0; c < net.constraint_count() && !out.counterexample; ++c)
        for (VarId x : net.constraint(c).scope()) {
            out.counterexample = first_violation(net, c, x, tree);
            if (out.counterexample) break;
        }
    out.holds = !out.counterexample;
    return out;
}

ConvexityVerdict is_row_convex_network(const ConstraintNetwork& net, const ValueTree& order) {
    if (!order.is_total_ordering()) throw InputError("row convexity needs a total ordering (a path)");
    ConvexityVerdict out = is_tree_convex_network(net, order);
    out.kind = ConvexityKind::RowConvex;
    return out;
}

ConvexityVerdict find_convexity_tree(const ConstraintNetwork& net, ConvexitySearch mode) {
    const auto universe = net.value_universe();
    if (universe.size() > kMaxExactUniverse)
        throw CapabilityError("convexity search refused: " + std::to_string(universe.size()) +
                              " distinct values exceed the exact limit of " + std::to_string(kMaxExactUniverse));

    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < universe.size(); ++i) index.emplace(universe[i], static_cast<int>(i));

    // Distinct extension sets that could fail: singletons and the whole
    // universe are connected under every tree.
    std::set<std::vector<int>> distinct;
    for (std::size_t c = 0; c < net.constraint_count(); ++c) {
        const Constraint& con = net.constraint(c);
        for (std::size_t pos = 0; pos < con.arity(); ++pos) {
            const Variable& var = net.variable(con.scope()[pos]);
            for_each_extension(con, pos, [&](std::span<const int>, std::span<const int> ext) {
                if (ext.size() < 2 || ext.size() == universe.size()) return;
                std::vector<int> vs;
                for (int u : ext) vs.push_back(index.at(var.value(u)));
                std::sort(vs.begin(), vs.end());
                distinct.insert(std::move(vs));
            });
        }
    }
    const std::vector<std::vector<int>> sets(distinct.begin(), distinct.end());

    ConvexityVerdict out;
    out.kind = mode == ConvexitySearch::Tree ? ConvexityKind::TreeConvex : ConvexityKind::RowConvex;

    if (mode == ConvexitySearch::Tree) {
        for_each_labeled_tree(universe.size(), [&](const std::vector<int>& parent) {
            ValueTree tree(universe, parent);
            for (const auto& vs : sets)
                if (!is_subtree(tree, vs)) return true;
            out.tree.emplace(std::move(tree));
            return false;
        });
    } else {
        std::vector<int> perm(universe.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> position(universe.size());
        do {
            for (std::size_t i = 0; i < perm.size(); ++i) position[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
            bool ok = std::all_of(sets.begin(), sets.end(), [&](const std::vector<int>& vs) {
                int lo = static_cast<int>(universe.size());
                int hi = -1;
                for (int v : vs) {
                    lo = std::min(lo, position[static_cast<std::size_t>(v)]);
                    hi = std::max(hi, position[static_cast<std::size_t>(v)]);
                }
                return hi - lo + 1 == static_cast<int>(vs.size());
            });
            if (ok) {
                std::vector<std::string> order;
                for (int v : perm) order.push_back(universe[static_cast<std::size_t>(v)]);
                out.tree = ValueTree::path(order);
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out.holds = out.tree.has_value();
    return out;
}

} // namespace consnet

#include "consnet/ordered.hpp"

#include "consnet/tightness.hpp"

#include <algorithm>
#include <numeric>

namespace consnet {

namespace {

std::vector<VarId> default_ordering(const ConstraintNetwork& net) {
    if (net.ordering()) return *net.ordering();
    std::vector<VarId> out(net.variable_count());
    std::iota(out.begin(), out.end(), VarId{0});
    return out;
}

/// Values of x allowed by every constraint in `constraints` together with a.
bool has_joint_extension(const ConstraintNetwork& net, const std::vector<std::size_t>& constraints,
                         Instantiation a, VarId x) {
    const int dx = static_cast<int>(net.variable(x).domain_size());
    for (int u = 0; u < dx; ++u) {
        a.bind(x, u);
        bool ok = std::all_of(constraints.begin(), constraints.end(),
                              [&](std::size_t c) { return net.constraint(c).allows(a); });
        if (ok) return true;
    }
    return false;
}

/// First consistent instantiation of `vars` stranded by `constraints`.
std::optional<Instantiation> first_stranded(const ConstraintNetwork& net, const std::vector<std::size_t>& constraints,
                                            VarId x, VarSet vars) {
    std::optional<Instantiation> found;
    for_each_instantiation(net, vars, true, [&](const Instantiation& a) {
        if (has_joint_extension(net, constraints, a, x)) return true;
        found = a;
        return false;
    });
    return found;
}

std::vector<Instantiation> all_stranded(const ConstraintNetwork& net, const std::vector<std::size_t>& constraints,
                                        VarId x, VarSet vars) {
    std::vector<Instantiation> out;
    for_each_instantiation(net, vars, true, [&](const Instantiation& a) {
        if (!has_joint_extension(net, constraints, a, x)) out.push_back(a);
        return true;
    });
    return out;
}

std::size_t proper_tightness(const ConstraintNetwork& net, std::size_t c, VarId x, bool strict) {
    if (!strict) return constraint_tightness(net, c, x).proper_m_tight;
    std::size_t m = 0;
    for (VarId v : net.constraint(c).scope()) m = std::max(m, constraint_tightness(net, c, v).proper_m_tight);
    return m;
}

/// The dual obligations of x: either DR(x) whole, or {c_x} plus each
/// m_x-subset of the other members. Calls `visit(constraints)`; `visit`
/// returns false to stop.
template <typename Visit>
void for_each_obligation(const OrderedView& view, VarId x, bool strict, Visit&& visit) {
    const auto& dr = view.dr(x);
    auto tight = tightest_dr_constraint(view, x, strict);
    if (!tight) return;
    if (dr.size() <= tight->m) {
        visit(dr);
        return;
    }
    std::vector<std::size_t> others;
    for (std::size_t c : dr)
        if (c != tight->constraint) others.push_back(c);
    for_each_combination(others.size(), tight->m, [&](std::span<const std::size_t> pick) {
        std::vector<std::size_t> obligation{tight->constraint};
        for (std::size_t i : pick) obligation.push_back(others[i]);
        std::sort(obligation.begin(), obligation.end());
        return visit(obligation);
    });
}

VarSet dr_context(const OrderedView& view, VarId x) {
    return scope_union(view.network(), view.dr(x)) & ~var_bit(x);
}

} // namespace

OrderedView::OrderedView(ConstraintNetwork net, std::vector<VarId> ordering) : net_(std::move(net)) {
    net_.set_ordering(ordering);
    order_ = std::move(ordering);
    const std::size_t n = net_.variable_count();
    position_.assign(n, 0);
    before_.assign(n, 0);
    dr_.assign(n, {});
    VarSet seen = 0;
    for (std::size_t i = 0; i < order_.size(); ++i) {
        position_[order_[i]] = i;
        before_[order_[i]] = seen;
        seen |= var_bit(order_[i]);
    }
    for (std::size_t c = 0; c < net_.constraint_count(); ++c) {
        const Constraint& con = net_.constraint(c);
        VarId last = con.scope()[0];
        for (VarId v : con.scope())
            if (position_[v] > position_[last]) last = v;
        dr_[last].push_back(c);
    }
}

OrderedView::OrderedView(ConstraintNetwork net) : OrderedView(net, default_ordering(net)) {}

OrderedVerdict dr_consistent_on(const OrderedView& view, const std::vector<std::size_t>& constraints, VarId x,
                                std::optional<VarSet> context) {
    const auto& dr = view.dr(x);
    for (std::size_t c : constraints)
        if (std::find(dr.begin(), dr.end(), c) == dr.end())
            throw InputError("constraint '" + view.network().constraint(c).name() +
                             "' is not directionally relevant to '" + view.network().variable(x).name() + "'");
    VarSet vars = scope_union(view.network(), constraints) & ~var_bit(x);
    if (context) {
        if ((*context & ~view.predecessors(x)) != 0)
            throw InputError("context must lie before '" + view.network().variable(x).name() + "'");
        vars |= *context;
    }
    OrderedVerdict out;
    if (auto a = first_stranded(view.network(), constraints, x, vars))
        out.witness = OrderedWitness{x, constraints, *a};
    out.holds = !out.witness;
    return out;
}

OrderedVerdict is_adaptively_consistent(const OrderedView& view) {
    OrderedVerdict out;
    out.holds = true;
    for (VarId x : view.ordering()) {
        if (view.dr(x).empty()) {
            out.unconstrained |= var_bit(x);
            continue;
        }
        if (!out.holds) continue;
        auto local = dr_consistent_on(view, view.dr(x), x);
        if (!local.holds) {
            out.holds = false;
            out.witness = local.witness;
        }
    }
    return out;
}

std::optional<TightestConstraint> tightest_dr_constraint(const OrderedView& view, VarId x, bool strict) {
    std::optional<TightestConstraint> best;
    for (std::size_t c : view.dr(x)) {
        std::size_t m = proper_tightness(view.network(), c, x, strict);
        if (!best || m < best->m) best = TightestConstraint{c, m};
    }
    return best;
}

OrderedVerdict is_dually_adaptively_consistent(const OrderedView& view, bool strict) {
    OrderedVerdict out;
    out.holds = true;
    for (VarId x : view.ordering()) {
        if (view.dr(x).empty()) {
            out.unconstrained |= var_bit(x);
            continue;
        }
        if (!out.holds) continue;
        const VarSet context = dr_context(view, x);
        for_each_obligation(view, x, strict, [&](const std::vector<std::size_t>& obligation) {
            auto local = dr_consistent_on(view, obligation, x, context);
            if (local.holds) return true;
            out.holds = false;
            out.witness = local.witness;
            return false;
        });
    }
    return out;
}

ConstraintNetwork enforce_adaptive_consistency(const OrderedView& view) {
    ConstraintNetwork net = view.network();
    const auto& order = view.ordering();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const VarId x = *it;
        OrderedView current(net, order);
        const auto& dr = current.dr(x);
        if (dr.empty()) continue;
        const VarSet vars = dr_context(current, x);
        // Nothing can forbid the empty instantiation: x alone is unsatisfiable.
        if (vars == 0) continue;
        // Every stranded instantiation lies on the same variable set, so
        // forbidding one leaves the others consistent.
        for (const auto& a : all_stranded(net, dr, x, vars)) net.forbid(a, vars);
    }
    return net;
}

ConstraintNetwork enforce_dually_adaptive(const OrderedView& view, bool strict) {
    ConstraintNetwork net = view.network();
    const auto& order = view.ordering();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const VarId x = *it;
        bool changed = true;
        while (changed) {
            changed = false;
            OrderedView current(net, order);
            if (current.dr(x).empty()) break;
            const VarSet context = dr_context(current, x);
            std::vector<std::pair<Instantiation, VarSet>> repairs;
            for_each_obligation(current, x, strict, [&](const std::vector<std::size_t>& obligation) {
                const VarSet target = scope_union(net, obligation) & ~var_bit(x);
                if (target == 0) return true;
                for (const auto& a : all_stranded(net, obligation, x, context))
                    repairs.emplace_back(a.restricted_to(target), target);
                return true;
            });
            for (const auto& [a, target] : repairs) {
                if (!is_consistent_instantiation(net, a)) continue;
                if (net.forbid(a, target)) changed = true;
            }
        }
    }
    return net;
}

SearchTrace backtrack_free_solve(const OrderedView& view) {
    const ConstraintNetwork& net = view.network();
    SearchTrace trace;
    trace.prefix = net.empty_instantiation();
    for (VarId x : view.ordering()) {
        const int dx = static_cast<int>(net.variable(x).domain_size());
        bool placed = false;
        for (int u = 0; u < dx && !placed; ++u) {
            trace.prefix.bind(x, u);
            placed = std::all_of(view.dr(x).begin(), view.dr(x).end(),
                                 [&](std::size_t c) { return net.constraint(c).allows(trace.prefix); });
        }
        if (!placed) {
            trace.prefix.unbind(x);
            trace.stuck_at = x;
            return trace;
        }
        ++trace.nodes_visited;
    }
    trace.solution = trace.prefix;
    return trace;
}

SearchTrace backtracking_solve(const ConstraintNetwork& net, std::optional<std::vector<VarId>> ordering) {
    const OrderedView view(net, ordering ? *ordering : default_ordering(net));
    const auto& order = view.ordering();
    const std::size_t n = order.size();
    SearchTrace trace;
    Instantiation a = net.empty_instantiation();
    if (n == 0) {
        trace.solution = a;
        trace.prefix = a;
        return trace;
    }
    std::vector<int> next(n, 0);
    std::size_t depth = 0;
    while (true) {
        const VarId x = order[depth];
        const int dx = static_cast<int>(net.variable(x).domain_size());
        bool placed = false;
        while (next[depth] < dx && !placed) {
            a.bind(x, next[depth]++);
            placed = std::all_of(view.dr(x).begin(), view.dr(x).end(),
                                 [&](std::size_t c) { return net.constraint(c).allows(a); });
        }
        if (placed) {
            ++trace.nodes_visited;
            if (depth + 1 == n) {
                trace.solution = a;
                trace.prefix = a;
                return trace;
            }
            ++depth;
            continue;
        }
        a.unbind(x);
        next[depth] = 0;
        if (depth == 0) {
            trace.prefix = a;
            return trace;
        }
        --depth;
        ++trace.backtracks;
    }
}

std::vector<Instantiation> all_solutions(const ConstraintNetwork& net) {
    return enumerate_instantiations(net, net.all_variables(), true);
}

std::size_t count_solutions(const ConstraintNetwork& net) {
    std::size_t count = 0;
    for_each_instantiation(net, net.all_variables(), true, [&](const Instantiation&) {
        ++count;
        return true;
    });
    return count;
}

} // namespace consnet

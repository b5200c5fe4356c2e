#ifndef CONSNET_ORDERED_HPP
#define CONSNET_ORDERED_HPP

#include "consnet/model.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace consnet {

/// A network together with a total variable ordering. DR(x) holds the
/// constraints involving x and only variables before x (unary constraints
/// on x included), in declaration order.
class OrderedView {
public:
    OrderedView(ConstraintNetwork net, std::vector<VarId> ordering);
    /// Uses the network's own ordering, or declaration order without one.
    explicit OrderedView(ConstraintNetwork net);

    const ConstraintNetwork& network() const noexcept { return net_; }
    const std::vector<VarId>& ordering() const noexcept { return order_; }
    std::size_t position(VarId x) const { return position_.at(x); }
    /// Variables strictly before x.
    VarSet predecessors(VarId x) const { return before_.at(x); }
    const std::vector<std::size_t>& dr(VarId x) const { return dr_.at(x); }
    std::size_t width(VarId x) const { return dr_.at(x).size(); }
    std::size_t width(std::string_view name) const { return width(net_.var_id(name)); }

private:
    ConstraintNetwork net_;
    std::vector<VarId> order_;
    std::vector<std::size_t> position_;
    std::vector<VarSet> before_;
    std::vector<std::vector<std::size_t>> dr_;
};

/// An instantiation of predecessors of `variable` that is consistent but
/// has no value of `variable` satisfying all of `constraints`.
struct OrderedWitness {
    VarId variable = 0;
    std::vector<std::size_t> constraints;
    Instantiation assignment;
};

struct OrderedVerdict {
    bool holds = false;
    std::optional<OrderedWitness> witness;
    /// Variables with no directionally relevant constraint; they satisfy
    /// every per-variable condition trivially.
    VarSet unconstrained = 0;
};

/// Every consistent instantiation of vars(C) - {x}, extended by `context`
/// when given, extends to a value of x satisfying every constraint in C.
/// C must be a subset of DR(x); `context` must lie before x.
OrderedVerdict dr_consistent_on(const OrderedView& view, const std::vector<std::size_t>& constraints, VarId x,
                                std::optional<VarSet> context = std::nullopt);

/// DR(x) is consistent on x for every variable x.
OrderedVerdict is_adaptively_consistent(const OrderedView& view);

struct TightestConstraint {
    std::size_t constraint = 0;
    std::size_t m = 0;
};

/// The constraint of DR(x) with the smallest proper tightness w.r.t. x
/// (w.r.t. every scope variable when `strict`), first in declaration order
/// on ties. Empty when DR(x) is empty.
std::optional<TightestConstraint> tightest_dr_constraint(const OrderedView& view, VarId x, bool strict = false);

/// For every x with c_x and m_x from tightest_dr_constraint: if
/// width(x) <= m_x, DR(x) is consistent on x; otherwise {c_x} together with
/// any m_x other members of DR(x) is consistent on x. Both clauses range
/// over consistent instantiations of all of vars(DR(x)) - {x}.
OrderedVerdict is_dually_adaptively_consistent(const OrderedView& view, bool strict = false);

/// Reverse sweep forbidding, for each x, every consistent instantiation of
/// vars(DR(x)) - {x} that DR(x) strands. The result carries the view's
/// ordering and has the same solutions.
ConstraintNetwork enforce_adaptive_consistency(const OrderedView& view);

/// Reverse sweep repairing each violated dual obligation by forbidding the
/// stranded instantiation on the obligation's variables minus x. The result
/// carries the view's ordering and has the same solutions.
ConstraintNetwork enforce_dually_adaptive(const OrderedView& view, bool strict = false);

struct SearchTrace {
    std::optional<Instantiation> solution;
    std::size_t backtracks = 0;
    std::size_t nodes_visited = 0;
    /// Set when a greedy search found no value for this variable.
    std::optional<VarId> stuck_at;
    /// The assignment built before getting stuck.
    Instantiation prefix;
};

/// Assigns variables in order, each to its first value satisfying DR(x).
/// Never retracts.
SearchTrace backtrack_free_solve(const OrderedView& view);

/// Chronological backtracking in the given order (declaration order when
/// absent). Finds a solution iff one exists.
SearchTrace backtracking_solve(const ConstraintNetwork& net, std::optional<std::vector<VarId>> ordering = std::nullopt);

/// All solutions in lexicographic order.
std::vector<Instantiation> all_solutions(const ConstraintNetwork& net);
std::size_t count_solutions(const ConstraintNetwork& net);

} // namespace consnet

#endif // CONSNET_ORDERED_HPP

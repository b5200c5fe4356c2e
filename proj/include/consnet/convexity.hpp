#ifndef CONSNET_CONVEXITY_HPP
#define CONSNET_CONVEXITY_HPP

#include "consnet/model.hpp"
#include "consnet/valuetree.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace consnet {

enum class ConvexityKind { TreeConvex, RowConvex };

/// A non-trivial extension set that is not a subtree.
struct ConvexityCounterexample {
    std::size_t constraint = 0;
    VarId variable = 0;
    /// Instantiation of the constraint's scope minus `variable`.
    Instantiation assignment;
    /// Domain indices of `variable`.
    std::vector<int> extension;
};

struct ConvexityVerdict {
    ConvexityKind kind = ConvexityKind::TreeConvex;
    bool holds = false;
    std::optional<ValueTree> tree;
    std::optional<ConvexityCounterexample> counterexample;
};

/// Every non-empty extension set of the constraint w.r.t. x is a subtree of
/// `tree`. The tree must contain the domain of x.
ConvexityVerdict is_tree_convex_constraint(const ConstraintNetwork& net, std::size_t constraint, VarId x,
                                           const ValueTree& tree);

/// Every constraint is tree convex w.r.t. every scope variable under one
/// tree spanning exactly the union of all domains.
ConvexityVerdict is_tree_convex_network(const ConstraintNetwork& net, const ValueTree& tree);

/// As above, but `order` must be a total ordering (a path) and the verdict
/// is reported as row convexity.
ConvexityVerdict is_row_convex_network(const ConstraintNetwork& net, const ValueTree& order);

enum class ConvexitySearch { Tree, TotalOrder };

/// Exhaustive search for a tree (Prüfer enumeration) or total order
/// (permutation enumeration) on the value universe making the network tree
/// or row convex. Returns the first witness in enumeration order. Throws
/// CapabilityError when the universe exceeds kMaxExactUniverse.
ConvexityVerdict find_convexity_tree(const ConstraintNetwork& net, ConvexitySearch mode);

} // namespace consnet

#endif // CONSNET_CONVEXITY_HPP

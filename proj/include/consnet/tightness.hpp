#ifndef CONSNET_TIGHTNESS_HPP
#define CONSNET_TIGHTNESS_HPP

#include "consnet/model.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace consnet {

/// Smallest m for which a constraint is (properly) m-tight w.r.t. one of its
/// variables. Invariant: m_tight <= proper_m_tight <= domain_size.
struct Tightness {
    /// Largest extension set smaller than the whole domain (0 if none).
    std::size_t m_tight = 0;
    /// Largest extension set overall.
    std::size_t proper_m_tight = 0;
    std::size_t domain_size = 0;
};

Tightness constraint_tightness(const ConstraintNetwork& net, std::size_t constraint, VarId x);

/// Properly m-tight w.r.t. every scope variable.
bool is_properly_m_tight(const ConstraintNetwork& net, std::size_t constraint, std::size_t m);

struct TightnessEntry {
    std::size_t constraint = 0;
    VarId variable = 0;
    Tightness tightness;
};

/// One entry per (constraint, scope variable), declaration/scope order.
std::vector<TightnessEntry> tightness_report(const ConstraintNetwork& net);

/// How a relevant constraint qualifies as "properly m-tight" in the weak
/// tightness test.
enum class TightnessMode {
    /// Properly m-tight w.r.t. the variable being extended (default).
    WithRespectToVariable,
    /// Properly m-tight w.r.t. every variable of its scope.
    WholeConstraint,
};

struct WeakTightnessVerdict {
    std::size_t m = 0;
    std::size_t level = 0;
    TightnessMode mode = TightnessMode::WithRespectToVariable;
    bool holds = false;
    /// First (assigned set, new variable) with relevant constraints but
    /// none properly m-tight; sets are visited by size, then lexicographically.
    std::optional<std::pair<VarSet, VarId>> counterexample;
    /// Pairs with no relevant constraint at all. They do not break the
    /// verdict (any value of the new variable extends) but are reported.
    std::vector<std::pair<VarSet, VarId>> vacuous;
};

/// Weak m-tightness at level k: for every assigned set Y with k <= |Y| < n
/// and every x outside Y, some relevant constraint is properly m-tight.
/// Requires 1 <= k < n.
WeakTightnessVerdict is_weakly_m_tight(const ConstraintNetwork& net, std::size_t m, std::size_t level,
                                       TightnessMode mode = TightnessMode::WithRespectToVariable);

/// Adds a universal binary constraint for every variable pair that has none.
ConstraintNetwork with_universal_binaries(const ConstraintNetwork& net);

/// Number of properly m-tight binary constraints on each variable, counting
/// missing pairs as universal constraints.
std::vector<std::size_t> tight_binary_degrees(const ConstraintNetwork& net, std::size_t m);

/// Sufficient condition for weak m-tightness at level k: every variable lies
/// in at least n-k properly m-tight binary constraints (missing pairs count
/// as universal constraints). False means "no conclusion".
bool weak_tightness_sufficient_by_degree(const ConstraintNetwork& net, std::size_t m, std::size_t level);

/// Fewest properly m-tight binary or ternary constraints a network on n
/// variables needs to be weakly m-tight at level 2. Requires n >= 3.
std::size_t minimum_tight_count(std::size_t n);

} // namespace consnet

#endif // CONSNET_TIGHTNESS_HPP

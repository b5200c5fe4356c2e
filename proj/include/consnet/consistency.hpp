#ifndef CONSNET_CONSISTENCY_HPP
#define CONSNET_CONSISTENCY_HPP

#include "consnet/model.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace consnet {

enum class ConsistencyKind { KConsistent, StrongK, RelationalM, StrongRelationalM, Global };

/// Why a consistency check failed: `assignment` is consistent but cannot
/// be extended to `variable`. For relational checks `constraints` holds the
/// chosen constraint subset. `level` is the failing j for strong checks.
struct ConsistencyWitness {
    Instantiation assignment;
    VarId variable = 0;
    std::vector<std::size_t> constraints;
    std::size_t level = 0;
};

struct ConsistencyVerdict {
    ConsistencyKind kind = ConsistencyKind::KConsistent;
    std::size_t parameter = 0;
    bool holds = false;
    std::optional<ConsistencyWitness> witness;
};

/// Definitional k-consistency: every consistent instantiation of k-1
/// variables extends consistently to every further variable. 1 <= k <= n.
ConsistencyVerdict is_k_consistent(const ConstraintNetwork& net, std::size_t k);

/// k-consistency by intersecting the extension sets of the relevant
/// constraints. Agrees with is_k_consistent on every input.
ConsistencyVerdict is_k_consistent_via_lifting(const ConstraintNetwork& net, std::size_t k);

/// j-consistent for every j <= k. Witness carries the first failing j.
ConsistencyVerdict is_strongly_k_consistent(const ConstraintNetwork& net, std::size_t k);

/// Strongly n-consistent.
ConsistencyVerdict is_globally_consistent(const ConstraintNetwork& net);

/// For every m distinct constraints sharing a variable x and every
/// consistent instantiation of the rest of their scopes, some value of x
/// satisfies all m. Requires 1 <= m <= e.
ConsistencyVerdict is_relationally_m_consistent(const ConstraintNetwork& net, std::size_t m);

/// Relationally j-consistent for every j <= m; levels above the number of
/// constraints hold vacuously. Requires m >= 1.
ConsistencyVerdict is_strongly_relationally_m_consistent(const ConstraintNetwork& net, std::size_t m);

struct EnforcementStats {
    std::size_t constraints_added = 0;
    std::size_t tuples_removed = 0;
    std::size_t sweeps = 0;
};

/// Forbids every consistent instantiation of k-1 variables that cannot be
/// extended, on a constraint over exactly those variables, until the
/// network is k-consistent. Solutions are preserved. 2 <= k <= n.
ConstraintNetwork enforce_k_consistency(const ConstraintNetwork& net, std::size_t k, EnforcementStats* stats = nullptr);

/// Repeats enforce_k_consistency for j = 2..k until strongly k-consistent
/// (1-consistency always holds on non-empty domains without unary constraints;
/// a failing unary constraint cannot be repaired and is left in place).
ConstraintNetwork enforce_strong_k_consistency(const ConstraintNetwork& net, std::size_t k,
                                               EnforcementStats* stats = nullptr);

/// Relational m-consistency (or strong: every j <= m) by forbidding each
/// stranded instantiation on the union of the chosen scopes minus the shared
/// variable. Solutions are preserved; tuples are only ever removed.
ConstraintNetwork enforce_relational_m_consistency(const ConstraintNetwork& net, std::size_t m, bool strong,
                                                   EnforcementStats* stats = nullptr);

} // namespace consnet

#endif // CONSNET_CONSISTENCY_HPP

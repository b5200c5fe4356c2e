#include "consnet/consistency.hpp"

#include <algorithm>
#include <set>

namespace consnet {

namespace {

void require_k(const ConstraintNetwork& net, std::size_t k, std::size_t lo) {
    const std::size_t n = net.variable_count();
    if (k < lo || k > n)
        throw InputError("k must satisfy " + std::to_string(lo) + " <= k <= n (n = " + std::to_string(n) + ")");
}

bool extends_by_definition(const ConstraintNetwork& net, Instantiation a, VarId x) {
    const int dx = static_cast<int>(net.variable(x).domain_size());
    for (int u = 0; u < dx; ++u) {
        a.bind(x, u);
        if (is_consistent_instantiation(net, a)) return true;
    }
    return false;
}

/// Intersection of the extension sets of `a` to x under `constraints`
/// is non-empty (vacuously so for no constraints).
bool joint_extension_nonempty(const ConstraintNetwork& net, std::span<const std::size_t> constraints,
                              const Instantiation& a, VarId x) {
    std::vector<char> alive(net.variable(x).domain_size(), 1);
    for (std::size_t c : constraints) {
        auto ext = extension_set(net, c, a, x);
        std::vector<char> keep(alive.size(), 0);
        for (int u : ext) keep[static_cast<std::size_t>(u)] = alive[static_cast<std::size_t>(u)];
        alive.swap(keep);
    }
    return std::find(alive.begin(), alive.end(), 1) != alive.end();
}

/// Visits (a, x) for every consistent instantiation a of k-1 variables that
/// cannot be extended to x. `visit` returns false to stop.
template <typename Visit>
void scan_k(const ConstraintNetwork& net, std::size_t k, bool lifting, Visit&& visit) {
    const std::size_t n = net.variable_count();
    for_each_combination(n, k - 1, [&](std::span<const std::size_t> pick) {
        VarSet assigned = 0;
        for (std::size_t v : pick) assigned |= var_bit(v);
        std::vector<std::vector<std::size_t>> relevant(n);
        if (lifting)
            for (VarId x = 0; x < n; ++x)
                if (!has_var(assigned, x)) relevant[x] = relevant_constraints(net, assigned, x);
        return for_each_instantiation(net, assigned, true, [&](const Instantiation& a) {
            for (VarId x = 0; x < n; ++x) {
                if (has_var(assigned, x)) continue;
                bool ok = lifting ? joint_extension_nonempty(net, relevant[x], a, x) : extends_by_definition(net, a, x);
                if (!ok && !visit(a, x)) return false;
            }
            return true;
        });
    });
}

ConsistencyVerdict check_k(const ConstraintNetwork& net, std::size_t k, bool lifting) {
    require_k(net, k, 1);
    ConsistencyVerdict out;
    out.kind = ConsistencyKind::KConsistent;
    out.parameter = k;
    scan_k(net, k, lifting, [&](const Instantiation& a, VarId x) {
        out.witness = ConsistencyWitness{a, x, {}, k};
        return false;
    });
    out.holds = !out.witness;
    return out;
}

/// Visits (subset, x, a) for every relational violation at exactly m.
template <typename Visit>
void scan_relational(const ConstraintNetwork& net, std::size_t m, Visit&& visit) {
    for_each_combination(net.constraint_count(), m, [&](std::span<const std::size_t> pick) {
        VarSet common = ~VarSet{0};
        VarSet all = 0;
        for (std::size_t c : pick) {
            common &= net.constraint(c).scope_set();
            all |= net.constraint(c).scope_set();
        }
        for (VarId x : var_list(common)) {
            VarSet rest = all & ~var_bit(x);
            bool go = for_each_instantiation(net, rest, true, [&](const Instantiation& a) {
                if (joint_extension_nonempty(net, pick, a, x)) return true;
                return visit(pick, x, a);
            });
            if (!go) return false;
        }
        return true;
    });
}

ConsistencyVerdict check_relational(const ConstraintNetwork& net, std::size_t m) {
    ConsistencyVerdict out;
    out.kind = ConsistencyKind::RelationalM;
    out.parameter = m;
    scan_relational(net, m, [&](std::span<const std::size_t> pick, VarId x, const Instantiation& a) {
        out.witness = ConsistencyWitness{a, x, std::vector<std::size_t>(pick.begin(), pick.end()), m};
        return false;
    });
    out.holds = !out.witness;
    return out;
}

} // namespace

ConsistencyVerdict is_k_consistent(const ConstraintNetwork& net, std::size_t k) { return check_k(net, k, false); }

ConsistencyVerdict is_k_consistent_via_lifting(const ConstraintNetwork& net, std::size_t k) {
    return check_k(net, k, true);
}

ConsistencyVerdict is_strongly_k_consistent(const ConstraintNetwork& net, std::size_t k) {
    require_k(net, k, 1);
    ConsistencyVerdict out;
    out.kind = ConsistencyKind::StrongK;
    out.parameter = k;
    out.holds = true;
    for (std::size_t j = 1; j <= k; ++j) {
        auto level = is_k_consistent(net, j);
        if (!level.holds) {
            out.holds = false;
            out.witness = level.witness;
            break;
        }
    }
    return out;
}

ConsistencyVerdict is_globally_consistent(const ConstraintNetwork& net) {
    auto out = is_strongly_k_consistent(net, net.variable_count());
    out.kind = ConsistencyKind::Global;
    return out;
}

ConsistencyVerdict is_relationally_m_consistent(const ConstraintNetwork& net, std::size_t m) {
    const std::size_t e = net.constraint_count();
    if (m < 1 || m > e)
        throw InputError("m must satisfy 1 <= m <= e (e = " + std::to_string(e) + ")");
    return check_relational(net, m);
}

ConsistencyVerdict is_strongly_relationally_m_consistent(const ConstraintNetwork& net, std::size_t m) {
    if (m < 1) throw InputError("m must be at least 1");
    ConsistencyVerdict out;
    out.kind = ConsistencyKind::StrongRelationalM;
    out.parameter = m;
    out.holds = true;
    const std::size_t top = std::min(m, net.constraint_count());
    for (std::size_t j = 1; j <= top; ++j) {
        auto level = check_relational(net, j);
        if (!level.holds) {
            out.holds = false;
            out.witness = level.witness;
            break;
        }
    }
    return out;
}

ConstraintNetwork enforce_k_consistency(const ConstraintNetwork& net, std::size_t k, EnforcementStats* stats) {
    require_k(net, k, 2);
    ConstraintNetwork out = net;
    EnforcementStats local;
    const std::size_t before = out.constraint_count();
    while (true) {
        // All variables of a violating instantiation form one (k-1)-set, so
        // forbidding one never changes whether another is consistent: a
        // sweep collects and applies every violation at once.
        std::set<Instantiation> stranded;
        scan_k(out, k, true, [&](const Instantiation& a, VarId) {
            stranded.insert(a);
            return true;
        });
        ++local.sweeps;
        if (stranded.empty()) break;
        for (const auto& a : stranded)
            if (out.forbid(a, a.variables())) ++local.tuples_removed;
    }
    local.constraints_added = out.constraint_count() - before;
    if (stats) *stats = local;
    return out;
}

ConstraintNetwork enforce_strong_k_consistency(const ConstraintNetwork& net, std::size_t k, EnforcementStats* stats) {
    ConstraintNetwork out = net;
    EnforcementStats total;
    const std::size_t top = std::min(k, net.variable_count());
    const std::size_t before = out.constraint_count();
    while (true) {
        std::size_t removed = 0;
        for (std::size_t j = 2; j <= top; ++j) {
            EnforcementStats step;
            out = enforce_k_consistency(out, j, &step);
            removed += step.tuples_removed;
            total.sweeps += step.sweeps;
        }
        total.tuples_removed += removed;
        if (removed == 0) break;
    }
    total.constraints_added = out.constraint_count() - before;
    if (stats) *stats = total;
    return out;
}

ConstraintNetwork enforce_relational_m_consistency(const ConstraintNetwork& net, std::size_t m, bool strong,
                                                   EnforcementStats* stats) {
    if (m < 1) throw InputError("m must be at least 1");
    if (!strong && m > net.constraint_count())
        throw InputError("m must satisfy 1 <= m <= e (e = " + std::to_string(net.constraint_count()) + ")");
    ConstraintNetwork out = net;
    EnforcementStats local;
    const std::size_t before = out.constraint_count();
    while (true) {
        std::vector<Instantiation> stranded;
        const std::size_t lo = strong ? 1 : m;
        const std::size_t hi = std::min(m, out.constraint_count());
        for (std::size_t j = lo; j <= hi; ++j)
            scan_relational(out, j, [&](std::span<const std::size_t>, VarId, const Instantiation& a) {
                // An empty remainder means x alone cannot satisfy a unary
                // relation; no constraint can forbid the empty instantiation.
                if (a.variables() != 0) stranded.push_back(a);
                return true;
            });
        ++local.sweeps;

        // Apply in sweep order. Forbidding on a smaller scope can make a
        // later instantiation inconsistent; those are skipped, matching a
        // sweep that restarts after every change.
        std::size_t applied = 0;
        std::set<Instantiation> seen;
        for (const auto& a : stranded) {
            if (!seen.insert(a).second) continue;
            if (!is_consistent_instantiation(out, a)) continue;
            if (out.forbid(a, a.variables())) ++applied;
        }
        local.tuples_removed += applied;
        if (applied == 0) break;
    }
    local.constraints_added = out.constraint_count() - before;
    if (stats) *stats = local;
    return out;
}

} // namespace consnet

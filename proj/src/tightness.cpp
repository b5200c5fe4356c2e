#include "consnet/tightness.hpp"

#include <algorithm>

namespace consnet {

Tightness constraint_tightness(const ConstraintNetwork& net, std::size_t constraint, VarId x) {
    const Constraint& c = net.constraint(constraint);
    int xpos = c.position_of(x);
    if (xpos < 0)
        throw InputError("constraint_tightness: '" + net.variable(x).name() + "' is not in the scope of '" +
                         c.name() + "'");
    const auto pos = static_cast<std::size_t>(xpos);
    const std::size_t dx = c.dims()[pos];

    // Count allowed tuples per instantiation of the other positions: the
    // count is the extension set size. Codes are folded by dropping x's digit.
    const std::size_t others = c.capacity() / dx;
    std::vector<std::size_t> count(others, 0);
    std::vector<int> tuple(c.arity());
    for (std::size_t code = 0; code < c.capacity(); ++code) {
        if (!c.allows_code(code)) continue;
        c.decode(code, tuple);
        std::size_t key = 0;
        for (std::size_t i = 0; i < c.arity(); ++i) {
            if (i == pos) continue;
            key = key * c.dims()[i] + static_cast<std::size_t>(tuple[i]);
        }
        ++count[key];
    }

    Tightness out;
    out.domain_size = dx;
    for (std::size_t n : count) {
        out.proper_m_tight = std::max(out.proper_m_tight, n);
        if (n < dx) out.m_tight = std::max(out.m_tight, n);
    }
    return out;
}

bool is_properly_m_tight(const ConstraintNetwork& net, std::size_t constraint, std::size_t m) {
    for (VarId x : net.constraint(constraint).scope())
        if (constraint_tightness(net, constraint, x).proper_m_tight > m) return false;
    return true;
}

std::vector<TightnessEntry> tightness_report(const ConstraintNetwork& net) {
    std::vector<TightnessEntry> out;
    for (std::size_t c = 0; c < net.constraint_count(); ++c)
        for (VarId x : net.constraint(c).scope()) out.push_back({c, x, constraint_tightness(net, c, x)});
    return out;
}

WeakTightnessVerdict is_weakly_m_tight(const ConstraintNetwork& net, std::size_t m, std::size_t level,
                                       TightnessMode mode) {
    const std::size_t n = net.variable_count();
    if (level < 1 || level >= n)
        throw InputError("weak tightness level must satisfy 1 <= level < n (n = " + std::to_string(n) + ")");

    WeakTightnessVerdict out;
    out.m = m;
    out.level = level;
    out.mode = mode;

    // tight[c] = variables of c w.r.t. which c qualifies.
    std::vector<VarSet> tight(net.constraint_count(), 0);
    for (std::size_t c = 0; c < net.constraint_count(); ++c) {
        const Constraint& con = net.constraint(c);
        if (mode == TightnessMode::WholeConstraint) {
            if (is_properly_m_tight(net, c, m)) tight[c] = con.scope_set();
        } else {
            for (VarId x : con.scope())
                if (constraint_tightness(net, c, x).proper_m_tight <= m) tight[c] |= var_bit(x);
        }
    }

    // Every size from level to n-1 is visited: once pairs without relevant
    // constraints are exempt, a clean level does not imply clean larger sets.
    for (std::size_t size = level; size < n; ++size) {
        bool stop = !for_each_combination(n, size, [&](std::span<const std::size_t> pick) {
            VarSet assigned = 0;
            for (std::size_t v : pick) assigned |= var_bit(v);
            for (VarId x = 0; x < n; ++x) {
                if (has_var(assigned, x)) continue;
                auto relevant = relevant_constraints(net, assigned, x);
                if (relevant.empty()) {
                    out.vacuous.emplace_back(assigned, x);
                    continue;
                }
                bool found = std::any_of(relevant.begin(), relevant.end(),
                                         [&](std::size_t c) { return has_var(tight[c], x); });
                if (!found) {
                    out.counterexample = std::make_pair(assigned, x);
                    return false;
                }
            }
            return true;
        });
        if (stop) break;
    }
    out.holds = !out.counterexample.has_value();
    return out;
}

ConstraintNetwork with_universal_binaries(const ConstraintNetwork& net) {
    ConstraintNetwork out = net;
    const std::size_t n = net.variable_count();
    for (VarId a = 0; a < n; ++a)
        for (VarId b = a + 1; b < n; ++b) out.ensure_constraint(var_bit(a) | var_bit(b));
    return out;
}

std::vector<std::size_t> tight_binary_degrees(const ConstraintNetwork& net, std::size_t m) {
    const ConstraintNetwork full = with_universal_binaries(net);
    std::vector<std::size_t> degree(net.variable_count(), 0);
    for (std::size_t c = 0; c < full.constraint_count(); ++c) {
        const Constraint& con = full.constraint(c);
        if (con.arity() != 2 || !is_properly_m_tight(full, c, m)) continue;
        for (VarId v : con.scope()) ++degree[v];
    }
    return degree;
}

bool weak_tightness_sufficient_by_degree(const ConstraintNetwork& net, std::size_t m, std::size_t level) {
    const std::size_t n = net.variable_count();
    if (level < 1 || level >= n)
        throw InputError("weak tightness level must satisfy 1 <= level < n (n = " + std::to_string(n) + ")");
    auto degree = tight_binary_degrees(net, m);
    return std::all_of(degree.begin(), degree.end(), [&](std::size_t d) { return d + level >= n; });
}

std::size_t minimum_tight_count(std::size_t n) {
    if (n < 3) throw InputError("minimum_tight_count requires n >= 3");
    if (n % 3 == 2) return (n - 2) * (3 * n - 1) / 6;
    return n * (n - 1) / 2 - 2 * (n / 3);
}

} // namespace consnet

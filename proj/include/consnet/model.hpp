#ifndef CONSNET_MODEL_HPP
#define CONSNET_MODEL_HPP

#include "consnet/error.hpp"
#include "consnet/valuetree.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace consnet {

/// Index of a variable in its network (declaration order).
using VarId = std::size_t;
/// Bit set of variables; bit i is VarId i.
using VarSet = std::uint64_t;

inline constexpr std::size_t kMaxVariables = 64;
/// Largest Cartesian product a single relation may span.
inline constexpr std::size_t kMaxRelationSize = std::size_t{1} << 24;

constexpr VarSet var_bit(VarId v) { return VarSet{1} << v; }
constexpr bool has_var(VarSet set, VarId v) { return (set >> v) & 1U; }
inline std::size_t var_count(VarSet set) { return static_cast<std::size_t>(std::popcount(set)); }
/// Members in ascending order.
std::vector<VarId> var_list(VarSet set);

/// Value tokens: non-empty, no whitespace, commas, parentheses or '#'.
bool is_valid_value_token(std::string_view token);
/// Variable and constraint names: [A-Za-z0-9_.-]+
bool is_valid_name(std::string_view name);

class Variable {
public:
    Variable(std::string name, std::vector<std::string> domain);

    const std::string& name() const noexcept { return name_; }
    const std::vector<std::string>& domain() const noexcept { return domain_; }
    std::size_t domain_size() const noexcept { return domain_.size(); }
    const std::string& value(int index) const { return domain_.at(static_cast<std::size_t>(index)); }
    /// -1 when the token is not in the domain.
    int index_of(std::string_view token) const;

private:
    std::string name_;
    std::vector<std::string> domain_;
    std::unordered_map<std::string, int> index_;
};

/// A partial assignment. Values are domain indices; unbound variables hold -1.
class Instantiation {
public:
    Instantiation() = default;
    explicit Instantiation(std::size_t variables) : values_(variables, -1) {}

    std::size_t width() const noexcept { return values_.size(); }
    bool bound(VarId v) const { return values_.at(v) >= 0; }
    int operator[](VarId v) const { return values_.at(v); }
    void bind(VarId v, int value) { values_.at(v) = value; }
    void unbind(VarId v) { values_.at(v) = -1; }

    VarSet variables() const;
    std::size_t size() const;
    Instantiation restricted_to(VarSet set) const;

    bool operator==(const Instantiation&) const = default;
    auto operator<=>(const Instantiation&) const = default;

private:
    std::vector<int> values_;
};

/// An explicit relation over an ordered scope, stored as a dense bitmap over
/// the Cartesian product of the scope domains (first scope variable most
/// significant, so code order is lexicographic tuple order).
class Constraint {
public:
    /// Starts empty, or universal when `universal` is set.
    Constraint(std::string name, std::vector<VarId> scope, std::vector<std::size_t> dims, bool universal = false);

    const std::string& name() const noexcept { return name_; }
    void rename(std::string name) { name_ = std::move(name); }
    std::span<const VarId> scope() const noexcept { return scope_; }
    std::size_t arity() const noexcept { return scope_.size(); }
    VarSet scope_set() const noexcept { return scope_set_; }
    std::span<const std::size_t> dims() const noexcept { return dims_; }
    /// Position of v in the scope, or -1.
    int position_of(VarId v) const;

    /// Number of allowed tuples.
    std::size_t size() const noexcept { return count_; }
    /// Size of the Cartesian product of the scope domains.
    std::size_t capacity() const noexcept { return allowed_.size(); }
    bool empty() const noexcept { return count_ == 0; }
    bool universal() const noexcept { return count_ == allowed_.size(); }

    /// `tuple` is in scope order, entries are domain indices.
    bool allows(std::span<const int> tuple) const { return allowed_[encode(tuple)] != 0; }
    /// Every scope variable must be bound in `a`.
    bool allows(const Instantiation& a) const;
    bool allows_code(std::size_t code) const { return allowed_[code] != 0; }
    /// Returns true if the tuple was not already allowed.
    bool allow(std::span<const int> tuple);
    /// Returns true if the tuple was allowed.
    bool forbid(std::span<const int> tuple);

    std::size_t encode(std::span<const int> tuple) const;
    void decode(std::size_t code, std::span<int> tuple) const;

    /// Allowed tuples in lexicographic order.
    std::vector<std::vector<int>> tuples() const;

    /// Same scope order and every allowed tuple of *this is allowed by other.
    bool subset_of(const Constraint& other) const;
    bool same_relation(const Constraint& other) const;

private:
    std::string name_;
    std::vector<VarId> scope_;
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    VarSet scope_set_ = 0;
    std::vector<std::uint8_t> allowed_;
    std::size_t count_ = 0;
};

/// Calls `visit(tuple, extension)` for every instantiation of the scope
/// minus position `xpos`, in lexicographic order. `tuple` is a full scope
/// tuple whose x slot is meaningless; `extension` lists the domain indices
/// of x allowed together with it, ascending.
template <typename Visit>
void for_each_extension(const Constraint& c, std::size_t xpos, Visit&& visit) {
    const std::size_t arity = c.arity();
    auto dims = c.dims();
    std::vector<int> tuple(arity, 0);
    std::vector<int> ext;
    ext.reserve(dims[xpos]);
    while (true) {
        ext.clear();
        for (std::size_t u = 0; u < dims[xpos]; ++u) {
            tuple[xpos] = static_cast<int>(u);
            if (c.allows(tuple)) ext.push_back(static_cast<int>(u));
        }
        tuple[xpos] = 0;
        visit(std::span<const int>(tuple), std::span<const int>(ext));
        bool carry = true;
        for (std::size_t i = arity; i > 0 && carry; --i) {
            std::size_t p = i - 1;
            if (p == xpos) continue;
            if (static_cast<std::size_t>(++tuple[p]) < dims[p])
                carry = false;
            else
                tuple[p] = 0;
        }
        if (carry) return;
    }
}

/// Variables with finite domains and explicit-relation constraints whose
/// scopes are pairwise distinct as sets. Optionally carries a value tree on
/// the union of all domains and a total variable ordering.
class ConstraintNetwork {
public:
    VarId add_variable(std::string name, std::vector<std::string> domain);

    /// Scope by variable names, tuples by value tokens in scope order.
    std::size_t add_constraint(std::string name, const std::vector<std::string>& scope,
                               const std::vector<std::vector<std::string>>& tuples);
    std::size_t add_constraint(Constraint constraint);

    /// Removes the restriction of `a` to `scope` from the constraint on
    /// exactly `scope`, creating a universal constraint there first if none
    /// exists. Returns true if a tuple was removed.
    bool forbid(const Instantiation& a, VarSet scope);

    /// Adds universal constraints (scope in ascending variable order) for
    /// the given variable set if it has none; returns its index.
    std::size_t ensure_constraint(VarSet scope);

    std::size_t variable_count() const noexcept { return variables_.size(); }
    std::size_t constraint_count() const noexcept { return constraints_.size(); }
    const std::vector<Variable>& variables() const noexcept { return variables_; }
    const Variable& variable(VarId v) const { return variables_.at(v); }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
    const Constraint& constraint(std::size_t i) const { return constraints_.at(i); }

    std::optional<VarId> find_variable(std::string_view name) const;
    /// Throws InputError for unknown names.
    VarId var_id(std::string_view name) const;
    std::optional<std::size_t> find_constraint(std::string_view name) const;
    std::size_t constraint_id(std::string_view name) const;
    std::optional<std::size_t> constraint_on(VarSet scope) const;

    VarSet all_variables() const;
    VarSet var_set(std::initializer_list<std::string_view> names) const;
    std::size_t max_arity() const;
    std::size_t max_domain_size() const;

    /// Union of all domains, in first-appearance order.
    std::vector<std::string> value_universe() const;

    const std::optional<ValueTree>& value_tree() const noexcept { return tree_; }
    void set_value_tree(std::optional<ValueTree> tree);
    const std::optional<std::vector<VarId>>& ordering() const noexcept { return ordering_; }
    void set_ordering(std::optional<std::vector<VarId>> ordering);

    Instantiation empty_instantiation() const { return Instantiation(variables_.size()); }
    /// Builds an instantiation from (variable, value) tokens.
    Instantiation instantiate(std::initializer_list<std::pair<std::string_view, std::string_view>> bindings) const;
    Instantiation instantiate(const std::vector<std::pair<std::string, std::string>>& bindings) const;
    /// "x1=a,x2=b" in declaration order.
    std::string format(const Instantiation& a) const;
    std::string format_vars(VarSet set) const;
    std::vector<std::string> values(VarId v, std::span<const int> indices) const;

private:
    std::string fresh_constraint_name(VarSet scope) const;

    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
    std::unordered_map<std::string, VarId> var_index_;
    std::unordered_map<std::string, std::size_t> con_index_;
    std::unordered_map<VarSet, std::size_t> scope_index_;
    std::optional<ValueTree> tree_;
    std::optional<std::vector<VarId>> ordering_;
};

/// True iff `a` satisfies every constraint whose scope lies inside the
/// bound variables of `a`.
bool is_consistent_instantiation(const ConstraintNetwork& net, const Instantiation& a);

/// Constraints containing x whose other variables all lie in `assigned`,
/// in declaration order. Throws InputError if x is in `assigned`.
std::vector<std::size_t> relevant_constraints(const ConstraintNetwork& net, VarSet assigned, VarId x);

/// Domain indices b of x such that `a` restricted to the scope, extended
/// with x=b, is allowed by the constraint.
std::vector<int> extension_set(const ConstraintNetwork& net, std::size_t constraint, const Instantiation& a, VarId x);

/// Constraints whose scope lies inside `set`, in declaration order.
std::vector<std::size_t> constraints_inside(const ConstraintNetwork& net, VarSet set);

/// Union of the scopes of the given constraints.
VarSet scope_union(const ConstraintNetwork& net, std::span<const std::size_t> constraints);

/// Enumerates instantiations of `set` in lexicographic order (declaration
/// order of variables, domain order of values), optionally only the
/// consistent ones. `visit` returns false to stop. Returns false if stopped.
template <typename Visit>
bool for_each_instantiation(const ConstraintNetwork& net, VarSet set, bool only_consistent, Visit&& visit) {
    const auto vars = var_list(set);
    Instantiation a = net.empty_instantiation();
    // Constraints to check once the depth-th variable is bound.
    std::vector<std::vector<std::size_t>> checks(vars.size());
    if (only_consistent) {
        for (std::size_t c : constraints_inside(net, set)) {
            VarSet scope = net.constraint(c).scope_set();
            VarId last = static_cast<VarId>(63 - std::countl_zero(scope));
            for (std::size_t d = 0; d < vars.size(); ++d)
                if (vars[d] == last) checks[d].push_back(c);
        }
    }
    if (vars.empty()) return visit(static_cast<const Instantiation&>(a));

    std::vector<int> next(vars.size(), 0);
    std::size_t depth = 0;
    while (true) {
        const VarId v = vars[depth];
        const int dsize = static_cast<int>(net.variable(v).domain_size());
        if (next[depth] >= dsize) {
            a.unbind(v);
            next[depth] = 0;
            if (depth == 0) return true;
            --depth;
            continue;
        }
        a.bind(v, next[depth]++);
        bool ok = true;
        for (std::size_t c : checks[depth])
            if (!net.constraint(c).allows(a)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        if (depth + 1 == vars.size()) {
            if (!visit(static_cast<const Instantiation&>(a))) return false;
        } else {
            ++depth;
        }
    }
}

std::vector<Instantiation> enumerate_instantiations(const ConstraintNetwork& net, VarSet set, bool only_consistent);

/// Calls `visit(std::span<const std::size_t>)` for every k-combination of
/// 0..n-1 in lexicographic order; `visit` returns false to stop.
template <typename Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
    if (k > n) return true;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        if (!visit(std::span<const std::size_t>(pick))) return false;
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return true;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

} // namespace consnet

#endif // CONSNET_MODEL_HPP

#include "consnet/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace consnet {

std::vector<VarId> var_list(VarSet set) {
    std::vector<VarId> out;
    while (set != 0) {
        out.push_back(static_cast<VarId>(std::countr_zero(set)));
        set &= set - 1;
    }
    return out;
}

bool is_valid_value_token(std::string_view token) {
    if (token.empty()) return false;
    return std::none_of(token.begin(), token.end(), [](char ch) {
        return std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '(' || ch == ')' || ch == '#';
    });
}

bool is_valid_name(std::string_view name) {
    if (name.empty()) return false;
    return std::all_of(name.begin(), name.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '-';
    });
}

// --- Variable --------------------------------------------------------------

Variable::Variable(std::string name, std::vector<std::string> domain)
    : name_(std::move(name)), domain_(std::move(domain)) {
    if (!is_valid_name(name_)) throw InputError("invalid variable name '" + name_ + "'");
    if (domain_.empty()) throw InputError("variable '" + name_ + "' has an empty domain");
    for (std::size_t i = 0; i < domain_.size(); ++i) {
        if (!is_valid_value_token(domain_[i]))
            throw InputError("invalid value token '" + domain_[i] + "' in domain of '" + name_ + "'");
        if (!index_.emplace(domain_[i], static_cast<int>(i)).second)
            throw InputError("duplicate value '" + domain_[i] + "' in domain of '" + name_ + "'");
    }
}

int Variable::index_of(std::string_view token) const {
    auto it = index_.find(std::string(token));
    return it == index_.end() ? -1 : it->second;
}

// --- Instantiation ---------------------------------------------------------

VarSet Instantiation::variables() const {
    VarSet out = 0;
    for (std::size_t v = 0; v < values_.size(); ++v)
        if (values_[v] >= 0) out |= var_bit(v);
    return out;
}

std::size_t Instantiation::size() const {
    return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(), [](int x) { return x >= 0; }));
}

Instantiation Instantiation::restricted_to(VarSet set) const {
    Instantiation out(values_.size());
    for (std::size_t v = 0; v < values_.size(); ++v)
        if (has_var(set, v)) out.values_[v] = values_[v];
    return out;
}

// --- Constraint ------------------------------------------------------------

Constraint::Constraint(std::string name, std::vector<VarId> scope, std::vector<std::size_t> dims, bool universal)
    : name_(std::move(name)), scope_(std::move(scope)), dims_(std::move(dims)) {
    if (scope_.empty()) throw InputError("constraint '" + name_ + "' has an empty scope");
    if (scope_.size() != dims_.size()) throw InputError("constraint '" + name_ + "': scope/dims size mismatch");
    for (VarId v : scope_) {
        if (v >= kMaxVariables) throw CapabilityError("variable index beyond supported range");
        if (has_var(scope_set_, v)) throw InputError("constraint '" + name_ + "' repeats a scope variable");
        scope_set_ |= var_bit(v);
    }
    std::size_t cap = 1;
    strides_.assign(dims_.size(), 1);
    for (std::size_t i = dims_.size(); i > 0; --i) {
        std::size_t d = dims_[i - 1];
        if (d == 0) throw InputError("constraint '" + name_ + "': zero-size domain");
        strides_[i - 1] = cap;
        if (cap > kMaxRelationSize / d)
            throw CapabilityError("constraint '" + name_ + "' spans more than " +
                                  std::to_string(kMaxRelationSize) + " tuples");
        cap *= d;
    }
    allowed_.assign(cap, universal ? 1 : 0);
    count_ = universal ? cap : 0;
}

int Constraint::position_of(VarId v) const {
    for (std::size_t i = 0; i < scope_.size(); ++i)
        if (scope_[i] == v) return static_cast<int>(i);
    return -1;
}

std::size_t Constraint::encode(std::span<const int> tuple) const {
    std::size_t code = 0;
    for (std::size_t i = 0; i < scope_.size(); ++i) code += static_cast<std::size_t>(tuple[i]) * strides_[i];
    return code;
}

void Constraint::decode(std::size_t code, std::span<int> tuple) const {
    for (std::size_t i = 0; i < scope_.size(); ++i) {
        tuple[i] = static_cast<int>(code / strides_[i]);
        code %= strides_[i];
    }
}

bool Constraint::allows(const Instantiation& a) const {
    std::size_t code = 0;
    for (std::size_t i = 0; i < scope_.size(); ++i) {
        int value = a[scope_[i]];
        if (value < 0) throw InputError("constraint '" + name_ + "' evaluated on a partial scope");
        code += static_cast<std::size_t>(value) * strides_[i];
    }
    return allowed_[code] != 0;
}

bool Constraint::allow(std::span<const int> tuple) {
    auto& cell = allowed_[encode(tuple)];
    if (cell) return false;
    cell = 1;
    ++count_;
    return true;
}

bool Constraint::forbid(std::span<const int> tuple) {
    auto& cell = allowed_[encode(tuple)];
    if (!cell) return false;
    cell = 0;
    --count_;
    return true;
}

std::vector<std::vector<int>> Constraint::tuples() const {
    std::vector<std::vector<int>> out;
    out.reserve(count_);
    std::vector<int> tuple(scope_.size());
    for (std::size_t code = 0; code < allowed_.size(); ++code) {
        if (!allowed_[code]) continue;
        decode(code, tuple);
        out.push_back(tuple);
    }
    return out;
}

bool Constraint::subset_of(const Constraint& other) const {
    if (scope_ != other.scope_) return false;
    for (std::size_t code = 0; code < allowed_.size(); ++code)
        if (allowed_[code] && !other.allowed_[code]) return false;
    return true;
}

bool Constraint::same_relation(const Constraint& other) const {
    return scope_ == other.scope_ && allowed_ == other.allowed_;
}

// --- ConstraintNetwork -----------------------------------------------------

VarId ConstraintNetwork::add_variable(std::string name, std::vector<std::string> domain) {
    if (variables_.size() >= kMaxVariables)
        throw CapabilityError("networks are limited to " + std::to_string(kMaxVariables) + " variables");
    if (var_index_.count(name)) throw InputError("duplicate variable '" + name + "'");
    Variable var(std::move(name), std::move(domain));
    VarId id = variables_.size();
    var_index_.emplace(var.name(), id);
    variables_.push_back(std::move(var));
    return id;
}

std::size_t ConstraintNetwork::add_constraint(std::string name, const std::vector<std::string>& scope,
                                              const std::vector<std::vector<std::string>>& tuples) {
    std::vector<VarId> ids;
    std::vector<std::size_t> dims;
    for (const auto& var : scope) {
        VarId v = var_id(var);
        ids.push_back(v);
        dims.push_back(variables_[v].domain_size());
    }
    Constraint c(std::move(name), std::move(ids), std::move(dims));
    std::vector<int> tuple(scope.size());
    for (const auto& row : tuples) {
        if (row.size() != scope.size())
            throw InputError("tuple arity " + std::to_string(row.size()) + " does not match scope of '" + c.name() + "'");
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Variable& var = variables_[c.scope()[i]];
            int idx = var.index_of(row[i]);
            if (idx < 0) throw InputError("value '" + row[i] + "' is not in the domain of '" + var.name() + "'");
            tuple[i] = idx;
        }
        c.allow(tuple);
    }
    return add_constraint(std::move(c));
}

std::size_t ConstraintNetwork::add_constraint(Constraint constraint) {
    if (!is_valid_name(constraint.name())) throw InputError("invalid constraint name '" + constraint.name() + "'");
    if (con_index_.count(constraint.name())) throw InputError("duplicate constraint '" + constraint.name() + "'");
    for (std::size_t i = 0; i < constraint.arity(); ++i) {
        VarId v = constraint.scope()[i];
        if (v >= variables_.size()) throw InputError("constraint '" + constraint.name() + "' uses an unknown variable");
        if (constraint.dims()[i] != variables_[v].domain_size())
            throw InputError("constraint '" + constraint.name() + "' does not match the domain of '" +
                             variables_[v].name() + "'");
    }
    if (auto other = scope_index_.find(constraint.scope_set()); other != scope_index_.end())
        throw InputError("constraints '" + constraints_[other->second].name() + "' and '" + constraint.name() +
                         "' have the same scope");
    std::size_t id = constraints_.size();
    con_index_.emplace(constraint.name(), id);
    scope_index_.emplace(constraint.scope_set(), id);
    constraints_.push_back(std::move(constraint));
    return id;
}

std::string ConstraintNetwork::fresh_constraint_name(VarSet scope) const {
    std::string base = "c";
    for (VarId v : var_list(scope)) base += "_" + variables_[v].name();
    std::string name = base;
    for (int suffix = 2; con_index_.count(name); ++suffix) name = base + "_" + std::to_string(suffix);
    return name;
}

std::size_t ConstraintNetwork::ensure_constraint(VarSet scope) {
    if (auto existing = constraint_on(scope)) return *existing;
    if (scope == 0) throw InputError("cannot create a constraint with an empty scope");
    std::vector<VarId> ids = var_list(scope);
    std::vector<std::size_t> dims;
    for (VarId v : ids) {
        if (v >= variables_.size()) throw InputError("scope uses an unknown variable");
        dims.push_back(variables_[v].domain_size());
    }
    return add_constraint(Constraint(fresh_constraint_name(scope), std::move(ids), std::move(dims), true));
}

bool ConstraintNetwork::forbid(const Instantiation& a, VarSet scope) {
    std::size_t id = ensure_constraint(scope);
    Constraint& c = constraints_[id];
    std::vector<int> tuple;
    for (VarId v : c.scope()) {
        if (!a.bound(v)) throw InputError("forbid: instantiation does not bind '" + variables_[v].name() + "'");
        tuple.push_back(a[v]);
    }
    return c.forbid(tuple);
}

std::optional<VarId> ConstraintNetwork::find_variable(std::string_view name) const {
    auto it = var_index_.find(std::string(name));
    if (it == var_index_.end()) return std::nullopt;
    return it->second;
}

VarId ConstraintNetwork::var_id(std::string_view name) const {
    if (auto v = find_variable(name)) return *v;
    throw InputError("unknown variable '" + std::string(name) + "'");
}

std::optional<std::size_t> ConstraintNetwork::find_constraint(std::string_view name) const {
    auto it = con_index_.find(std::string(name));
    if (it == con_index_.end()) return std::nullopt;
    return it->second;
}

std::size_t ConstraintNetwork::constraint_id(std::string_view name) const {
    if (auto c = find_constraint(name)) return *c;
    throw InputError("unknown constraint '" + std::string(name) + "'");
}

std::optional<std::size_t> ConstraintNetwork::constraint_on(VarSet scope) const {
    auto it = scope_index_.find(scope);
    if (it == scope_index_.end()) return std::nullopt;
    return it->second;
}

VarSet ConstraintNetwork::all_variables() const {
    return variables_.size() == 64 ? ~VarSet{0} : var_bit(variables_.size()) - 1;
}

VarSet ConstraintNetwork::var_set(std::initializer_list<std::string_view> names) const {
    VarSet out = 0;
    for (auto name : names) out |= var_bit(var_id(name));
    return out;
}

std::size_t ConstraintNetwork::max_arity() const {
    std::size_t r = 0;
    for (const auto& c : constraints_) r = std::max(r, c.arity());
    return r;
}

std::size_t ConstraintNetwork::max_domain_size() const {
    std::size_t d = 0;
    for (const auto& v : variables_) d = std::max(d, v.domain_size());
    return d;
}

std::vector<std::string> ConstraintNetwork::value_universe() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& v : variables_)
        for (const auto& token : v.domain())
            if (seen.insert(token).second) out.push_back(token);
    return out;
}

void ConstraintNetwork::set_value_tree(std::optional<ValueTree> tree) {
    if (tree) {
        auto universe = value_universe();
        std::set<std::string> want(universe.begin(), universe.end());
        std::set<std::string> have(tree->universe().begin(), tree->universe().end());
        if (want != have) throw InputError("value tree must span exactly the union of all domains");
    }
    tree_ = std::move(tree);
}

void ConstraintNetwork::set_ordering(std::optional<std::vector<VarId>> ordering) {
    if (ordering) {
        if (ordering->size() != variables_.size()) throw InputError("ordering must list every variable exactly once");
        VarSet seen = 0;
        for (VarId v : *ordering) {
            if (v >= variables_.size() || has_var(seen, v))
                throw InputError("ordering must list every variable exactly once");
            seen |= var_bit(v);
        }
    }
    ordering_ = std::move(ordering);
}

Instantiation ConstraintNetwork::instantiate(
    std::initializer_list<std::pair<std::string_view, std::string_view>> bindings) const {
    Instantiation a = empty_instantiation();
    for (auto [name, token] : bindings) {
        VarId v = var_id(name);
        int idx = variables_[v].index_of(token);
        if (idx < 0)
            throw InputError("value '" + std::string(token) + "' is not in the domain of '" + std::string(name) + "'");
        a.bind(v, idx);
    }
    return a;
}

Instantiation ConstraintNetwork::instantiate(const std::vector<std::pair<std::string, std::string>>& bindings) const {
    Instantiation a = empty_instantiation();
    for (const auto& [name, token] : bindings) {
        VarId v = var_id(name);
        int idx = variables_[v].index_of(token);
        if (idx < 0) throw InputError("value '" + token + "' is not in the domain of '" + name + "'");
        a.bind(v, idx);
    }
    return a;
}

std::string ConstraintNetwork::format(const Instantiation& a) const {
    std::string out;
    for (VarId v = 0; v < variables_.size() && v < a.width(); ++v) {
        if (!a.bound(v)) continue;
        if (!out.empty()) out += ',';
        out += variables_[v].name() + "=" + variables_[v].value(a[v]);
    }
    return out;
}

std::string ConstraintNetwork::format_vars(VarSet set) const {
    std::string out;
    for (VarId v : var_list(set)) {
        if (!out.empty()) out += ',';
        out += variables_.at(v).name();
    }
    return out;
}

std::vector<std::string> ConstraintNetwork::values(VarId v, std::span<const int> indices) const {
    std::vector<std::string> out;
    for (int i : indices) out.push_back(variables_.at(v).value(i));
    return out;
}

// --- queries ---------------------------------------------------------------

namespace {

void check_instantiation(const ConstraintNetwork& net, const Instantiation& a) {
    if (a.width() != net.variable_count())
        throw InputError("instantiation width does not match the network");
    for (VarId v = 0; v < a.width(); ++v)
        if (a.bound(v) && static_cast<std::size_t>(a[v]) >= net.variable(v).domain_size())
            throw InputError("instantiation value out of the domain of '" + net.variable(v).name() + "'");
}

} // namespace

bool is_consistent_instantiation(const ConstraintNetwork& net, const Instantiation& a) {
    check_instantiation(net, a);
    VarSet bound = a.variables();
    for (const auto& c : net.constraints())
        if ((c.scope_set() & ~bound) == 0 && !c.allows(a)) return false;
    return true;
}

std::vector<std::size_t> relevant_constraints(const ConstraintNetwork& net, VarSet assigned, VarId x) {
    if (x >= net.variable_count()) throw InputError("relevant_constraints: unknown variable");
    if (has_var(assigned, x))
        throw InputError("relevant_constraints: '" + net.variable(x).name() + "' is already in the assigned set");
    std::vector<std::size_t> out;
    VarSet allowed = assigned | var_bit(x);
    for (std::size_t i = 0; i < net.constraint_count(); ++i) {
        VarSet scope = net.constraint(i).scope_set();
        if (has_var(scope, x) && (scope & ~allowed) == 0) out.push_back(i);
    }
    return out;
}

std::vector<int> extension_set(const ConstraintNetwork& net, std::size_t constraint, const Instantiation& a, VarId x) {
    check_instantiation(net, a);
    const Constraint& c = net.constraint(constraint);
    int xpos = c.position_of(x);
    if (xpos < 0) throw InputError("extension_set: '" + net.variable(x).name() + "' is not in the scope of '" + c.name() + "'");
    std::vector<int> tuple(c.arity());
    for (std::size_t i = 0; i < c.arity(); ++i) {
        if (static_cast<int>(i) == xpos) continue;
        VarId v = c.scope()[i];
        if (!a.bound(v))
            throw InputError("extension_set: instantiation does not bind '" + net.variable(v).name() + "'");
        tuple[i] = a[v];
    }
    std::vector<int> out;
    for (std::size_t u = 0; u < c.dims()[static_cast<std::size_t>(xpos)]; ++u) {
        tuple[static_cast<std::size_t>(xpos)] = static_cast<int>(u);
        if (c.allows(tuple)) out.push_back(static_cast<int>(u));
    }
    return out;
}

std::vector<std::size_t> constraints_inside(const ConstraintNetwork& net, VarSet set) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < net.constraint_count(); ++i)
        if ((net.constraint(i).scope_set() & ~set) == 0) out.push_back(i);
    return out;
}

VarSet scope_union(const ConstraintNetwork& net, std::span<const std::size_t> constraints) {
    VarSet out = 0;
    for (std::size_t c : constraints) out |= net.constraint(c).scope_set();
    return out;
}

std::vector<Instantiation> enumerate_instantiations(const ConstraintNetwork& net, VarSet set, bool only_consistent) {
    std::vector<Instantiation> out;
    for_each_instantiation(net, set, only_consistent, [&](const Instantiation& a) {
        out.push_back(a);
        return true;
    });
    return out;
}

} // namespace consnet

#include "consnet/netfile.hpp"

#include <istream>
#include <set>
#include <sstream>

namespace consnet {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string token; in >> token;) out.push_back(token);
    return out;
}

struct PendingConstraint {
    std::size_t line = 0;
    std::string name;
    std::vector<std::string> scope;
    std::vector<std::vector<std::string>> tuples;
};

struct PendingLine {
    std::size_t line = 0;
    std::vector<std::string> tokens;
};

/// Splits "p:c" at the unique colon that leaves two known values.
std::pair<std::string, std::string> split_edge(const std::string& token, const std::set<std::string>& known,
                                               std::size_t line) {
    std::optional<std::pair<std::string, std::string>> found;
    for (std::size_t pos = token.find(':'); pos != std::string::npos; pos = token.find(':', pos + 1)) {
        std::string p = token.substr(0, pos);
        std::string c = token.substr(pos + 1);
        if (!known.count(p) || !known.count(c)) continue;
        if (found) throw ParseError(line, "ambiguous tree edge '" + token + "'");
        found.emplace(std::move(p), std::move(c));
    }
    if (!found) throw ParseError(line, "malformed tree edge '" + token + "' (expected <parent>:<child>)");
    return *found;
}

void apply_tree(ConstraintNetwork& net, const PendingLine& tree) {
    const auto universe = net.value_universe();
    const std::set<std::string> known(universe.begin(), universe.end());
    const auto& tokens = tree.tokens;
    if (tokens.size() < 2 || tokens[1].rfind("root=", 0) != 0)
        throw ParseError(tree.line, "TREE needs root=<value> first");
    std::string root = tokens[1].substr(5);
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 2; i < tokens.size(); ++i) edges.push_back(split_edge(tokens[i], known, tree.line));
    try {
        net.set_value_tree(ValueTree::from_edges(universe, root, edges));
    } catch (const InputError& e) {
        throw ParseError(tree.line, e.what());
    }
}

void apply_order(ConstraintNetwork& net, const PendingLine& order) {
    std::vector<VarId> ids;
    try {
        for (std::size_t i = 1; i < order.tokens.size(); ++i) ids.push_back(net.var_id(order.tokens[i]));
        net.set_ordering(ids);
    } catch (const InputError& e) {
        throw ParseError(order.line, e.what());
    }
}

} // namespace

ConstraintNetwork parse_network(std::istream& in) {
    ConstraintNetwork net;
    std::optional<PendingConstraint> open;
    std::optional<PendingLine> tree;
    std::optional<PendingLine> order;
    std::size_t line_no = 0;

    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto tokens = split_tokens(line);
        if (tokens.empty()) continue;
        const std::string& kw = tokens[0];

        if (open) {
            if (kw == "T") {
                if (tokens.size() - 1 != open->scope.size())
                    throw ParseError(line_no, "tuple has " + std::to_string(tokens.size() - 1) + " values, scope of '" +
                                                  open->name + "' has " + std::to_string(open->scope.size()));
                for (std::size_t i = 1; i < tokens.size(); ++i) {
                    const Variable& var = net.variable(net.var_id(open->scope[i - 1]));
                    if (var.index_of(tokens[i]) < 0)
                        throw ParseError(line_no, "value '" + tokens[i] + "' is not in the domain of '" + var.name() + "'");
                }
                open->tuples.emplace_back(tokens.begin() + 1, tokens.end());
            } else if (kw == "END") {
                if (tokens.size() != 1) throw ParseError(line_no, "END takes no arguments");
                try {
                    net.add_constraint(open->name, open->scope, open->tuples);
                } catch (const std::exception& e) {
                    throw ParseError(open->line, e.what());
                }
                open.reset();
            } else {
                throw ParseError(line_no, "expected T or END inside constraint '" + open->name + "'");
            }
            continue;
        }

        if (kw == "VAR") {
            if (tokens.size() < 3) throw ParseError(line_no, "VAR needs a name and at least one value");
            if (net.find_variable(tokens[1])) throw ParseError(line_no, "duplicate variable '" + tokens[1] + "'");
            try {
                net.add_variable(tokens[1], std::vector<std::string>(tokens.begin() + 2, tokens.end()));
            } catch (const std::exception& e) {
                throw ParseError(line_no, e.what());
            }
        } else if (kw == "CON") {
            if (tokens.size() < 3) throw ParseError(line_no, "CON needs a name and at least one variable");
            if (net.find_constraint(tokens[1])) throw ParseError(line_no, "duplicate constraint '" + tokens[1] + "'");
            if (!is_valid_name(tokens[1])) throw ParseError(line_no, "invalid constraint name '" + tokens[1] + "'");
            PendingConstraint pending{line_no, tokens[1], {tokens.begin() + 2, tokens.end()}, {}};
            VarSet scope = 0;
            for (const auto& name : pending.scope) {
                auto v = net.find_variable(name);
                if (!v) throw ParseError(line_no, "unknown variable '" + name + "'");
                if (has_var(scope, *v)) throw ParseError(line_no, "variable '" + name + "' repeated in scope");
                scope |= var_bit(*v);
            }
            if (auto other = net.constraint_on(scope))
                throw ParseError(line_no, "constraint '" + tokens[1] + "' has the same scope as '" +
                                              net.constraint(*other).name() + "'");
            open = std::move(pending);
        } else if (kw == "TREE") {
            if (tree) throw ParseError(line_no, "duplicate TREE");
            tree = PendingLine{line_no, tokens};
        } else if (kw == "ORDER") {
            if (order) throw ParseError(line_no, "duplicate ORDER");
            order = PendingLine{line_no, tokens};
        } else if (kw == "T" || kw == "END") {
            throw ParseError(line_no, kw + " outside a constraint");
        } else {
            throw ParseError(line_no, "unknown directive '" + kw + "'");
        }
    }

    if (open) throw ParseError(open->line, "constraint '" + open->name + "' is missing END");
    if (net.variable_count() == 0) throw ParseError(std::max<std::size_t>(line_no, 1), "no variables");
    if (tree) apply_tree(net, *tree);
    if (order) apply_order(net, *order);
    return net;
}

ConstraintNetwork parse_network(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_network(in);
}

std::string print_network(const ConstraintNetwork& net) {
    std::ostringstream out;
    for (const auto& var : net.variables()) {
        out << "VAR " << var.name();
        for (const auto& value : var.domain()) out << ' ' << value;
        out << '\n';
    }
    for (const auto& c : net.constraints()) {
        out << "CON " << c.name();
        for (VarId v : c.scope()) out << ' ' << net.variable(v).name();
        out << '\n';
        for (const auto& tuple : c.tuples()) {
            out << 'T';
            for (std::size_t i = 0; i < tuple.size(); ++i) out << ' ' << net.variable(c.scope()[i]).value(tuple[i]);
            out << '\n';
        }
        out << "END\n";
    }
    if (const auto& tree = net.value_tree()) {
        out << "TREE root=" << tree->value(tree->root());
        for (const auto& [p, c] : tree->edges()) out << ' ' << tree->value(p) << ':' << tree->value(c);
        out << '\n';
    }
    if (const auto& order = net.ordering()) {
        out << "ORDER";
        for (VarId v : *order) out << ' ' << net.variable(v).name();
        out << '\n';
    }
    return out.str();
}

bool same_network(const ConstraintNetwork& a, const ConstraintNetwork& b) {
    if (a.variable_count() != b.variable_count() || a.constraint_count() != b.constraint_count()) return false;
    for (VarId v = 0; v < a.variable_count(); ++v)
        if (a.variable(v).name() != b.variable(v).name() || a.variable(v).domain() != b.variable(v).domain())
            return false;
    for (std::size_t c = 0; c < a.constraint_count(); ++c) {
        const Constraint& x = a.constraint(c);
        const Constraint& y = b.constraint(c);
        if (x.name() != y.name() || !x.same_relation(y)) return false;
    }
    if (a.value_tree().has_value() != b.value_tree().has_value()) return false;
    if (a.value_tree() && !(*a.value_tree() == *b.value_tree())) return false;
    return a.ordering() == b.ordering();
}

} // namespace consnet

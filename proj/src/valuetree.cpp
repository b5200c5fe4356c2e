#include "consnet/valuetree.hpp"

#include "consnet/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>

namespace consnet {

namespace {

std::vector<int> to_vertices(const ValueTree& tree, const ValueSet& set) {
    std::vector<int> out;
    out.reserve(set.size());
    for (const auto& token : set) {
        int v = tree.index_of(token);
        if (v < 0) throw InputError("value '" + token + "' is not in the tree's universe");
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ValueSet intersect(const ValueSet& a, const ValueSet& b) {
    ValueSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

void require_nonempty_subtree(const ValueTree& tree, const ValueSet& set, const char* what) {
    if (set.empty()) throw PreconditionError(std::string(what) + ": set is empty");
    if (!is_subtree(tree, set).is_subtree)
        throw PreconditionError(std::string(what) + ": set is not a subtree");
}

} // namespace

ValueTree::ValueTree(std::vector<std::string> universe, std::vector<int> parent)
    : universe_(std::move(universe)), parent_(std::move(parent)) {
    const std::size_t n = universe_.size();
    if (n == 0) throw InputError("value tree: empty universe");
    if (parent_.size() != n) throw InputError("value tree: parent array size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (universe_[i].empty()) throw InputError("value tree: empty value token");
        if (!index_.emplace(universe_[i], static_cast<int>(i)).second)
            throw InputError("value tree: duplicate value '" + universe_[i] + "'");
    }
    for (std::size_t i = 0; i < n; ++i) {
        int p = parent_[i];
        if (p == -1) {
            if (root_ != -1) throw InputError("value tree: more than one root");
            root_ = static_cast<int>(i);
        } else if (p < 0 || static_cast<std::size_t>(p) >= n || static_cast<std::size_t>(p) == i) {
            throw InputError("value tree: bad parent for '" + universe_[i] + "'");
        }
    }
    if (root_ == -1) throw InputError("value tree: no root");

    // Depths by walking up; a walk longer than n means a cycle, which also
    // covers components that never reach the root.
    depth_.assign(n, -1);
    depth_[static_cast<std::size_t>(root_)] = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> chain;
        int v = static_cast<int>(i);
        while (depth_[static_cast<std::size_t>(v)] < 0) {
            chain.push_back(v);
            if (chain.size() > n) throw InputError("value tree: parent relation has a cycle");
            v = parent_[static_cast<std::size_t>(v)];
        }
        int d = depth_[static_cast<std::size_t>(v)];
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth_[static_cast<std::size_t>(*it)] = ++d;
    }
}

ValueTree ValueTree::from_edges(std::vector<std::string> universe, const std::string& root,
                                const std::vector<std::pair<std::string, std::string>>& edges) {
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < universe.size(); ++i) index.emplace(universe[i], static_cast<int>(i));
    auto lookup = [&](const std::string& token) {
        auto it = index.find(token);
        if (it == index.end()) throw InputError("value tree: unknown value '" + token + "'");
        return it->second;
    };
    std::vector<int> parent(universe.size(), -2);
    parent[static_cast<std::size_t>(lookup(root))] = -1;
    for (const auto& [p, c] : edges) {
        int pi = lookup(p);
        int ci = lookup(c);
        if (parent[static_cast<std::size_t>(ci)] == -1)
            throw InputError("value tree: root '" + c + "' cannot be a child");
        if (parent[static_cast<std::size_t>(ci)] != -2)
            throw InputError("value tree: '" + c + "' has two parents");
        parent[static_cast<std::size_t>(ci)] = pi;
    }
    for (std::size_t i = 0; i < parent.size(); ++i)
        if (parent[i] == -2) throw InputError("value tree: '" + universe[i] + "' is not connected");
    return ValueTree(std::move(universe), std::move(parent));
}

ValueTree ValueTree::star(const std::string& center, const std::vector<std::string>& leaves) {
    std::vector<std::string> universe{center};
    std::vector<int> parent{-1};
    for (const auto& leaf : leaves) {
        universe.push_back(leaf);
        parent.push_back(0);
    }
    return ValueTree(std::move(universe), std::move(parent));
}

ValueTree ValueTree::path(const std::vector<std::string>& order) {
    std::vector<int> parent;
    for (std::size_t i = 0; i < order.size(); ++i) parent.push_back(static_cast<int>(i) - 1);
    return ValueTree(order, std::move(parent));
}

int ValueTree::index_of(std::string_view token) const {
    auto it = index_.find(std::string(token));
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> ValueTree::children(int v) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < parent_.size(); ++i)
        if (parent_[i] == v) out.push_back(static_cast<int>(i));
    return out;
}

bool ValueTree::is_total_ordering() const {
    std::vector<int> count(size(), 0);
    for (int p : parent_)
        if (p >= 0 && ++count[static_cast<std::size_t>(p)] > 1) return false;
    return true;
}

ValueTree ValueTree::rerooted(int new_root) const {
    if (new_root < 0 || static_cast<std::size_t>(new_root) >= size())
        throw InputError("value tree: re-root vertex out of range");
    std::vector<int> parent = parent_;
    // Reverse the edges on the path from new_root up to the old root.
    int prev = -1;
    int v = new_root;
    while (v != -1) {
        int up = parent_[static_cast<std::size_t>(v)];
        parent[static_cast<std::size_t>(v)] = prev;
        prev = v;
        v = up;
    }
    return ValueTree(universe_, std::move(parent));
}

std::vector<std::pair<int, int>> ValueTree::edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < parent_.size(); ++i)
        if (parent_[i] >= 0) out.emplace_back(parent_[i], static_cast<int>(i));
    return out;
}

bool ValueTree::operator==(const ValueTree& other) const {
    return universe_ == other.universe_ && parent_ == other.parent_;
}

bool is_subtree(const ValueTree& tree, std::span<const int> vertices) {
    if (vertices.empty()) return true;
    std::vector<char> member(tree.size(), 0);
    for (int v : vertices) member[static_cast<std::size_t>(v)] = 1;
    // A vertex set of a rooted tree is connected iff exactly one member has
    // its parent outside the set.
    int tops = 0;
    for (int v : vertices) {
        int p = tree.parent(v);
        if (p < 0 || !member[static_cast<std::size_t>(p)]) ++tops;
    }
    return tops == 1;
}

SubtreeWitness is_subtree(const ValueTree& tree, const ValueSet& set) {
    SubtreeWitness out;
    out.set = set;
    auto vertices = to_vertices(tree, set);
    out.is_subtree = is_subtree(tree, vertices);
    if (out.is_subtree) return out;

    std::vector<char> member(tree.size(), 0);
    for (int v : vertices) member[static_cast<std::size_t>(v)] = 1;
    int top = vertices.front();
    for (int v : vertices)
        if (tree.depth(v) < tree.depth(top)) top = v;
    for (int v : vertices) {
        int p = tree.parent(v);
        if (v != top && (p < 0 || !member[static_cast<std::size_t>(p)])) {
            out.disconnected_pair = std::make_pair(tree.value(top), tree.value(v));
            break;
        }
    }
    return out;
}

std::string subtree_root(const ValueTree& tree, const ValueSet& set) {
    require_nonempty_subtree(tree, set, "subtree_root");
    auto vertices = to_vertices(tree, set);
    int top = vertices.front();
    for (int v : vertices)
        if (tree.depth(v) < tree.depth(top)) top = v;
    return tree.value(top);
}

ValueSet subtree_intersection(const ValueTree& tree, const ValueSet& a, const ValueSet& b) {
    if (!is_subtree(tree, a).is_subtree || !is_subtree(tree, b).is_subtree)
        throw PreconditionError("subtree_intersection: operand is not a subtree");
    return intersect(a, b);
}

ValueSet tree_convex_family_intersection(const ValueTree& tree, const std::vector<ValueSet>& family) {
    if (family.empty()) throw PreconditionError("tree_convex_family_intersection: empty family");
    std::vector<std::vector<char>> members;
    int deepest = -1;
    for (const auto& set : family) {
        require_nonempty_subtree(tree, set, "tree_convex_family_intersection");
        std::vector<char> member(tree.size(), 0);
        for (int v : to_vertices(tree, set)) member[static_cast<std::size_t>(v)] = 1;
        int root = tree.index_of(subtree_root(tree, set));
        if (deepest < 0 || tree.depth(root) > tree.depth(deepest)) deepest = root;
        members.push_back(std::move(member));
    }

    auto in_all = [&](int v) {
        return std::all_of(members.begin(), members.end(),
                           [v](const auto& m) { return m[static_cast<std::size_t>(v)] != 0; });
    };
    ValueSet out;
    if (!in_all(deepest)) return out;

    // The intersection is a subtree topped by the deepest root; collect it
    // by descending from there.
    std::vector<std::vector<int>> kids(tree.size());
    for (auto [p, c] : tree.edges()) kids[static_cast<std::size_t>(p)].push_back(c);
    std::deque<int> frontier{deepest};
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop_front();
        out.insert(tree.value(v));
        for (int c : kids[static_cast<std::size_t>(v)])
            if (in_all(c)) frontier.push_back(c);
    }
    return out;
}

bool pairwise_nonempty(const std::vector<ValueSet>& family) {
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (intersect(family[i], family[j]).empty()) return false;
    return true;
}

SmallSetIntersection small_set_family_intersection(const std::vector<ValueSet>& family, std::size_t m) {
    if (m == 0) throw PreconditionError("small_set_family_intersection: m must be positive");
    if (family.size() <= m) throw PreconditionError("small_set_family_intersection: need more than m sets");
    SmallSetIntersection out;
    auto small = std::find_if(family.begin(), family.end(), [m](const ValueSet& s) { return s.size() <= m; });
    if (small == family.end())
        throw PreconditionError("small_set_family_intersection: no member has at most m elements");
    out.small_member = static_cast<std::size_t>(small - family.begin());

    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < family.size(); ++i)
        if (i != out.small_member) others.push_back(i);

    // Every m-subset of the other members, intersected with the small one.
    out.hypothesis_holds = true;
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = i;
    while (true) {
        ValueSet acc = *small;
        for (std::size_t i : pick) acc = intersect(acc, family[others[i]]);
        if (acc.empty()) {
            out.hypothesis_holds = false;
            break;
        }
        std::size_t i = m;
        while (i > 0 && pick[i - 1] == others.size() - m + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }

    out.intersection = family.front();
    for (const auto& set : family) out.intersection = intersect(out.intersection, set);
    return out;
}

std::vector<int> prufer_to_parents(std::span<const int> sequence, std::size_t n) {
    if (n < 2 || sequence.size() != n - 2) throw InputError("prufer_to_parents: sequence length must be n-2");
    std::vector<int> degree(n, 1);
    for (int v : sequence) {
        if (v < 0 || static_cast<std::size_t>(v) >= n) throw InputError("prufer_to_parents: label out of range");
        ++degree[static_cast<std::size_t>(v)];
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
    for (std::size_t v = 0; v < n; ++v)
        if (degree[v] == 1) leaves.push(static_cast<int>(v));

    std::vector<std::vector<int>> adj(n);
    auto link = [&](int a, int b) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    };
    for (int v : sequence) {
        int leaf = leaves.top();
        leaves.pop();
        link(leaf, v);
        if (--degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
    }
    int a = leaves.top();
    leaves.pop();
    link(a, leaves.top());

    std::vector<int> parent(n, -2);
    parent[0] = -1;
    std::deque<int> frontier{0};
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop_front();
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (parent[static_cast<std::size_t>(w)] != -2) continue;
            parent[static_cast<std::size_t>(w)] = v;
            frontier.push_back(w);
        }
    }
    return parent;
}

std::optional<ValueTree> find_tree_for_family(const std::vector<ValueSet>& family) {
    ValueSet all;
    for (const auto& set : family) all.insert(set.begin(), set.end());
    if (all.size() > kMaxExactUniverse)
        throw CapabilityError("tree search refused: universe of " + std::to_string(all.size()) +
                              " values exceeds the exact limit of " + std::to_string(kMaxExactUniverse));
    if (all.empty()) return std::nullopt;
    std::vector<std::string> universe(all.begin(), all.end());

    std::vector<std::vector<int>> members;
    for (const auto& set : family) {
        std::vector<int> vs;
        for (const auto& token : set)
            vs.push_back(static_cast<int>(std::lower_bound(universe.begin(), universe.end(), token) - universe.begin()));
        members.push_back(std::move(vs));
    }

    std::optional<ValueTree> found;
    for_each_labeled_tree(universe.size(), [&](const std::vector<int>& parent) {
        ValueTree tree(universe, parent);
        for (const auto& vs : members)
            if (!is_subtree(tree, vs)) return true;
        found.emplace(std::move(tree));
        return false;
    });
    return found;
}

} // namespace consnet

#ifndef CONSNET_VALUETREE_HPP
#define CONSNET_VALUETREE_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace consnet {

using ValueSet = std::set<std::string>;

/// A rooted tree whose vertices are the values of a universe U.
///
/// Vertices are addressed either by token or by their index in `universe()`.
/// Tree convexity does not depend on the root; the root only fixes which
/// vertex of a subtree counts as its top (see `subtree_root`).
class ValueTree {
public:
    /// `parent[i]` is the index of the parent of `universe[i]`, or -1 for the
    /// root. Throws InputError unless this describes exactly one tree.
    ValueTree(std::vector<std::string> universe, std::vector<int> parent);

    /// Builds a tree from (parent, child) pairs.
    static ValueTree from_edges(std::vector<std::string> universe, const std::string& root,
                                const std::vector<std::pair<std::string, std::string>>& edges);
    static ValueTree star(const std::string& center, const std::vector<std::string>& leaves);
    /// A total ordering: order[0] is the root, every other value hangs off its predecessor.
    static ValueTree path(const std::vector<std::string>& order);

    std::size_t size() const noexcept { return universe_.size(); }
    const std::vector<std::string>& universe() const noexcept { return universe_; }
    const std::string& value(int v) const { return universe_.at(static_cast<std::size_t>(v)); }
    /// -1 when the token is not in the universe.
    int index_of(std::string_view token) const;
    bool contains(std::string_view token) const { return index_of(token) >= 0; }

    int root() const noexcept { return root_; }
    int parent(int v) const { return parent_.at(static_cast<std::size_t>(v)); }
    int depth(int v) const { return depth_.at(static_cast<std::size_t>(v)); }
    std::vector<int> children(int v) const;

    /// True when every vertex has at most one child.
    bool is_total_ordering() const;

    ValueTree rerooted(int new_root) const;

    /// (parent, child) pairs ordered by child index.
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const ValueTree& other) const;

private:
    std::vector<std::string> universe_;
    std::vector<int> parent_;
    std::vector<int> depth_;
    std::unordered_map<std::string, int> index_;
    int root_ = -1;
};

struct SubtreeWitness {
    ValueSet set;
    bool is_subtree = false;
    /// Two members of the set whose tree path leaves the set.
    std::optional<std::pair<std::string, std::string>> disconnected_pair;
};

/// Vertex-level test: do `vertices` (indices, any order, no duplicates)
/// induce a connected subgraph? The empty set counts as a (trivial) subtree.
bool is_subtree(const ValueTree& tree, std::span<const int> vertices);

SubtreeWitness is_subtree(const ValueTree& tree, const ValueSet& set);

/// Member of a non-empty subtree nearest to the root.
std::string subtree_root(const ValueTree& tree, const ValueSet& set);

/// Intersection of two subtrees, which is again a subtree.
ValueSet subtree_intersection(const ValueTree& tree, const ValueSet& a, const ValueSet& b);

/// Intersection of a family of non-empty subtrees computed from the deepest
/// subtree root: the result is non-empty iff that root lies in every member.
ValueSet tree_convex_family_intersection(const ValueTree& tree, const std::vector<ValueSet>& family);

bool pairwise_nonempty(const std::vector<ValueSet>& family);

struct SmallSetIntersection {
    ValueSet intersection;
    /// The small member meets every choice of m other members jointly.
    bool hypothesis_holds = false;
    /// Index of the member used as the small set (first one with size <= m).
    std::size_t small_member = 0;
};

/// Requires |family| > m and some member of size <= m.
SmallSetIntersection small_set_family_intersection(const std::vector<ValueSet>& family, std::size_t m);

/// Exact "does some tree exist" searches enumerate labeled trees and refuse
/// universes larger than this.
inline constexpr std::size_t kMaxExactUniverse = 8;

/// Decodes a Prüfer sequence over vertices 0..n-1 (length n-2) into a parent
/// array rooted at vertex 0.
std::vector<int> prufer_to_parents(std::span<const int> sequence, std::size_t n);

/// Calls `visit(parent)` for every labeled tree on n vertices, in
/// lexicographic Prüfer-sequence order, each rooted at vertex 0. Stops early
/// when `visit` returns false. Returns the number of trees visited.
template <typename Visit>
std::size_t for_each_labeled_tree(std::size_t n, Visit&& visit) {
    if (n == 0) return 0;
    if (n == 1) {
        std::vector<int> parent{-1};
        visit(parent);
        return 1;
    }
    std::vector<int> seq(n - 2, 0);
    std::size_t count = 0;
    while (true) {
        ++count;
        if (!visit(prufer_to_parents(seq, n))) return count;
        bool carry = true;
        for (std::size_t i = seq.size(); i > 0 && carry; --i) {
            if (++seq[i - 1] < static_cast<int>(n))
                carry = false;
            else
                seq[i - 1] = 0;
        }
        if (carry) return count;
    }
}

/// First tree (in Prüfer order) under which every family member is tree
/// convex; nullopt if none exists. Throws CapabilityError above kMaxExactUniverse.
std::optional<ValueTree> find_tree_for_family(const std::vector<ValueSet>& family);

} // namespace consnet

#endif // CONSNET_VALUETREE_HPP

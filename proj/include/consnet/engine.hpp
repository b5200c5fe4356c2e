#ifndef CONSNET_ENGINE_HPP
#define CONSNET_ENGINE_HPP

#include "consnet/convexity.hpp"
#include "consnet/model.hpp"
#include "consnet/tightness.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace consnet {

inline constexpr const char* kGloballyConsistent = "globally consistent";
inline constexpr const char* kNotEstablished = "not established";
inline constexpr const char* kBacktrackFree = "backtrack-free";

/// One theorem applied to the network. `conclusion` differs from
/// kNotEstablished only when every precondition was checked and held.
struct GuaranteeLine {
    std::string theorem;
    std::optional<std::size_t> m;
    bool preconditions_hold = false;
    std::string conclusion = kNotEstablished;
    /// Precondition results in evaluation order, "name=value" without spaces.
    std::vector<std::string> evidence;
    /// Set when a sub-check refused the input (e.g. a tree search beyond
    /// the exact limit); the line then concludes nothing.
    std::optional<std::string> error;
};

struct AnalysisOptions {
    /// Empty means the distinct per-constraint proper tightness values,
    /// capped at the largest domain size.
    std::vector<std::size_t> m_values;
    /// Overrides the network's own tree.
    std::optional<ValueTree> tree;
    /// Overrides the network's own ordering (declaration order otherwise).
    std::optional<std::vector<VarId>> ordering;
};

struct AnalysisReport {
    std::size_t r = 0;
    std::vector<TightnessEntry> tightness;
    std::vector<std::size_t> m_values;
    std::optional<ConvexityVerdict> given_tree;
    std::optional<ConvexityVerdict> searched_tree;
    std::optional<std::string> search_error;
    std::vector<WeakTightnessVerdict> weak_tightness;
    std::vector<GuaranteeLine> lines;
    /// Brute-force verdict, always computed.
    bool globally_consistent = false;
    bool satisfiable = false;
    /// Every fired line agrees with the brute-force checks.
    bool oracle_agrees = true;
};

/// Checks the preconditions of every global consistency and backtrack-free
/// guarantee and cross-validates each one that fires against brute force.
/// Lines appear in fixed order: tree-convexity, tree-convexity-relational,
/// then per m weak-tightness and weak-tightness-relational, then
/// dual-adaptive.
AnalysisReport analyze(const ConstraintNetwork& net, const AnalysisOptions& options = {});

} // namespace consnet

#endif // CONSNET_ENGINE_HPP

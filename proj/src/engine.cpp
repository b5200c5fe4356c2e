#include "consnet/engine.hpp"

#include "consnet/consistency.hpp"
#include "consnet/ordered.hpp"

#include <algorithm>
#include <set>

namespace consnet {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<std::size_t> default_m_values(const ConstraintNetwork& net) {
    std::set<std::size_t> ms;
    const std::size_t cap = net.max_domain_size();
    for (std::size_t c = 0; c < net.constraint_count(); ++c) {
        std::size_t m = 0;
        for (VarId x : net.constraint(c).scope()) m = std::max(m, constraint_tightness(net, c, x).proper_m_tight);
        ms.insert(std::min(std::max<std::size_t>(m, 1), cap));
    }
    return {ms.begin(), ms.end()};
}

/// Strong k-consistency with k capped at n.
bool strongly_consistent_at(const ConstraintNetwork& net, std::size_t k) {
    return is_strongly_k_consistent(net, std::min(k, net.variable_count())).holds;
}

GuaranteeLine make_line(std::string theorem, std::optional<std::size_t> m = std::nullopt) {
    GuaranteeLine line;
    line.theorem = std::move(theorem);
    line.m = m;
    return line;
}

void conclude(GuaranteeLine& line, const char* conclusion) {
    line.preconditions_hold = !line.error;
    if (line.preconditions_hold) line.conclusion = conclusion;
}

} // namespace

AnalysisReport analyze(const ConstraintNetwork& net, const AnalysisOptions& options) {
    if (net.variable_count() == 0) throw InputError("network has no variables");
    AnalysisReport report;
    const std::size_t n = net.variable_count();
    report.r = net.max_arity();
    const std::size_t r = std::max<std::size_t>(report.r, 1);
    report.tightness = tightness_report(net);
    report.m_values = options.m_values.empty() ? default_m_values(net) : options.m_values;
    std::sort(report.m_values.begin(), report.m_values.end());
    report.m_values.erase(std::unique(report.m_values.begin(), report.m_values.end()), report.m_values.end());

    report.globally_consistent = is_globally_consistent(net).holds;
    report.satisfiable = backtracking_solve(net).solution.has_value();

    // Convexity: the given tree first, then an exhaustive search when it is
    // absent or fails.
    const std::optional<ValueTree>& given = options.tree ? options.tree : net.value_tree();
    if (given) report.given_tree = is_tree_convex_network(net, *given);
    if (!report.given_tree || !report.given_tree->holds) {
        try {
            report.searched_tree = find_convexity_tree(net, ConvexitySearch::Tree);
        } catch (const CapabilityError& e) {
            report.search_error = e.what();
        }
    }
    const bool tree_convex = (report.given_tree && report.given_tree->holds) ||
                             (report.searched_tree && report.searched_tree->holds);
    const bool tree_known = tree_convex || !report.search_error;
    const std::string tree_evidence = report.given_tree && report.given_tree->holds ? "given"
                                      : report.searched_tree && report.searched_tree->holds ? "searched"
                                                                                              : "none";

    auto tree_line = [&](const std::string& theorem) {
        GuaranteeLine line = make_line(theorem);
        line.evidence.push_back("tree-convex=" + (tree_known ? yes_no(tree_convex) : std::string("unknown")));
        line.evidence.push_back("tree-source=" + tree_evidence);
        if (!tree_known) line.error = *report.search_error;
        return line;
    };

    {
        GuaranteeLine line = tree_line("tree-convexity");
        const std::size_t level = 2 * (r - 1) + 1;
        if (tree_convex) {
            bool strong = strongly_consistent_at(net, level);
            line.evidence.push_back("strongly-" + std::to_string(std::min(level, n)) + "-consistent=" + yes_no(strong));
            if (strong) conclude(line, kGloballyConsistent);
        }
        report.lines.push_back(std::move(line));
    }
    {
        GuaranteeLine line = tree_line("tree-convexity-relational");
        if (tree_convex) {
            bool strong = is_strongly_relationally_m_consistent(net, 2).holds;
            line.evidence.push_back("strongly-relationally-2-consistent=" + yes_no(strong));
            if (strong) conclude(line, kGloballyConsistent);
        }
        report.lines.push_back(std::move(line));
    }

    for (std::size_t m : report.m_values) {
        const std::size_t level = (m + 1) * (r - 1) + 1;
        bool weak = true;
        std::string weak_evidence;
        const std::string weak_key = "weakly-" + std::to_string(m) + "-tight-at-" + std::to_string(level) + "=";
        if (level < n) {
            auto verdict = is_weakly_m_tight(net, m, level);
            weak = verdict.holds;
            weak_evidence = weak_key + yes_no(weak);
            report.weak_tightness.push_back(std::move(verdict));
        } else {
            weak_evidence = weak_key + "vacuous";
        }

        GuaranteeLine variable_line = make_line("weak-tightness", m);
        variable_line.evidence.push_back(weak_evidence);
        if (weak) {
            bool strong = strongly_consistent_at(net, level);
            variable_line.evidence.push_back("strongly-" + std::to_string(std::min(level, n)) + "-consistent=" + yes_no(strong));
            if (strong) conclude(variable_line, kGloballyConsistent);
        }
        report.lines.push_back(std::move(variable_line));

        // The relational argument only reaches levels above `level`; the
        // levels up to it are checked directly.
        GuaranteeLine relational_line = make_line("weak-tightness-relational", m);
        relational_line.evidence.push_back(weak_evidence);
        if (weak) {
            bool relational = is_strongly_relationally_m_consistent(net, m + 1).holds;
            relational_line.evidence.push_back("strongly-relationally-" + std::to_string(m + 1) + "-consistent=" +
                                               yes_no(relational));
            if (relational) {
                bool strong = strongly_consistent_at(net, level);
                relational_line.evidence.push_back("strongly-" + std::to_string(std::min(level, n)) +
                                                   "-consistent=" + yes_no(strong));
                if (strong) conclude(relational_line, kGloballyConsistent);
            }
        }
        report.lines.push_back(std::move(relational_line));
    }

    {
        const OrderedView view = options.ordering ? OrderedView(net, *options.ordering) : OrderedView(net);
        GuaranteeLine line = make_line("dual-adaptive");
        bool dual = is_dually_adaptively_consistent(view).holds;
        line.evidence.push_back("dually-adaptive=" + yes_no(dual));
        if (dual) conclude(line, kBacktrackFree);
        report.lines.push_back(std::move(line));
        if (dual && !backtrack_free_solve(view).solution) report.oracle_agrees = false;
    }

    for (const auto& line : report.lines)
        if (line.conclusion == kGloballyConsistent && !report.globally_consistent) report.oracle_agrees = false;
    return report;
}

} // namespace consnet

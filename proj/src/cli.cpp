#include "consnet/cli.hpp"

#include "consnet/consistency.hpp"
#include "consnet/convexity.hpp"
#include "consnet/engine.hpp"
#include "consnet/netfile.hpp"
#include "consnet/ordered.hpp"
#include "consnet/tightness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace consnet {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
    return out;
}

std::string paren_assignment(const ConstraintNetwork& net, const Instantiation& a) {
    return "(" + net.format(a) + ")";
}

std::string paren_vars(const ConstraintNetwork& net, VarSet set) {
    std::vector<std::string> names;
    for (VarId v : var_list(set)) names.push_back(net.variable(v).name());
    return "(" + join(names) + ")";
}

std::string paren_constraints(const ConstraintNetwork& net, const std::vector<std::size_t>& ids) {
    std::vector<std::string> names;
    for (std::size_t c : ids) names.push_back(net.constraint(c).name());
    return "(" + join(names) + ")";
}

std::string paren_tree(const ValueTree& tree) {
    std::vector<std::string> items{"root=" + tree.value(tree.root())};
    for (const auto& [p, c] : tree.edges()) items.push_back(tree.value(p) + ":" + tree.value(c));
    return "(" + join(items) + ")";
}

std::string hyphenate(std::string text) {
    for (char& ch : text)
        if (ch == ' ') ch = '-';
    return text;
}

/// Options shared by all subcommands.
struct Args {
    std::string file;
    std::string output;
    std::size_t k = 0;
    std::size_t m = 0;
    std::size_t level = 0;
    std::size_t n = 0;
    bool strong = false;
    bool search = false;
    bool strict = false;
    bool backtrack_free = false;
    bool count = false;
    std::vector<std::size_t> ms;
};

class Runner {
public:
    Runner(std::ostream& out, std::istream& in) : out_(out), in_(in) {}

    ConstraintNetwork load(const std::string& file) {
        if (file == "-") return parse_network(in_);
        std::ifstream stream(file);
        if (!stream) throw IoError("cannot open '" + file + "'");
        return parse_network(stream);
    }

    void save(const ConstraintNetwork& net, const std::string& file) {
        const std::string text = print_network(net);
        if (file == "-") {
            out_ << text;
            return;
        }
        std::ofstream stream(file);
        if (!stream || !(stream << text)) throw IoError("cannot write '" + file + "'");
    }

    int consistency(const ConstraintNetwork& net, const ConsistencyVerdict& v, const std::string& check,
                    const std::string& params) {
        out_ << "RESULT check=" << check << ' ' << params << " holds=" << yes_no(v.holds) << '\n';
        if (v.holds) return kExitHolds;
        const auto& w = *v.witness;
        out_ << "WITNESS check=" << check << " level=" << w.level;
        if (!w.constraints.empty()) out_ << " constraints=" << paren_constraints(net, w.constraints);
        out_ << " assignment=" << paren_assignment(net, w.assignment)
             << " variable=" << net.variable(w.variable).name() << '\n';
        return kExitFails;
    }

    int convexity(const ConstraintNetwork& net, const ConvexityVerdict& v, const std::string& check,
                  const std::string& source) {
        out_ << "RESULT check=" << check << " tree=" << source << " holds=" << yes_no(v.holds);
        if (v.holds && v.tree) out_ << " witness_tree=" << paren_tree(*v.tree);
        out_ << '\n';
        if (v.holds) return kExitHolds;
        if (v.counterexample) {
            const auto& cx = *v.counterexample;
            out_ << "WITNESS check=" << check << " constraint=" << net.constraint(cx.constraint).name()
                 << " variable=" << net.variable(cx.variable).name()
                 << " assignment=" << paren_assignment(net, cx.assignment)
                 << " extension=(" << join(net.values(cx.variable, cx.extension)) << ")\n";
        } else {
            out_ << "WITNESS check=" << check << " search=exhausted\n";
        }
        return kExitFails;
    }

    int stats_line(const std::string& kind, const EnforcementStats& s, const ConstraintNetwork& result,
                   const std::string& params) {
        out_ << "RESULT enforce=" << kind << (params.empty() ? "" : " " + params)
             << " constraints_added=" << s.constraints_added << " tuples_removed=" << s.tuples_removed
             << " sweeps=" << s.sweeps << " constraints=" << result.constraint_count() << '\n';
        return kExitHolds;
    }

    int ordered_enforcement(const std::string& kind, const ConstraintNetwork& before, const ConstraintNetwork& after,
                            bool verified) {
        std::size_t removed = 0;
        for (std::size_t c = 0; c < before.constraint_count(); ++c)
            removed += before.constraint(c).size() - after.constraint(c).size();
        for (std::size_t c = before.constraint_count(); c < after.constraint_count(); ++c)
            removed += after.constraint(c).capacity() - after.constraint(c).size();
        out_ << "RESULT enforce=" << kind << " constraints_added=" << after.constraint_count() - before.constraint_count()
             << " tuples_removed=" << removed << " constraints=" << after.constraint_count()
             << " verified=" << yes_no(verified) << '\n';
        return kExitHolds;
    }

    int solve(const ConstraintNetwork& net, const Args& a) {
        const OrderedView view(net);
        SearchTrace trace = a.backtrack_free ? backtrack_free_solve(view) : backtracking_solve(net);
        const char* mode = a.backtrack_free ? "backtrack-free" : "backtracking";
        out_ << "RESULT solve=" << mode << " satisfiable=" << yes_no(trace.solution.has_value())
             << " backtracks=" << trace.backtracks << " nodes=" << trace.nodes_visited << '\n';
        if (trace.solution) out_ << "SOLUTION " << paren_assignment(net, *trace.solution) << '\n';
        if (a.count) out_ << "COUNT solutions=" << count_solutions(net) << '\n';
        if (trace.solution) return kExitHolds;
        out_ << "WITNESS solve=" << mode;
        if (trace.stuck_at)
            out_ << " stuck_at=" << net.variable(*trace.stuck_at).name()
                 << " prefix=" << paren_assignment(net, trace.prefix);
        else
            out_ << " unsatisfiable=yes";
        out_ << '\n';
        return kExitFails;
    }

    int analyze_report(const ConstraintNetwork& net, const Args& a) {
        AnalysisOptions options;
        options.m_values = a.ms;
        const AnalysisReport report = analyze(net, options);
        std::vector<std::string> ms;
        for (std::size_t m : report.m_values) ms.push_back(std::to_string(m));
        out_ << "ANALYSIS n=" << net.variable_count() << " e=" << net.constraint_count() << " r=" << report.r
             << " m_values=(" << join(ms) << ")\n";
        for (const auto& line : report.lines) {
            out_ << "GUARANTEE theorem=" << line.theorem << " m=" << (line.m ? std::to_string(*line.m) : "-")
                 << " preconditions=" << yes_no(line.preconditions_hold)
                 << " conclusion=" << hyphenate(line.conclusion) << " evidence=(" << join(line.evidence) << ")\n";
            if (line.error) out_ << "NOTE theorem=" << line.theorem << " error=" << hyphenate(*line.error) << '\n';
        }
        out_ << "ORACLE globally_consistent=" << yes_no(report.globally_consistent)
             << " satisfiable=" << yes_no(report.satisfiable) << " agrees=" << yes_no(report.oracle_agrees) << '\n';
        if (report.oracle_agrees) return kExitHolds;
        out_ << "WITNESS analyze=oracle-disagreement\n";
        return kExitFails;
    }

private:
    std::ostream& out_;
    std::istream& in_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app{"Consistency analysis of finite constraint networks", "consnet"};
    app.require_subcommand(1);
    Args a;

    auto with_file = [&](CLI::App* sub) {
        sub->add_option("FILE", a.file, "network file, or - for standard input")->required();
        return sub;
    };
    auto with_output = [&](CLI::App* sub) {
        sub->add_option("-o,--output", a.output, "where to write the enforced network (- for stdout)")->required();
        return sub;
    };

    auto* print = with_file(app.add_subcommand("print", "re-emit the network in canonical form"));

    auto* check = app.add_subcommand("check", "check a consistency property");
    check->require_subcommand(1);
    auto* check_k = check->add_subcommand("k", "k-consistency");
    check_k->add_option("K", a.k, "k")->required();
    check_k->add_flag("--strong", a.strong, "strong k-consistency");
    with_file(check_k);
    auto* check_rel = check->add_subcommand("relational", "relational m-consistency");
    check_rel->add_option("M", a.m, "m")->required();
    check_rel->add_flag("--strong", a.strong, "strong relational m-consistency");
    with_file(check_rel);
    auto* check_global = with_file(check->add_subcommand("global", "global consistency"));

    auto* tightness = with_file(app.add_subcommand("tightness", "tightness of every constraint"));

    auto* weak = app.add_subcommand("weak-tightness", "weak m-tightness at a level");
    weak->add_option("--m", a.m, "m")->required();
    weak->add_option("--level", a.level, "level k")->required();
    weak->add_flag("--strict", a.strict, "require proper m-tightness w.r.t. every scope variable");
    with_file(weak);

    auto* tree = app.add_subcommand("tree-convex", "tree convexity under the file's TREE");
    tree->add_flag("--search", a.search, "search all trees on the value universe");
    with_file(tree);
    auto* row = app.add_subcommand("row-convex", "row convexity under the file's TREE (a path)");
    row->add_flag("--search", a.search, "search all total orders of the value universe");
    with_file(row);

    auto* enforce = app.add_subcommand("enforce", "enforce a consistency property");
    enforce->require_subcommand(1);
    auto* enforce_k = enforce->add_subcommand("k", "k-consistency");
    enforce_k->add_option("K", a.k, "k")->required();
    with_output(enforce_k);
    with_file(enforce_k);
    auto* enforce_rel = enforce->add_subcommand("relational", "relational m-consistency");
    enforce_rel->add_option("M", a.m, "m")->required();
    enforce_rel->add_flag("--strong", a.strong, "strong relational m-consistency");
    with_output(enforce_rel);
    with_file(enforce_rel);
    auto* enforce_adaptive = with_file(with_output(enforce->add_subcommand("adaptive", "adaptive consistency")));
    auto* enforce_dual = with_file(with_output(enforce->add_subcommand("dual", "dually adaptive consistency")));

    auto* solve = app.add_subcommand("solve", "find a solution");
    solve->add_flag("--backtrack-free", a.backtrack_free, "greedy search without retraction");
    solve->add_flag("--count", a.count, "also count all solutions");
    with_file(solve);

    auto* analyze_cmd = app.add_subcommand("analyze", "apply every global consistency guarantee");
    analyze_cmd->add_option("--m", a.ms, "tightness bound to try (repeatable)")->allow_extra_args(false);
    with_file(analyze_cmd);

    auto* min_tight = app.add_subcommand("min-tight-count", "fewest properly m-tight constraints for n variables");
    min_tight->add_option("--n", a.n, "number of variables")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitHolds;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitHolds;
    } catch (const CLI::ParseError& e) {
        err << "ERROR usage: " << e.what() << '\n';
        return kExitError;
    }

    Runner runner(out, in);
    try {
        if (min_tight->parsed()) {
            out << minimum_tight_count(a.n) << '\n';
            return kExitHolds;
        }
        const ConstraintNetwork net = runner.load(a.file);

        if (print->parsed()) {
            out << print_network(net);
            return kExitHolds;
        }
        if (check_k->parsed()) {
            const std::string params = "k=" + std::to_string(a.k) + " strong=" + yes_no(a.strong);
            auto v = a.strong ? is_strongly_k_consistent(net, a.k) : is_k_consistent(net, a.k);
            return runner.consistency(net, v, "k", params);
        }
        if (check_rel->parsed()) {
            const std::string params = "m=" + std::to_string(a.m) + " strong=" + yes_no(a.strong);
            auto v = a.strong ? is_strongly_relationally_m_consistent(net, a.m) : is_relationally_m_consistent(net, a.m);
            return runner.consistency(net, v, "relational", params);
        }
        if (check_global->parsed())
            return runner.consistency(net, is_globally_consistent(net), "global", "n=" + std::to_string(net.variable_count()));

        if (tightness->parsed()) {
            out << "RESULT tightness r=" << net.max_arity() << " entries=" << net.constraint_count() << '\n';
            for (const auto& e : tightness_report(net))
                out << "TIGHTNESS constraint=" << net.constraint(e.constraint).name()
                    << " variable=" << net.variable(e.variable).name() << " m_tight=" << e.tightness.m_tight
                    << " proper_m_tight=" << e.tightness.proper_m_tight << " domain_size=" << e.tightness.domain_size
                    << '\n';
            return kExitHolds;
        }
        if (weak->parsed()) {
            auto mode = a.strict ? TightnessMode::WholeConstraint : TightnessMode::WithRespectToVariable;
            auto v = is_weakly_m_tight(net, a.m, a.level, mode);
            out << "RESULT check=weak-tightness m=" << a.m << " level=" << a.level << " strict=" << yes_no(a.strict)
                << " holds=" << yes_no(v.holds) << " vacuous=" << v.vacuous.size() << '\n';
            if (v.holds) return kExitHolds;
            out << "WITNESS check=weak-tightness assigned=" << paren_vars(net, v.counterexample->first)
                << " variable=" << net.variable(v.counterexample->second).name() << '\n';
            return kExitFails;
        }
        if (tree->parsed() || row->parsed()) {
            const bool is_row = row->parsed();
            const std::string check = is_row ? "row-convex" : "tree-convex";
            if (a.search) {
                auto mode = is_row ? ConvexitySearch::TotalOrder : ConvexitySearch::Tree;
                return runner.convexity(net, find_convexity_tree(net, mode), check, "searched");
            }
            if (!net.value_tree()) throw InputError("the network has no TREE line (use --search)");
            auto v = is_row ? is_row_convex_network(net, *net.value_tree()) : is_tree_convex_network(net, *net.value_tree());
            return runner.convexity(net, v, check, "given");
        }

        if (enforce_k->parsed()) {
            EnforcementStats stats;
            auto result = enforce_k_consistency(net, a.k, &stats);
            runner.save(result, a.output);
            return runner.stats_line("k", stats, result, "k=" + std::to_string(a.k));
        }
        if (enforce_rel->parsed()) {
            EnforcementStats stats;
            auto result = enforce_relational_m_consistency(net, a.m, a.strong, &stats);
            runner.save(result, a.output);
            return runner.stats_line("relational", stats, result,
                                     "m=" + std::to_string(a.m) + " strong=" + yes_no(a.strong));
        }
        if (enforce_adaptive->parsed() || enforce_dual->parsed()) {
            const OrderedView view(net);
            const bool dual = enforce_dual->parsed();
            auto result = dual ? enforce_dually_adaptive(view) : enforce_adaptive_consistency(view);
            const OrderedView after(result, view.ordering());
            bool verified = dual ? is_dually_adaptively_consistent(after).holds : is_adaptively_consistent(after).holds;
            runner.save(result, a.output);
            return runner.ordered_enforcement(dual ? "dual" : "adaptive", net, result, verified);
        }
        if (solve->parsed()) return runner.solve(net, a);
        if (analyze_cmd->parsed()) return runner.analyze_report(net, a);
    } catch (const ParseError& e) {
        err << "ERROR line " << e.line() << ": " << e.what() << '\n';
        return kExitError;
    } catch (const CapabilityError& e) {
        err << "ERROR capability: " << e.what() << '\n';
        return kExitError;
    } catch (const IoError& e) {
        err << "ERROR io: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "ERROR input: " << e.what() << '\n';
        return kExitError;
    }
    err << "ERROR usage: no command\n";
    return kExitError;
}

} // namespace consnet

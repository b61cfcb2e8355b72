#include <CLI11.hpp>

#include "domains/features.h"
#include "domains/generators.h"
#include "domains/problem_file.h"
#include "graph/policy_graph.h"
#include "policy/policy.h"
#include "report/report.h"
#include "rules/bundled.h"
#include "rules/rules.h"
#include "search/chains.h"
#include "search/iw.h"
#include "serialize/serialize.h"

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

using namespace std;
using namespace wbp;
using nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_false = 1;
constexpr int exit_usage = 2;

struct InstanceArgs {
    string domain;
    string params;
    string file;
    int seed = -1;
};

struct OutputArgs {
    string report = "text";
};

map<string, int> parse_params(const string &text) {
    map<string, int> params;
    stringstream in(text);
    string item;
    while (getline(in, item, ',')) {
        if (item.empty())
            continue;
        size_t eq = item.find('=');
        if (eq == string::npos)
            throw InvalidParams("expected key=value in --params, got '" + item + "'");
        params[item.substr(0, eq)] = stoi(item.substr(eq + 1));
    }
    return params;
}

string read_file(const string &path) {
    ifstream in(path);
    if (!in)
        throw PlanningError("cannot open " + path);
    stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

GroundProblem load_problem(const InstanceArgs &args) {
    if (!args.file.empty())
        return parse_problem(read_file(args.file));
    if (args.domain.empty())
        throw PlanningError("either --domain or --file is required");
    DomainSpec spec{args.domain, parse_params(args.params)};
    if (args.seed >= 0)
        spec.params["seed"] = args.seed;
    return generate(spec);
}

RuleSet load_rules(const string &arg) {
    if (arg.rfind("bundled:", 0) == 0)
        return bundled_rules(arg.substr(8));
    return parse_rules(read_file(arg));
}

// Goal valuations for the policy graph: a declared condition when given,
// otherwise the valuations of the reachable goal states.
vector<BoolValuation> goal_valuations(const PolicyContext &ctx, const string &goal_cond,
                                      long state_cap) {
    if (!goal_cond.empty())
        return bool_valuations_matching(ctx.rules.features, goal_cond);
    SeparationResult sep = check_goal_separation({ctx.problem}, {ctx.features}, state_cap);
    return vector<BoolValuation>(sep.kappa.begin(), sep.kappa.end());
}

int emit(RunReport &report, const OutputArgs &out,
         chrono::steady_clock::time_point start, int code) {
    report.set_wall_ms(
        chrono::duration<double, milli>(chrono::steady_clock::now() - start).count());
    cout << (out.report == "structured" ? report.structured() : report.text());
    return code;
}

PrecedenceOracle make_order(const string &order, const vector<Feature> &features,
                            const GroundProblem &problem, const PolicyContext *ctx,
                            long state_cap) {
    if (order == "goal_counter") {
        for (size_t i = 0; i < features.size(); ++i)
            if (features[i].name == "#g")
                return PrecedenceOracle::goal_counter(int(i));
        if (features.size() == 1)
            return PrecedenceOracle::goal_counter(0);
        throw PlanningError("goal_counter order needs a #g feature");
    }
    if (order.rfind("lex:", 0) == 0) {
        vector<int> indices;
        stringstream in(order.substr(4));
        string name;
        while (getline(in, name, ',')) {
            bool found = false;
            for (size_t i = 0; i < features.size(); ++i)
                if (features[i].name == name) {
                    indices.push_back(int(i));
                    found = true;
                }
            if (!found)
                throw PlanningError("lex order: unknown feature '" + name + "'");
        }
        return PrecedenceOracle::lexicographic(indices);
    }
    if (order == "closure") {
        if (!ctx)
            throw PlanningError("closure order needs --rules");
        return closure_order(problem, *ctx, state_cap);
    }
    throw PlanningError("unknown order '" + order + "'");
}

ordered_json episode_json(const SubproblemReport &episode) {
    ordered_json e;
    e["width"] = episode.width_used;
    e["plan_length"] = episode.plan_length;
    e["expanded"] = episode.expanded;
    e["generated"] = episode.generated;
    if (episode.rule_fired)
        e["rule"] = *episode.rule_fired;
    return e;
}

void fill_search_result(ordered_json &results, const GroundProblem &problem,
                        const SearchResult &result) {
    results["solved"] = result.solved();
    results["plan_length"] = int(result.plan.size());
    results["expanded"] = result.expanded;
    results["generated"] = result.generated;
    results["observed_b"] = result.observed_b;
    if (result.optimal)
        results["optimal"] = *result.optimal;
    ordered_json plan = ordered_json::array();
    for (int action : result.plan)
        plan.push_back(problem.actions[action].name);
    results["plan"] = plan;
}

int run_solve(const InstanceArgs &instance, const OutputArgs &out, const string &algo,
              int k, int k_cap, const string &features_arg, const string &rules_arg,
              const string &order_arg, const string &goal_cond, long state_cap,
              bool check_optimal) {
    auto start = chrono::steady_clock::now();
    GroundProblem problem = load_problem(instance);
    RunReport report("solve");
    report.set_instance(problem.name, problem.num_atoms(), int(problem.actions.size()));
    ordered_json &results = report.results();
    results["algo"] = algo;
    SearchLimits limits{state_cap};

    auto verify_optimal = [&](SearchResult &result) {
        if (!check_optimal)
            return;
        ReachabilityTable oracle = bfs_oracle(problem, state_cap);
        result.optimal = result.solved() && oracle.goal_cost &&
            int(result.plan.size()) == *oracle.goal_cost;
    };

    if (algo == "bfs") {
        ReachabilityTable oracle = bfs_oracle(problem, state_cap);
        results["solved"] = oracle.goal_cost.has_value();
        if (oracle.goal_cost) {
            results["plan_length"] = *oracle.goal_cost;
            results["optimal"] = true;
            auto plan = oracle.extract_goal_plan(problem_goal(problem));
            ordered_json names = ordered_json::array();
            for (int action : *plan)
                names.push_back(problem.actions[action].name);
            results["plan"] = names;
        }
        results["expanded"] = oracle.num_states();
        return emit(report, out, start, oracle.goal_cost ? exit_ok : exit_false);
    }
    if (algo == "iw_k") {
        SearchResult result = iw_k(problem, k, limits);
        verify_optimal(result);
        results["k"] = k;
        fill_search_result(results, problem, result);
        return emit(report, out, start, result.solved() ? exit_ok : exit_false);
    }
    if (algo == "iw") {
        IwResult result = iw(problem, -1, limits);
        verify_optimal(result.result);
        results["k_star"] = result.k_star;
        fill_search_result(results, problem, result.result);
        return emit(report, out, start, result.result.solved() ? exit_ok : exit_false);
    }
    if (algo == "iw_phi") {
        vector<Feature> features =
            resolve_features(problem, parse_feature_specs(features_arg));
        SearchResult result = iw_phi(problem, features, limits);
        verify_optimal(result);
        fill_search_result(results, problem, result);
        return emit(report, out, start, result.solved() ? exit_ok : exit_false);
    }
    if (algo == "siw_phi" || algo == "siw_r") {
        SiwResult siw;
        if (algo == "siw_phi") {
            vector<Feature> features =
                resolve_features(problem, parse_feature_specs(features_arg));
            optional<PolicyContext> rules_ctx;
            if (!rules_arg.empty())
                rules_ctx = make_policy_context(problem, load_rules(rules_arg));
            PrecedenceOracle order =
                make_order(order_arg, features, problem,
                           rules_ctx ? &*rules_ctx : nullptr, state_cap);
            siw = siw_phi(problem, features, order, k_cap, limits);
            results["order_tests"] = siw.order_tests;
        } else {
            PolicyContext ctx = make_policy_context(problem, load_rules(rules_arg));
            siw = siw_r(ctx, goal_valuations(ctx, goal_cond, state_cap), k_cap, limits);
        }
        results["solved"] = siw.solved;
        results["plan_length"] = int(siw.plan.size());
        results["episodes"] = ordered_json::array();
        for (const auto &episode : siw.episodes)
            results["episodes"].push_back(episode_json(episode));
        results["max_episode_width"] = siw.max_episode_width();
        if (siw.solved) {
            State end = replay_plan(problem, problem.init, siw.plan);
            results["plan_valid"] = problem.is_goal(end);
        }
        ordered_json plan = ordered_json::array();
        for (int action : siw.plan)
            plan.push_back(problem.actions[action].name);
        results["plan"] = plan;
        return emit(report, out, start, siw.solved ? exit_ok : exit_false);
    }
    throw PlanningError("unknown algorithm '" + algo + "'");
}

int run_width(const InstanceArgs &instance, const OutputArgs &out, int k_max,
              long state_cap, bool effective) {
    auto start = chrono::steady_clock::now();
    GroundProblem problem = load_problem(instance);
    RunReport report("width");
    report.set_instance(problem.name, problem.num_atoms(), int(problem.actions.size()));
    WidthLimits limits;
    limits.state_cap = state_cap;
    WidthResult width = exact_width(problem, k_max, limits);
    report.results()["exact_width"] = to_text(width);
    if (effective) {
        ReachabilityTable oracle = bfs_oracle(problem, state_cap);
        report.results()["effective_width"] = effective_width(problem, oracle, k_max);
    }
    return emit(report, out, start, width.not_within() ? exit_false : exit_ok);
}

int run_swidth(const InstanceArgs &instance, const OutputArgs &out,
               const string &features_arg, const string &rules_arg,
               const string &order_arg, int k_max, long state_cap) {
    auto start = chrono::steady_clock::now();
    GroundProblem problem = load_problem(instance);
    RunReport report("swidth");
    report.set_instance(problem.name, problem.num_atoms(), int(problem.actions.size()));

    optional<PolicyContext> ctx;
    vector<Feature> features;
    if (!rules_arg.empty()) {
        ctx = make_policy_context(problem, load_rules(rules_arg));
        features = ctx->features;
    }
    if (!features_arg.empty())
        features = resolve_features(problem, parse_feature_specs(features_arg));
    PrecedenceOracle order =
        make_order(order_arg, features, problem, ctx ? &*ctx : nullptr, state_cap);

    WidthLimits limits;
    limits.state_cap = state_cap;
    WidthResult width = serialized_width(problem, features, order, k_max,
                                         state_cap, limits);
    report.results()["serialized_width"] = to_text(width);
    report.results()["order_tests"] = order.tests();
    return emit(report, out, start, width.not_within() ? exit_false : exit_ok);
}

int run_sketchwidth(const InstanceArgs &instance, const OutputArgs &out,
                    const string &rules_arg, int k_max, bool fast, long state_cap) {
    auto start = chrono::steady_clock::now();
    GroundProblem problem = load_problem(instance);
    RunReport report("sketchwidth");
    report.set_instance(problem.name, problem.num_atoms(), int(problem.actions.size()));
    PolicyContext ctx = make_policy_context(problem, load_rules(rules_arg));
    WidthLimits limits;
    limits.state_cap = state_cap;
    WidthResult width = sketch_width(ctx, k_max, fast, state_cap, limits);
    report.results()["sketch"] = ctx.rules.name;
    report.results()["sketch_width"] = to_text(width);
    if (fast)
        report.results()["mode"] = "decomposition states only (lower bound)";
    return emit(report, out, start, width.not_within() ? exit_false : exit_ok);
}

int run_check_policy(const InstanceArgs &instance, const OutputArgs &out,
                     const string &rules_arg, long state_cap) {
    auto start = chrono::steady_clock::now();
    GroundProblem problem = load_problem(instance);
    RunReport report("check policy");
    report.set_instance(problem.name, problem.num_atoms(), int(problem.actions.size()));
    PolicyContext ctx = make_policy_context(problem, load_rules(rules_arg));
    ordered_json &results = report.results();
    results["rules"] = ctx.rules.name;

    TrajectoryVerdict verdict = enumerate_maximal_trajectories(ctx, state_cap);
    results["solves"] = verdict.solves;
    if (verdict.solves) {
        ReachabilityTable oracle = bfs_oracle(problem, state_cap);
        results["optimal"] = check_policy_optimal(ctx, oracle, state_cap);
    }
    results["markovian"] = check_markovian(ctx, state_cap).ok;
    results["closed"] = check_closed(ctx, state_cap).ok;
    results["sound"] = check_sound(ctx, state_cap).ok;
    SeparationResult sep = check_goal_separation({&problem}, {ctx.features}, state_cap);
    results["goal_separation"] = sep.ok;
    results["regularity"] = to_text(check_regular(ctx.rules));
    return emit(report, out, start, verdict.solves ? exit_ok : exit_false);
}

int run_check_sketch(const InstanceArgs &instance, const OutputArgs &out,
                     const string &rules_arg, const string &goal_cond, long state_cap) {
    auto start = chrono::steady_clock::now();
    RunReport report("check sketch");
    RuleSet rules = load_rules(rules_arg);
    vector<BoolValuation> goals;
    if (!goal_cond.empty()) {
        goals = bool_valuations_matching(rules.features, goal_cond);
    } else if (!instance.domain.empty() || !instance.file.empty()) {
        GroundProblem problem = load_problem(instance);
        report.set_instance(problem.name, problem.num_atoms(),
                            int(problem.actions.size()));
        PolicyContext ctx = make_policy_context(problem, rules);
        goals = goal_valuations(ctx, "", state_cap);
    }
    PolicyGraph graph = build_policy_graph(rules, goals);
    TerminationCertificate cert = sieve_terminates(graph);
    ordered_json &results = report.results();
    results["sketch"] = rules.name;
    results["well_formed"] = cert.terminating;
    results["regularity"] = to_text(check_regular(rules));
    if (!cert.terminating)
        results["witness"] = cert.witness_summary;
    else
        results["eliminations"] = int(cert.order.size());
    return emit(report, out, start, cert.terminating ? exit_ok : exit_false);
}

Chain parse_chain(const GroundProblem &problem, const string &text) {
    Chain chain;
    stringstream tuples(text);
    string tuple_text;
    while (getline(tuples, tuple_text, ';')) {
        vector<AtomId> tuple;
        stringstream atoms(tuple_text);
        string atom;
        while (getline(atoms, atom, ' ')) {
            if (!atom.empty())
                tuple.push_back(problem.universe.id_of(atom));
        }
        if (!tuple.empty())
            chain.tuples.push_back(tuple);
    }
    return chain;
}

int run_check_chain(const InstanceArgs &instance, const OutputArgs &out,
                    const string &chain_arg, long state_cap) {
    auto start = chrono::steady_clock::now();
    GroundProblem problem = load_problem(instance);
    RunReport report("check chain");
    report.set_instance(problem.name, problem.num_atoms(), int(problem.actions.size()));
    Chain chain = parse_chain(problem, chain_arg);
    ReachabilityTable oracle = bfs_oracle(problem, state_cap);
    ChainCheck admissible = check_admissible(oracle, chain);
    ChainCheck feasible = check_feasible(oracle, chain);
    ordered_json &results = report.results();
    results["size"] = chain.size();
    results["admissible"] = admissible.ok;
    results["feasible"] = feasible.ok;
    if (!admissible.ok)
        results["admissible_counterexample"] = admissible.reason;
    if (!feasible.ok)
        results["feasible_counterexample"] = feasible.reason;
    return emit(report, out, start, admissible.ok ? exit_ok : exit_false);
}

int run_check_graph(const InstanceArgs &instance, const OutputArgs &out,
                    const string &rules_arg, const string &goal_cond,
                    const string &initial_cond, long state_cap) {
    auto start = chrono::steady_clock::now();
    RunReport report("check graph");
    RuleSet rules = load_rules(rules_arg);
    vector<BoolValuation> goals, initials;
    if (!goal_cond.empty())
        goals = bool_valuations_matching(rules.features, goal_cond);
    if (!initial_cond.empty()) {
        initials = bool_valuations_matching(rules.features, initial_cond);
    } else if (!instance.domain.empty() || !instance.file.empty()) {
        GroundProblem problem = load_problem(instance);
        report.set_instance(problem.name, problem.num_atoms(),
                            int(problem.actions.size()));
        PolicyContext ctx = make_policy_context(problem, rules);
        if (goal_cond.empty())
            goals = goal_valuations(ctx, "", state_cap);
        initials = {boolean_projection(ctx.features, ctx.eval(problem.init))};
    }
    PolicyGraph graph = build_policy_graph(rules, goals);
    TerminationCertificate cert = sieve_terminates(graph);
    bool connected = check_goal_connected(graph, initials);
    ordered_json &results = report.results();
    results["nodes"] = graph.num_nodes();
    results["edges"] = int(graph.edges.size());
    results["terminating"] = cert.terminating;
    results["goal_connected"] = connected;
    if (!cert.terminating)
        results["witness"] = cert.witness_summary;
    return emit(report, out, start, cert.terminating && connected ? exit_ok : exit_false);
}

int run_export_graph(const string &rules_arg, const string &goal_cond,
                     const string &initial_cond, const string &output_path) {
    RuleSet rules = load_rules(rules_arg);
    vector<BoolValuation> goals, initials;
    if (!goal_cond.empty())
        goals = bool_valuations_matching(rules.features, goal_cond);
    if (!initial_cond.empty())
        initials = bool_valuations_matching(rules.features, initial_cond);
    PolicyGraph graph = build_policy_graph(rules, goals);
    string dot = export_dot(graph, initials);
    if (output_path.empty() || output_path == "-") {
        cout << dot;
    } else {
        ofstream file(output_path);
        if (!file)
            throw PlanningError("cannot write " + output_path);
        file << dot;
    }
    return exit_ok;
}

/*
  The delivery sketch table: measured widths per class next to the
  documented bounds. A finite bound must be met exactly; an unbounded one
  is evidenced by a width beyond the cap or growth along the sweep; an
  ill-formed one must be rejected by the sieve.
*/
struct BenchCell {
    string sketch;
    int packages;
    vector<string> measured;
    string summary;
    string expected;
    bool match = false;
};

int run_bench(const OutputArgs &out, const vector<int> &grids,
              const vector<int> &package_counts, int k_cap, int jobs, long state_cap) {
    auto start = chrono::steady_clock::now();
    const vector<pair<string, pair<string, string>>> bounds = {
        {"sigma0", {"2", "unb"}}, {"sigma1", {"2", "unb"}}, {"sigma2", {"1", "unb"}},
        {"sigma3", {"ill-formed", "ill-formed"}}, {"sigma4", {"2", "2"}},
        {"sigma5", {"1", "1"}}, {"sigma6", {"2", "unb"}}, {"sigma7", {"2", "unb"}},
        {"sigma8", {"0", "0"}},
    };

    vector<BenchCell> cells;
    for (const auto &[sketch, bound] : bounds)
        for (int packages : package_counts)
            cells.push_back({sketch, packages, {}, "",
                             packages == 1 ? bound.first : bound.second, false});

    auto evaluate = [&](BenchCell cell) -> BenchCell {
        optional<int> finite_max;
        bool exceeded = false, growth = false, ill_formed = false;
        optional<int> previous;
        for (int g : grids) {
            GroundProblem problem = generate(
                {"delivery", {{"w", g}, {"h", g}, {"packages", cell.packages}}});
            PolicyContext ctx = make_policy_context(problem, bundled_rules(cell.sketch));
            PolicyGraph graph = build_policy_graph(
                ctx.rules, bool_valuations_matching(ctx.rules.features, "n=0"));
            if (!sieve_terminates(graph).terminating) {
                ill_formed = true;
                cell.measured.push_back("ill-formed");
                continue;
            }
            WidthLimits limits;
            limits.state_cap = state_cap;
            WidthResult width = sketch_width(ctx, k_cap, false, state_cap, limits);
            cell.measured.push_back(to_text(width));
            if (width.not_within()) {
                exceeded = true;
            } else {
                finite_max = max(finite_max.value_or(0), *width.width);
                if (previous && *width.width > *previous)
                    growth = true;
                previous = width.width;
            }
        }
        if (ill_formed) {
            cell.summary = "ill-formed";
            cell.match = cell.expected == "ill-formed";
        } else if (exceeded) {
            cell.summary = ">" + to_string(k_cap);
            cell.match = cell.expected == "unb";
        } else {
            cell.summary = to_string(finite_max.value_or(0));
            cell.match = cell.expected == cell.summary ||
                (cell.expected == "unb" && growth);
        }
        return cell;
    };

    if (jobs > 1) {
        vector<future<BenchCell>> futures;
        for (const BenchCell &cell : cells)
            futures.push_back(async(launch::async, evaluate, cell));
        for (size_t i = 0; i < cells.size(); ++i)
            cells[i] = futures[i].get();
    } else {
        for (BenchCell &cell : cells)
            cell = evaluate(cell);
    }

    RunReport report("bench");
    ordered_json &results = report.results();
    results["grids"] = grids;
    results["k_cap"] = k_cap;
    results["rows"] = ordered_json::array();
    bool all_match = true;
    for (const BenchCell &cell : cells) {
        ordered_json row;
        row["sketch"] = cell.sketch;
        row["class"] = cell.packages == 1 ? "one package" : "two packages";
        row["per_grid"] = cell.measured;
        row["measured"] = cell.summary;
        row["expected"] = cell.expected;
        row["match"] = cell.match;
        results["rows"].push_back(row);
        all_match = all_match && cell.match;
    }
    results["all_match"] = all_match;
    return emit(report, out, start, all_match ? exit_ok : exit_false);
}

}

int main(int argc, char **argv) {
    CLI::App app{"Width-based planning toolkit: novelty searches, policy and "
                 "sketch verification, serialized widths"};
    app.require_subcommand(1);

    InstanceArgs instance;
    OutputArgs output;
    string algo = "iw";
    string features_arg, rules_arg, order_arg = "goal_counter", goal_cond, initial_cond;
    string chain_arg, output_path;
    int k = 1, k_cap = 2, k_max = 2, jobs = 1;
    long state_cap = 2'000'000;
    bool check_optimal = false, effective = false, fast = false;
    vector<int> grids = {2, 3, 4};
    vector<int> package_counts = {1, 2};

    auto add_instance = [&](CLI::App *cmd) {
        cmd->add_option("--domain", instance.domain,
                        "built-in domain (blocks_clear, blocks_on, boxes, delivery, "
                        "visitall, grid)");
        cmd->add_option("--params", instance.params, "generator parameters k=v[,k=v]");
        cmd->add_option("--file", instance.file, "grounded problem file");
        cmd->add_option("--seed", instance.seed, "generator seed");
    };
    auto add_output = [&](CLI::App *cmd) {
        cmd->add_option("--report", output.report, "text or structured")
            ->check(CLI::IsMember({"text", "structured"}));
        cmd->add_option("--state-cap", state_cap, "reachable-state cap");
    };

    CLI::App *solve = app.add_subcommand("solve", "run a search algorithm");
    add_instance(solve);
    add_output(solve);
    solve->add_option("--algo", algo, "bfs, iw, iw_k, iw_phi, siw_phi or siw_r")
        ->check(CLI::IsMember({"bfs", "iw", "iw_k", "iw_phi", "siw_phi", "siw_r"}));
    solve->add_option("--k", k, "novelty arity for iw_k");
    solve->add_option("--k-cap", k_cap, "episode width cap for siw_phi/siw_r");
    solve->add_option("--features", features_arg, "feature list, e.g. 'H,n' or '#g'");
    solve->add_option("--rules", rules_arg, "rules file or bundled:<name>");
    solve->add_option("--order", order_arg, "goal_counter, lex:<f1,f2> or closure");
    solve->add_option("--goal", goal_cond, "goal valuation condition, e.g. 'n=0'");
    solve->add_flag("--check-optimal", check_optimal, "compare the plan to the oracle");

    CLI::App *width = app.add_subcommand("width", "exact problem width");
    add_instance(width);
    add_output(width);
    width->add_option("--k-max", k_max, "largest width to try");
    width->add_flag("--effective", effective, "also report the effective width");

    CLI::App *swidth = app.add_subcommand("swidth", "serialized width under an order");
    add_instance(swidth);
    add_output(swidth);
    swidth->add_option("--features", features_arg, "feature list");
    swidth->add_option("--rules", rules_arg, "rules for the closure order");
    swidth->add_option("--order", order_arg, "goal_counter, lex:<f1,f2> or closure");
    swidth->add_option("--k-max", k_max, "largest width to try");

    CLI::App *sketchwidth = app.add_subcommand("sketchwidth", "width of a sketch");
    add_instance(sketchwidth);
    add_output(sketchwidth);
    sketchwidth->add_option("--rules", rules_arg, "rules file or bundled:<name>")
        ->required();
    sketchwidth->add_option("--k-max", k_max, "largest width to try");
    sketchwidth->add_flag("--fast", fast, "decomposition states only (lower bound)");

    CLI::App *check =
        app.add_subcommand("check", "verify policies, sketches, chains, graphs");
    check->require_subcommand(1);
    CLI::App *check_policy_cmd = check->add_subcommand("policy", "policy verdicts");
    add_instance(check_policy_cmd);
    add_output(check_policy_cmd);
    check_policy_cmd->add_option("--rules", rules_arg, "rules file or bundled:<name>")
        ->required();
    CLI::App *check_sketch_cmd =
        check->add_subcommand("sketch", "sketch well-formedness");
    add_instance(check_sketch_cmd);
    add_output(check_sketch_cmd);
    check_sketch_cmd->add_option("--rules", rules_arg, "rules file or bundled:<name>")
        ->required();
    check_sketch_cmd->add_option("--goal", goal_cond, "goal valuation condition");
    CLI::App *check_chain_cmd = check->add_subcommand("chain", "chain admissibility");
    add_instance(check_chain_cmd);
    add_output(check_chain_cmd);
    check_chain_cmd->add_option("--chain", chain_arg,
                                "tuples 'a b;c' (atoms space-separated, tuples by ';')")
        ->required();
    CLI::App *check_graph_cmd = check->add_subcommand("graph", "policy graph checks");
    add_instance(check_graph_cmd);
    add_output(check_graph_cmd);
    check_graph_cmd->add_option("--rules", rules_arg, "rules file or bundled:<name>")
        ->required();
    check_graph_cmd->add_option("--goal", goal_cond, "goal valuation condition");
    check_graph_cmd->add_option("--initial", initial_cond, "initial valuation condition");

    CLI::App *bench =
        app.add_subcommand("bench", "sketch-width table over the delivery sweep");
    add_output(bench);
    bench->add_option("--grids", grids, "grid sizes to sweep");
    bench->add_option("--packages", package_counts, "package counts to sweep");
    bench->add_option("--k-cap", k_cap, "width cap");
    bench->add_option("--jobs", jobs, "parallel cell evaluations");

    CLI::App *export_graph = app.add_subcommand("export-graph", "write a policy graph");
    export_graph->add_option("--rules", rules_arg, "rules file or bundled:<name>")
        ->required();
    export_graph->add_option("--goal", goal_cond, "goal valuation condition");
    export_graph->add_option("--initial", initial_cond, "initial valuation condition");
    export_graph->add_option("-o,--output", output_path, "output path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (solve->parsed())
            return run_solve(instance, output, algo, k, k_cap, features_arg, rules_arg,
                             order_arg, goal_cond, state_cap, check_optimal);
        if (width->parsed())
            return run_width(instance, output, k_max, state_cap, effective);
        if (swidth->parsed())
            return run_swidth(instance, output, features_arg, rules_arg, order_arg,
                              k_max, state_cap);
        if (sketchwidth->parsed())
            return run_sketchwidth(instance, output, rules_arg, k_max, fast, state_cap);
        if (check->parsed()) {
            if (check_policy_cmd->parsed())
                return run_check_policy(instance, output, rules_arg, state_cap);
            if (check_sketch_cmd->parsed())
                return run_check_sketch(instance, output, rules_arg, goal_cond,
                                        state_cap);
            if (check_chain_cmd->parsed())
                return run_check_chain(instance, output, chain_arg, state_cap);
            if (check_graph_cmd->parsed())
                return run_check_graph(instance, output, rules_arg, goal_cond,
                                       initial_cond, state_cap);
        }
        if (bench->parsed())
            return run_bench(output, grids, package_counts, k_cap, jobs, state_cap);
        if (export_graph->parsed())
            return run_export_graph(rules_arg, goal_cond, initial_cond, output_path);
    } catch (const exception &e) {
        cerr << "error: " << e.what() << endl;
        return exit_usage;
    }
    return exit_usage;
}

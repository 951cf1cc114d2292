// mprp: maximum-profit pickup routing toolkit.
//
// Subcommands: gen, solve, exact, baseline, experiment, validate, convert.
// Exit codes: 0 success, 1 usage error, 2 data/invariant error, 3 size limit
// exceeded. Diagnostics go to stderr; data goes to files.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mprp/experiments.hpp"
#include "mprp/generator.hpp"
#include "mprp/io.hpp"
#include "mprp/model.hpp"
#include "mprp/oracle.hpp"
#include "mprp/rng.hpp"
#include "mprp/solver.hpp"

namespace {

// --seed wins over MPRP_SEED; with neither, seed 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("MPRP_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw mprp::DataError(
                std::string("MPRP_SEED is not a valid seed: ") + env);
        }
    }
    return 0;
}

struct SolveFlags {
    std::optional<std::uint64_t> seed;
    std::size_t restarts = 1;
    std::string timing = "repaired";
    bool frozen_denominator = false;
    bool no_return_leg = false;

    mprp::SolverConfig config() const {
        mprp::SolverConfig c;
        if (timing == "literal")
            c.timing_variant = mprp::TimingVariant::literal;
        else if (timing == "repaired")
            c.timing_variant = mprp::TimingVariant::repaired;
        else
            throw mprp::DataError("--timing must be 'repaired' or 'literal'");
        c.frozen_denominator = frozen_denominator;
        c.charge_return_leg = !no_return_leg;
        return c;
    }
};

void add_seed_option(CLI::App* cmd, std::optional<std::uint64_t>& seed) {
    cmd->add_option("--seed", seed,
                    "RNG seed (default: MPRP_SEED env var, then 0)");
}

int run(int argc, char** argv) {
    CLI::App app{"Maximum-profit pickup routing: generator, randomized "
                 "solver, exact oracle and experiment harness"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a random instance");
    mprp::GenParams gen_params;
    std::optional<std::uint64_t> gen_seed;
    std::string gen_out;
    gen->add_option("--n", gen_params.n, "Number of sites")->required();
    gen->add_option("--m", gen_params.m, "Fleet size")
        ->default_val(gen_params.m);
    gen->add_option("--capacity", gen_params.capacity, "Vehicle capacity Q")
        ->default_val(gen_params.capacity);
    gen->add_option("--horizon", gen_params.horizon, "Planning horizon T")
        ->default_val(gen_params.horizon);
    add_seed_option(gen, gen_seed);
    gen->add_option("--out", gen_out, "Output instance JSON")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "Run the randomized solver");
    std::string solve_instance, solve_out;
    SolveFlags solve_flags;
    solve->add_option("--instance", solve_instance, "Instance JSON")
        ->required();
    add_seed_option(solve, solve_flags.seed);
    solve->add_option("--restarts", solve_flags.restarts,
                      "Independent restarts; the best solution is kept")
        ->default_val(1);
    solve
        ->add_option("--timing", solve_flags.timing,
                     "Timing factor variant: repaired|literal")
        ->default_val("repaired");
    solve->add_flag("--frozen-denominator", solve_flags.frozen_denominator,
                    "Freeze the selection denominator at route start");
    solve->add_flag("--no-return-leg", solve_flags.no_return_leg,
                    "Do not charge the final leg back to the depot");
    solve->add_option("--out", solve_out, "Output solution JSON")->required();

    // exact
    auto* exact = app.add_subcommand(
        "exact", "Exact optimum by subset DP plus partition enumeration");
    std::string exact_instance, exact_out;
    exact->add_option("--instance", exact_instance, "Instance JSON")
        ->required();
    exact->add_option("--out", exact_out, "Output solution JSON")->required();

    // baseline
    auto* baseline =
        app.add_subcommand("baseline", "Deterministic greedy baseline");
    std::string baseline_rule, baseline_instance, baseline_out;
    baseline
        ->add_option("--rule", baseline_rule,
                     "Selection rule: max_score|nearest_feasible")
        ->required();
    baseline->add_option("--instance", baseline_instance, "Instance JSON")
        ->required();
    baseline->add_option("--out", baseline_out, "Output solution JSON")
        ->required();

    // experiment
    auto* experiment = app.add_subcommand(
        "experiment", "Seeded Monte Carlo sweep or runtime probe");
    std::string exp_plan, exp_out_csv, exp_out_json;
    int exp_threads = 1;
    bool exp_probe = false;
    experiment->add_option("--plan", exp_plan, "Experiment plan JSON");
    experiment->add_option("--out", exp_out_csv, "Output report CSV");
    experiment->add_option("--out-json", exp_out_json, "Output report JSON");
    experiment->add_option("--threads", exp_threads, "Worker threads")
        ->default_val(1);
    experiment->add_flag(
        "--probe-runtime", exp_probe,
        "Run the runtime-scaling probe instead of a plan (use --out-json)");

    // validate
    auto* validate = app.add_subcommand(
        "validate",
        "Check a solution against an instance, or audit an instance alone");
    std::string val_instance, val_solution;
    validate->add_option("--instance", val_instance, "Instance JSON")
        ->required();
    validate->add_option("--solution", val_solution, "Solution JSON");

    // convert
    auto* convert = app.add_subcommand(
        "convert", "Convert a classic VRPTW benchmark file to instance JSON");
    std::string conv_in, conv_out, conv_horizon = "max_due";
    convert->add_option("--input", conv_in, "Benchmark text file")->required();
    convert->add_option("--out", conv_out, "Output instance JSON")->required();
    convert->add_option(
        "--horizon", conv_horizon,
        "Horizon policy: 'max_due' or an explicit numeric value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints the requested help, exit 0
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    if (gen->parsed()) {
        gen_params.seed = resolve_seed(gen_seed);
        const mprp::Instance instance = mprp::generate(gen_params);
        mprp::write_file_atomic(gen_out, mprp::emit_instance(instance));
        std::cerr << "wrote " << gen_out << " (" << instance.site_count()
                  << " sites, seed " << gen_params.seed << ")\n";
        return 0;
    }

    if (solve->parsed()) {
        const mprp::Instance instance =
            mprp::parse_instance(mprp::read_file(solve_instance));
        const std::uint64_t seed = resolve_seed(solve_flags.seed);
        const mprp::Solution solution = mprp::solve_best_of(
            instance, seed, solve_flags.restarts, solve_flags.config());
        mprp::write_file_atomic(solve_out, mprp::emit_solution(solution));
        std::cerr << "profit " << solution.profit << " (seed " << seed << ", "
                  << solve_flags.restarts << " restart(s))\n";
        return 0;
    }

    if (exact->parsed()) {
        const mprp::Instance instance =
            mprp::parse_instance(mprp::read_file(exact_instance));
        const mprp::OptResult opt = mprp::brute_force_opt(instance);
        mprp::Solution solution = mprp::make_solution(instance, opt.routes);
        mprp::write_file_atomic(exact_out, mprp::emit_solution(solution));
        std::cerr << "optimal profit " << opt.profit << "\n";
        return 0;
    }

    if (baseline->parsed()) {
        mprp::GreedyRule rule;
        if (baseline_rule == "max_score")
            rule = mprp::GreedyRule::max_score;
        else if (baseline_rule == "nearest_feasible")
            rule = mprp::GreedyRule::nearest_feasible;
        else
            throw mprp::DataError(
                "--rule must be 'max_score' or 'nearest_feasible'");
        const mprp::Instance instance =
            mprp::parse_instance(mprp::read_file(baseline_instance));
        const mprp::Solution solution = mprp::greedy_construct(instance, rule);
        mprp::write_file_atomic(baseline_out, mprp::emit_solution(solution));
        std::cerr << "baseline profit " << solution.profit << "\n";
        return 0;
    }

    if (experiment->parsed()) {
        if (exp_probe) {
            const mprp::RuntimeProbeReport probe = mprp::runtime_probe();
            const std::string out = mprp::emit_probe_json(probe);
            if (!exp_out_json.empty())
                mprp::write_file_atomic(exp_out_json, out);
            else
                std::cout << out;
            std::cerr << probe.notes << "\n";
            return 0;
        }
        if (exp_plan.empty())
            throw CLI::RequiredError("--plan (or --probe-runtime)");
        const mprp::ExperimentPlan plan =
            mprp::parse_plan(mprp::read_file(exp_plan));
        const mprp::ExperimentReport report =
            mprp::run_plan(plan, exp_threads);
        if (!exp_out_csv.empty())
            mprp::write_file_atomic(exp_out_csv,
                                    mprp::emit_report_csv(report));
        if (!exp_out_json.empty())
            mprp::write_file_atomic(exp_out_json,
                                    mprp::emit_report_json(report));
        if (exp_out_csv.empty() && exp_out_json.empty())
            std::cout << mprp::emit_report_csv(report);
        return 0;
    }

    if (validate->parsed()) {
        const mprp::Instance instance =
            mprp::parse_instance(mprp::read_file(val_instance));
        if (val_solution.empty()) {
            const mprp::MomentReport report =
                mprp::validate_assumptions(instance);
            std::cout << "instance ok: " << instance.site_count()
                      << " sites\n";
            for (const auto& e : report.entries) {
                std::cout << "  " << e.name << ": mean " << e.mean;
                if (e.variance_defined)
                    std::cout << ", variance " << e.variance;
                else
                    std::cout << ", variance undefined";
                if (!std::isnan(e.target))
                    std::cout << ", target " << e.target << ", z " << e.z;
                std::cout << "\n";
            }
            return 0;
        }
        const mprp::Solution solution =
            mprp::parse_solution(mprp::read_file(val_solution));
        const mprp::SolutionCheck check =
            mprp::check_solution(instance, solution);
        if (check.ok()) {
            std::cout << "solution ok: profit " << solution.profit << "\n";
            return 0;
        }
        for (const auto& v : check.report.violations)
            std::cerr << "violation: route " << v.route << " position "
                      << v.position << " site " << v.site_id << ": "
                      << mprp::to_string(v.kind) << "\n";
        if (!check.arrivals_consistent)
            std::cerr << "violation: arrival_times inconsistent with routes\n";
        if (!check.profit_consistent)
            std::cerr << "violation: profit " << solution.profit
                      << " matches neither " << check.profit_with_return
                      << " (return charged) nor "
                      << check.profit_without_return << " (no return leg)\n";
        throw mprp::DataError("solution failed validation");
    }

    if (convert->parsed()) {
        std::optional<double> horizon;
        if (conv_horizon != "max_due") {
            try {
                horizon = std::stod(conv_horizon);
            } catch (const std::exception&) {
                throw mprp::DataError(
                    "--horizon must be 'max_due' or a number, got '" +
                    conv_horizon + "'");
            }
        }
        const mprp::SolomonConversion conv =
            mprp::convert_solomon(mprp::read_file(conv_in), horizon);
        mprp::write_file_atomic(conv_out, mprp::emit_instance(conv.instance));
        std::cerr << "converted " << conv.name << ": "
                  << conv.instance.site_count() << " sites";
        if (conv.clipped_windows > 0)
            std::cerr << ", " << conv.clipped_windows << " window(s) clipped";
        if (conv.nonzero_service_times > 0)
            std::cerr << ", " << conv.nonzero_service_times
                      << " service time(s) ignored";
        std::cerr << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const mprp::LimitError& e) {
        std::cerr << "limit error: " << e.what() << "\n";
        return 3;
    } catch (const mprp::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

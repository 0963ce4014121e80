#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hrcp/bench.hpp"
#include "hrcp/format.hpp"
#include "hrcp/generator.hpp"
#include "hrcp/incremental.hpp"
#include "hrcp/instance_io.hpp"
#include "hrcp/lp_export.hpp"
#include "hrcp/metrics.hpp"
#include "hrcp/solution_io.hpp"
#include "hrcp/solver.hpp"
#include "hrcp/svg.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct SolveArgs {
    std::string instance_path;
    std::string method = "exact";
    int p = 1;
    std::optional<double> delta, time_limit, iter_time_limit;
    double alpha = 1.2, beta = 0.9;
    std::optional<int> k;
    std::string solution_path, trace_path;
};

void print_report(const char* status, double span, double lb, double ub, int iterations,
                  int points_used, double ms) {
    std::cout << "status " << status << '\n'
              << "span " << hrcp::format_double(span) << '\n'
              << "lb " << hrcp::format_double(lb) << '\n'
              << "ub " << hrcp::format_double(ub) << '\n'
              << "iterations " << iterations << '\n'
              << "points_used " << points_used << '\n'
              << "time_ms " << hrcp::format_fixed(ms, 3) << '\n';
}

int run_solve(const SolveArgs& args) {
    const hrcp::Instance instance = hrcp::read_instance(args.instance_path);

    hrcp::MetricParams metric_params;
    metric_params.delta = args.delta;
    metric_params.alpha = args.alpha;
    metric_params.beta = args.beta;
    metric_params.k = args.k;

    const auto started = Clock::now();
    if (args.method == "exact") {
        if (args.iter_time_limit)
            std::cerr << "note: --iter-time-limit only applies to incremental methods\n";
        hrcp::SolveLimits limits;
        limits.time_limit_s = args.time_limit;
        const hrcp::SolveOutcome outcome = hrcp::solve(instance, args.p, limits);
        const double ms = ms_since(started);
        print_report(hrcp::to_string(outcome.status), outcome.upper_bound, outcome.lower_bound,
                     outcome.upper_bound, 1, instance.n, ms);
        if (!args.solution_path.empty()) {
            if (!outcome.best) throw std::runtime_error("no solution found; nothing to write");
            hrcp::write_solution(*outcome.best, args.solution_path);
        }
        if (!args.trace_path.empty()) {
            std::vector<hrcp::TraceRecord> trace{{1, instance.n, outcome.status, outcome.lower_bound,
                                                  outcome.lower_bound, outcome.upper_bound, 0, ms}};
            std::ofstream out(args.trace_path);
            if (!out) throw std::runtime_error("cannot open " + args.trace_path + " for writing");
            hrcp::write_trace_csv(trace, out);
        }
        return 0;
    }

    const auto metric = hrcp::metric_from_string(args.method);
    if (!metric) throw std::runtime_error("unknown method: " + args.method);
    hrcp::IncrementalConfig config;
    config.metric = *metric;
    config.metric_params = metric_params;
    config.sub_limits.time_limit_s = args.iter_time_limit;
    config.time_budget_s = args.time_limit;
    const hrcp::IncrementalResult result = hrcp::run(instance, args.p, config);
    print_report(hrcp::to_string(result.status), result.upper_bound, result.lower_bound,
                 result.upper_bound, result.iterations, result.points_used, ms_since(started));
    if (!args.solution_path.empty()) {
        if (!result.best) throw std::runtime_error("no solution found; nothing to write");
        hrcp::write_solution(*result.best, args.solution_path);
    }
    if (!args.trace_path.empty()) {
        std::ofstream out(args.trace_path);
        if (!out) throw std::runtime_error("cannot open " + args.trace_path + " for writing");
        hrcp::write_trace_csv(result.trace, out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hrcp: exact hyper-rectangular clustering toolkit"};
    app.require_subcommand(1);

    // gen
    hrcp::GenParams gen_params;
    std::string gen_out, gen_labels;
    auto* gen = app.add_subcommand("gen", "generate a random clustered instance");
    gen->add_option("--d", gen_params.d, "dimension")->check(CLI::PositiveNumber);
    gen->add_option("--n", gen_params.n, "number of points")->check(CLI::PositiveNumber);
    gen->add_option("--p", gen_params.p, "number of originating points")->check(CLI::PositiveNumber);
    gen->add_option("--s", gen_params.s, "dispersion in [0,1]")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gen_params.seed, "random seed");
    gen->add_option("-o,--output", gen_out, "instance file to write")->required();
    gen->add_option("--labels", gen_labels, "also write ground-truth labels here");

    // solve
    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "solve an instance exactly or incrementally");
    solve->add_option("instance", solve_args.instance_path, "instance file")
        ->required()
        ->check(CLI::ExistingFile);
    solve->add_option("--method", solve_args.method, "exact, nm, em or dm")
        ->check(CLI::IsMember({"exact", "nm", "em", "dm"}));
    solve->add_option("--p", solve_args.p, "cluster budget")->required()->check(CLI::PositiveNumber);
    solve->add_option("--delta", solve_args.delta, "neighbourhood radius (default: auto)");
    solve->add_option("--alpha", solve_args.alpha, "nm initialization threshold (>= 1)");
    solve->add_option("--beta", solve_args.beta, "em/dm initialization threshold in [0,1]");
    solve->add_option("--k", solve_args.k, "points added per increment");
    solve->add_option("--time-limit", solve_args.time_limit, "total budget in seconds");
    solve->add_option("--iter-time-limit", solve_args.iter_time_limit,
                      "per-iteration budget in seconds");
    solve->add_option("-o,--output", solve_args.solution_path, "write the solution as JSON");
    solve->add_option("--trace", solve_args.trace_path, "write the iteration trace as CSV");

    // export
    std::string export_instance, export_out;
    int export_p = 1;
    auto* exp = app.add_subcommand("export", "write the compact model in LP format");
    exp->add_option("instance", export_instance, "instance file")
        ->required()
        ->check(CLI::ExistingFile);
    exp->add_option("--p", export_p, "cluster budget")->required()->check(CLI::PositiveNumber);
    exp->add_option("-o,--output", export_out, "LP file to write")->required();

    // bench
    std::string bench_spec_path, bench_out;
    auto* bench = app.add_subcommand("bench", "run an experiment grid");
    bench->add_option("--spec", bench_spec_path, "JSON spec file")
        ->required()
        ->check(CLI::ExistingFile);
    bench->add_option("-o,--output", bench_out, "CSV results file")->required();

    // plot
    std::string plot_instance, plot_solution, plot_out;
    auto* plot = app.add_subcommand("plot", "render a 2-D instance (and solution) as SVG");
    plot->add_option("instance", plot_instance, "instance file")
        ->required()
        ->check(CLI::ExistingFile);
    plot->add_option("--solution", plot_solution, "solution JSON to overlay")
        ->check(CLI::ExistingFile);
    plot->add_option("-o,--output", plot_out, "SVG file to write")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const hrcp::GeneratedInstance result = hrcp::generate(gen_params);
            hrcp::write_instance(result.instance, gen_out);
            if (!gen_labels.empty()) hrcp::write_labels(result.labels, gen_labels);
            std::cout << "wrote " << gen_out << " (" << result.instance.n << " points, d="
                      << result.instance.d << ")\n";
        } else if (solve->parsed()) {
            return run_solve(solve_args);
        } else if (exp->parsed()) {
            const hrcp::Instance instance = hrcp::read_instance(export_instance);
            hrcp::export_compact_model(instance, export_p, export_out);
            std::cout << "wrote " << export_out << '\n';
        } else if (bench->parsed()) {
            const hrcp::BenchSpec spec = hrcp::parse_bench_spec_file(bench_spec_path);
            const hrcp::BenchResult result = hrcp::run_bench(spec);
            std::ofstream out(bench_out);
            if (!out) throw std::runtime_error("cannot open " + bench_out + " for writing");
            hrcp::write_bench_csv(result.rows, out);
            for (const auto& message : result.errors) std::cerr << "cell failed: " << message << '\n';
            std::cout << "wrote " << bench_out << " (" << result.rows.size() << " rows)\n";
        } else if (plot->parsed()) {
            const hrcp::Instance instance = hrcp::read_instance(plot_instance);
            std::optional<hrcp::SolutionFile> solution;
            if (!plot_solution.empty()) solution = hrcp::read_solution(plot_solution);
            std::ofstream out(plot_out);
            if (!out) throw std::runtime_error("cannot open " + plot_out + " for writing");
            hrcp::plot_svg(instance, solution ? &solution->clustering : nullptr, out);
            std::cout << "wrote " << plot_out << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

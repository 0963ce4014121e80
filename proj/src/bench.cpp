#include "hrcp/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hrcp/format.hpp"
#include "hrcp/generator.hpp"
#include "hrcp/incremental.hpp"
#include "hrcp/solver.hpp"

namespace hrcp {

namespace {

using nlohmann::json;

template <typename T>
std::vector<T> list_field(const json& doc, const char* key) {
    if (!doc.contains(key)) throw std::runtime_error(std::string("bench spec misses field ") + key);
    const json& value = doc.at(key);
    if (value.is_array()) {
        auto items = value.get<std::vector<T>>();
        if (items.empty()) throw std::runtime_error(std::string("bench spec field ") + key + " is empty");
        return items;
    }
    return {value.get<T>()};
}

}  // namespace

BenchSpec parse_bench_spec(std::istream& in) {
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("bench spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error("bench spec must be a JSON object");

    BenchSpec spec;
    spec.n = list_field<int>(doc, "n");
    spec.d = list_field<int>(doc, "d");
    spec.p = list_field<int>(doc, "p");
    spec.s = list_field<double>(doc, "s");
    spec.seeds = list_field<std::uint64_t>(doc, "seeds");
    spec.methods = list_field<std::string>(doc, "methods");
    for (const auto& m : spec.methods)
        if (m != "exact" && !metric_from_string(m))
            throw std::runtime_error("unknown bench method: " + m);
    if (doc.contains("time_limit_s")) spec.time_limit_s = doc.at("time_limit_s").get<double>();
    if (doc.contains("iter_time_limit_s"))
        spec.iter_time_limit_s = doc.at("iter_time_limit_s").get<double>();
    if (doc.contains("delta")) spec.metric_params.delta = doc.at("delta").get<double>();
    if (doc.contains("alpha")) spec.metric_params.alpha = doc.at("alpha").get<double>();
    if (doc.contains("beta")) spec.metric_params.beta = doc.at("beta").get<double>();
    if (doc.contains("k")) spec.metric_params.k = doc.at("k").get<int>();
    if (doc.contains("tolerance")) spec.tolerance = doc.at("tolerance").get<double>();
    return spec;
}

BenchSpec parse_bench_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_bench_spec(in);
}

namespace {

int thread_cap() {
    if (const char* env = std::getenv("HRCP_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) return cap;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

double gap_of(double span, double lb, double tolerance) {
    if (span - lb <= tolerance) return 0.0;  // certified (covers the 0/0 case)
    if (lb <= 0.0) return kInfinity;
    return (span - lb) / lb;
}

BenchRow run_cell(const BenchSpec& spec, const GenParams& params, const std::string& method) {
    BenchRow row;
    row.instance = "n" + std::to_string(params.n) + "_d" + std::to_string(params.d) + "_p" +
                   std::to_string(params.p) + "_s" + format_double(params.s) + "_seed" +
                   std::to_string(params.seed);
    row.n = params.n;
    row.d = params.d;
    row.p = params.p;
    row.s = params.s;
    row.seed = params.seed;
    row.method = method;

    const Instance instance = generate(params).instance;
    const auto started = std::chrono::steady_clock::now();
    if (method == "exact") {
        SolveLimits limits;
        limits.time_limit_s = spec.time_limit_s;
        limits.tolerance = spec.tolerance;
        const SolveOutcome outcome = solve(instance, params.p, limits);
        row.span = outcome.upper_bound;
        row.lb = outcome.lower_bound;
        row.iterations = 1;
        row.points_used = instance.n;
        row.status = to_string(outcome.status);
    } else {
        IncrementalConfig config;
        config.metric = *metric_from_string(method);
        config.metric_params = spec.metric_params;
        config.sub_limits.time_limit_s = spec.iter_time_limit_s;
        config.sub_limits.tolerance = spec.tolerance;
        config.time_budget_s = spec.time_limit_s;
        config.tolerance = spec.tolerance;
        const IncrementalResult result = run(instance, params.p, config);
        row.span = result.upper_bound;
        row.lb = result.lower_bound;
        row.iterations = result.iterations;
        row.points_used = result.points_used;
        row.status = to_string(result.status);
    }
    row.time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    row.gap = gap_of(row.span, row.lb, spec.tolerance);
    return row;
}

}  // namespace

BenchResult run_bench(const BenchSpec& spec) {
    struct Cell {
        GenParams params;
        std::string method;
    };
    std::vector<Cell> cells;
    for (int n : spec.n)
        for (int d : spec.d)
            for (int p : spec.p)
                for (double s : spec.s)
                    for (std::uint64_t seed : spec.seeds)
                        for (const auto& method : spec.methods)
                            cells.push_back({GenParams{d, n, p, s, seed}, method});

    BenchResult result;
    result.rows.resize(cells.size());
    std::mutex error_mutex;
    std::atomic<size_t> next{0};

    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
            try {
                result.rows[i] = run_cell(spec, cells[i].params, cells[i].method);
            } catch (const std::exception& e) {
                BenchRow& row = result.rows[i];
                const GenParams& g = cells[i].params;
                row.instance = "n" + std::to_string(g.n) + "_d" + std::to_string(g.d) + "_p" +
                               std::to_string(g.p) + "_s" + format_double(g.s) + "_seed" +
                               std::to_string(g.seed);
                row.n = g.n;
                row.d = g.d;
                row.p = g.p;
                row.s = g.s;
                row.seed = g.seed;
                row.method = cells[i].method;
                row.span = std::numeric_limits<double>::quiet_NaN();
                row.lb = std::numeric_limits<double>::quiet_NaN();
                row.gap = std::numeric_limits<double>::quiet_NaN();
                row.status = "Error";
                std::lock_guard<std::mutex> lock(error_mutex);
                result.errors.push_back(row.instance + " " + row.method + ": " + e.what());
            }
        }
    };

    const int threads = std::min<int>(thread_cap(), static_cast<int>(cells.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return result;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    out << "instance,n,d,p,s,seed,method,time_ms,span,lb,gap,iterations,points_used,status\n";
    for (const auto& row : rows) {
        out << row.instance << ',' << row.n << ',' << row.d << ',' << row.p << ','
            << format_double(row.s) << ',' << row.seed << ',' << row.method << ','
            << format_fixed(row.time_ms, 3) << ',' << format_double(row.span) << ','
            << format_double(row.lb) << ',' << format_double(row.gap) << ',' << row.iterations << ','
            << row.points_used << ',' << row.status << '\n';
    }
}

}  // namespace hrcp

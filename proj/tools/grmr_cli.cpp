// Command-line front end. Subcommands: generate, extremes, ipdg, solve,
// evaluate, oracle, bench. Every run prints (or writes) machine-readable
// JSON/CSV that embeds the full run configuration and all seeds, so a run is
// reproducible from its own output. Exit codes: 0 success, 2 configuration
// error, 3 interior-origin violation, 4 timeout.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "grmr/core.h"
#include "grmr/egrmr.h"
#include "grmr/extremes.h"
#include "grmr/hgrmr.h"
#include "grmr/io.h"
#include "grmr/ipdg.h"
#include "grmr/oracle.h"
#include "grmr/regret.h"
#include "grmr/rng.h"

namespace {

using nlohmann::json;

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// Distinct deterministic seed streams derived from the base seed, so dataset
// rows, graph sampling, and evaluation sampling never share raw draws.
constexpr std::uint64_t kIpdgStream = 0x49504447ULL;
constexpr std::uint64_t kEvalStream = 0x4556414cULL;

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return grmr::rng::mix64(base ^ grmr::rng::mix64(stream));
}

// ---- Shared dataset flags ---------------------------------------------------

struct DataFlags {
    std::string input;
    std::vector<std::string> columns;
    bool no_header = false;
    bool renormalize = false;
    std::string dist;
    int n = 0;
    int d = 0;
    std::uint64_t seed = 42;
};

void add_data_flags(CLI::App* cmd, DataFlags& f) {
    cmd->add_option("--input", f.input, "CSV dataset path ('#' lines ignored)");
    cmd->add_option("--columns", f.columns,
                    "Columns to keep, by header name or 0-based index")
        ->delimiter(',');
    cmd->add_flag("--no-header", f.no_header, "Treat the first CSV row as data");
    cmd->add_flag("--renormalize", f.renormalize,
                  "Min-max normalize file input onto [-1, 1] per column");
    cmd->add_option("--dist", f.dist, "Generate a dataset instead: normal | uniform")
        ->check(CLI::IsMember({"normal", "uniform"}));
    cmd->add_option("--n", f.n, "Generated row count");
    cmd->add_option("--d", f.d, "Generated column count");
    cmd->add_option("--seed", f.seed, "Base seed (default 42)");
}

grmr::Dataset load_data(const DataFlags& f, grmr::RunConfig& cfg) {
    cfg.input = f.input;
    cfg.distribution = f.dist;
    cfg.seed = f.seed;
    if (!f.input.empty() && !f.dist.empty())
        throw grmr::ConfigError("pass either --input or --dist, not both");
    if (!f.input.empty()) {
        grmr::Dataset ds = grmr::read_csv(f.input, f.columns, !f.no_header);
        if (f.renormalize) ds = grmr::normalize_dataset(ds);
        cfg.n = ds.n;
        cfg.d = ds.d;
        return ds;
    }
    if (f.dist.empty())
        throw grmr::ConfigError(
            "a dataset is required: --input FILE or --dist normal|uniform with --n/--d");
    if (f.n < 1 || f.d < 1)
        throw grmr::ConfigError("--dist needs --n >= 1 and --d >= 1");
    cfg.n = f.n;
    cfg.d = f.d;
    return f.dist == "normal" ? grmr::generate_normal(f.n, f.d, f.seed)
                              : grmr::generate_uniform(f.n, f.d, f.seed);
}

std::vector<int> compute_extremes(const grmr::Dataset& ds) {
    return ds.d == 2 ? grmr::extreme_points_2d(ds) : grmr::extreme_points_hd(ds);
}

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2);
    if (out_path.empty() || out_path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw grmr::ConfigError("cannot write output file: " + out_path);
    file << text << "\n";
    std::cout << "{\"written\": \"" << out_path << "\"}\n";
}

void require_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw grmr::ConfigError("--eps must lie strictly between 0 and 1, got " +
                                std::to_string(eps));
}

void reject_d1(const grmr::Dataset& ds) {
    if (ds.d == 1)
        throw grmr::ConfigError(
            "d = 1 needs no solver: the rows holding the column minimum and maximum "
            "are an exact zero-regret answer");
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
    DataFlags data;
    std::string out;
};

int run_generate(const GenerateArgs& a) {
    grmr::RunConfig cfg;
    cfg.command = "generate";
    cfg.output = a.out;
    if (a.data.dist.empty())
        throw grmr::ConfigError("generate needs --dist normal|uniform");
    if (a.out.empty()) throw grmr::ConfigError("generate needs --out FILE");
    const grmr::Dataset ds = load_data(a.data, cfg);
    grmr::write_csv(a.out, ds, {"config: " + cfg.to_json()});
    json j;
    j["config"] = json::parse(cfg.to_json());
    j["written"] = a.out;
    std::cout << j.dump(2) << "\n";
    return 0;
}

// ---- extremes ---------------------------------------------------------------

struct ExtremesArgs {
    DataFlags data;
    std::string out;
};

int run_extremes(const ExtremesArgs& a) {
    grmr::RunConfig cfg;
    cfg.command = "extremes";
    cfg.output = a.out;
    const grmr::Dataset ds = load_data(a.data, cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<int> xrows = compute_extremes(ds);
    const double wall = ms_since(t0);
    const grmr::InteriorReport interior = grmr::check_interior_origin(ds);
    json j;
    j["config"] = json::parse(cfg.to_json());
    j["extreme_count"] = xrows.size();
    j["rows"] = xrows;
    j["interior_origin"] = interior.ok;
    j["interior_check"] = interior.method;
    j["wall_ms"] = wall;
    if (!a.out.empty()) {
        grmr::save_extremes(a.out, xrows);
        j["written"] = a.out;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

// ---- ipdg -------------------------------------------------------------------

struct IpdgArgs {
    DataFlags data;
    long long m = 1000000;
    int k = 16;
    bool exact = false;
    std::string out;
};

int run_ipdg(const IpdgArgs& a) {
    grmr::RunConfig cfg;
    cfg.command = "ipdg";
    cfg.ipdg_m = a.m;
    cfg.ipdg_k = a.k;
    cfg.output = a.out;
    const grmr::Dataset ds = load_data(a.data, cfg);
    const std::vector<int> xrows = compute_extremes(ds);
    const auto t0 = std::chrono::steady_clock::now();
    grmr::IpdgGraph g;
    if (a.exact) {
        if (ds.d != 2)
            throw grmr::ConfigError("--exact builds the adjacency cycle and needs d == 2");
        g = grmr::ipdg_exact_2d(xrows);
    } else {
        g = grmr::ipdg_approx(ds, xrows, a.m, a.k, derive_seed(a.data.seed, kIpdgStream));
    }
    const double wall = ms_since(t0);
    json j;
    j["config"] = json::parse(cfg.to_json());
    j["graph"] = json::parse(g.to_json());
    j["edges"] = g.edge_count();
    j["extreme_rows"] = xrows;
    j["wall_ms"] = wall;
    if (!a.out.empty()) {
        grmr::save_ipdg(a.out, g);
        j["written"] = a.out;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

// ---- solve ------------------------------------------------------------------

struct SolveArgs {
    DataFlags data;
    double eps = -1.0;
    std::string method = "auto";  // auto | egrmr | hgrmr | reuse
    int r = 0;                    // dual-mode size budget
    long long m = 1000000;
    int k = 16;
    double eta_mult = 3.0;
    long long samples = 1000000;
    bool no_exact_eval = false;
    bool no_sampled_eval = false;
    double timeout_sec = 0.0;
    std::string out;
};

// Builds the graph the dominance step walks: the exact adjacency cycle in 2D,
// the sampled top-k graph otherwise.
grmr::IpdgGraph build_solver_ipdg(const grmr::Dataset& ds, const std::vector<int>& xrows,
                                  const SolveArgs& a) {
    if (ds.d == 2) return grmr::ipdg_exact_2d(xrows);
    return grmr::ipdg_approx(ds, xrows, a.m, a.k, derive_seed(a.data.seed, kIpdgStream));
}

void attach_evaluations(json& j, const grmr::Dataset& ds, const std::vector<int>& rows,
                        const std::vector<int>& xrows, const SolveArgs& a) {
    if (!a.no_exact_eval) {
        const grmr::RegretReport exact = grmr::exact_max_regret(ds, rows, xrows);
        j["exact_max_regret"] = json::parse(exact.to_json());
    }
    if (!a.no_sampled_eval) {
        const std::uint64_t eval_seed = derive_seed(a.data.seed, kEvalStream);
        const grmr::RegretReport sampled =
            grmr::estimate_max_regret(ds, rows, xrows, a.samples, eval_seed);
        json s = json::parse(sampled.to_json());
        s["seed"] = eval_seed;
        j["sampled_max_regret"] = s;
    }
}

int run_solve(const SolveArgs& a) {
    grmr::RunConfig cfg;
    cfg.command = "solve";
    cfg.method = a.method;
    cfg.r = a.r;
    cfg.ipdg_m = a.m;
    cfg.ipdg_k = a.k;
    cfg.eta_multiplier = a.eta_mult;
    cfg.eval_samples = a.samples;
    cfg.output = a.out;
    if (a.r < 0) throw grmr::ConfigError("--r must be positive");
    if (a.r == 0) {
        if (a.eps < 0.0)
            throw grmr::ConfigError("solve needs --eps (or --r for the dual problem)");
        require_eps(a.eps);
        cfg.eps_list = {a.eps};
    }
    const grmr::Dataset ds = load_data(a.data, cfg);
    reject_d1(ds);

    const auto t0 = std::chrono::steady_clock::now();
    json j;
    std::vector<int> rows;
    std::vector<int> xrows;

    if (a.r > 0) {
        // Dual problem: smallest regret level fitting the size budget.
        cfg.method = "dual";
        xrows = compute_extremes(ds);
        const auto ti = std::chrono::steady_clock::now();
        const grmr::IpdgGraph g = build_solver_ipdg(ds, xrows, a);
        const double ipdg_ms = ms_since(ti);
        const grmr::DualResult dual = grmr::dual_min_regret(ds, xrows, g, a.r);
        rows = dual.rows;
        j["method"] = dual.method;
        j["ok"] = dual.ok;
        j["epsilon"] = dual.epsilon;
        j["size"] = rows.size();
        j["rows"] = rows;
        j["phase_ms"] = {{"ipdg", ipdg_ms}, {"search", dual.wall_ms}};
        if (!dual.ok) j["note"] = "no level within the search cap met the budget";
    } else {
        std::string method = a.method;
        if (method == "auto") method = ds.d == 2 ? "egrmr" : "hgrmr";
        if (method == "egrmr") {
            if (ds.d != 2)
                throw grmr::ConfigError("egrmr is the exact 2D solver; use hgrmr for d >= 3");
            const grmr::Egrmr2dResult res = grmr::egrmr(ds, a.eps);
            rows = res.rows;
            xrows = grmr::extreme_points_2d(ds);
            j["method"] = "egrmr";
            j["result"] = json::parse(res.to_json());
            j["size"] = rows.size();
            j["rows"] = rows;
        } else if (method == "hgrmr" || method == "reuse") {
            xrows = compute_extremes(ds);
            const auto ti = std::chrono::steady_clock::now();
            const grmr::IpdgGraph g = build_solver_ipdg(ds, xrows, a);
            const double ipdg_ms = ms_since(ti);
            grmr::HgrmrResult res;
            if (method == "reuse") {
                const double eta = std::min(a.eta_mult * a.eps, 0.99);
                if (eta < a.eps)
                    throw grmr::ConfigError("--eta-mult must be at least 1");
                res = grmr::hgrmr_reuse(ds, xrows, g, a.eps, eta);
            } else {
                res = grmr::hgrmr(ds, xrows, g, a.eps);
            }
            rows = res.rows;
            j["method"] = method;
            j["result"] = json::parse(res.to_json());
            j["ipdg"] = json::parse(g.to_json());
            j["ipdg_ms"] = ipdg_ms;
            j["size"] = rows.size();
            j["rows"] = rows;
        } else {
            throw grmr::ConfigError("unknown --method '" + method +
                                    "' (want auto, egrmr, hgrmr, or reuse)");
        }
        attach_evaluations(j, ds, rows, xrows, a);
    }

    const double wall = ms_since(t0);
    j["wall_ms"] = wall;
    j["config"] = json::parse(cfg.to_json());
    const bool timed_out = a.timeout_sec > 0.0 && wall > a.timeout_sec * 1000.0;
    j["timed_out"] = timed_out;
    emit(j, a.out);
    return timed_out ? 4 : 0;
}

// ---- evaluate ---------------------------------------------------------------

struct EvaluateArgs {
    DataFlags data;
    std::vector<int> rows;
    std::string rows_file;
    std::string extremes_file;
    long long samples = 1000000;
    bool no_exact = false;
    std::string out;
};

std::vector<int> read_rows_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw grmr::ConfigError("cannot open rows file: " + path);
    std::vector<int> rows;
    std::string line;
    while (std::getline(file, line)) {
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        try {
            rows.push_back(std::stoi(line));
        } catch (const std::exception&) {
            throw grmr::ConfigError("rows file " + path + ": not an index: '" + line + "'");
        }
    }
    return rows;
}

int run_evaluate(const EvaluateArgs& a) {
    grmr::RunConfig cfg;
    cfg.command = "evaluate";
    cfg.eval_samples = a.samples;
    cfg.output = a.out;
    if (a.rows.empty() == a.rows_file.empty())
        throw grmr::ConfigError("evaluate needs exactly one of --rows or --rows-file");
    const grmr::Dataset ds = load_data(a.data, cfg);
    std::vector<int> rows = a.rows.empty() ? read_rows_file(a.rows_file) : a.rows;
    if (rows.empty()) throw grmr::ConfigError("the subset to evaluate is empty");
    std::vector<int> sorted = rows;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw grmr::ConfigError("duplicate row index in the subset");
    for (int r : rows)
        if (r < 0 || r >= ds.n)
            throw grmr::ConfigError("row index " + std::to_string(r) +
                                    " outside [0, " + std::to_string(ds.n) + ")");
    const std::vector<int> xrows = a.extremes_file.empty()
                                       ? compute_extremes(ds)
                                       : grmr::load_extremes(a.extremes_file, ds);
    json j;
    j["config"] = json::parse(cfg.to_json());
    j["rows"] = rows;
    j["size"] = rows.size();
    j["reference_count"] = xrows.size();
    if (!a.no_exact) {
        const grmr::RegretReport exact = grmr::exact_max_regret(ds, rows, xrows);
        j["exact_max_regret"] = json::parse(exact.to_json());
    }
    const std::uint64_t eval_seed = derive_seed(a.data.seed, kEvalStream);
    const grmr::RegretReport sampled =
        grmr::estimate_max_regret(ds, rows, xrows, a.samples, eval_seed);
    json s = json::parse(sampled.to_json());
    s["seed"] = eval_seed;
    j["sampled_max_regret"] = s;
    emit(j, a.out);
    return 0;
}

// ---- oracle -----------------------------------------------------------------

struct OracleArgs {
    DataFlags data;
    double eps = -1.0;
    long long max_subsets = 2000000;
    std::string out;
};

int run_oracle(const OracleArgs& a) {
    grmr::RunConfig cfg;
    cfg.command = "oracle";
    cfg.output = a.out;
    if (a.eps < 0.0) throw grmr::ConfigError("oracle needs --eps");
    require_eps(a.eps);
    cfg.eps_list = {a.eps};
    const grmr::Dataset ds = load_data(a.data, cfg);
    reject_d1(ds);
    const auto t0 = std::chrono::steady_clock::now();
    const grmr::OracleResult res = grmr::brute_force_grmr(ds, a.eps, a.max_subsets);
    json j;
    j["config"] = json::parse(cfg.to_json());
    j["oracle"] = json::parse(res.to_json());
    j["wall_ms"] = ms_since(t0);
    emit(j, a.out);
    return 0;
}

// ---- bench ------------------------------------------------------------------

// The grid axes arrive as comma-separated strings so an explicitly empty
// list ("") can express an empty grid, which is not a parse error.
struct BenchArgs {
    std::string dist_list = "normal";
    std::string n_list = "1000";
    std::string d_list = "2";
    std::string eps_list = "0.1";
    std::string k_list = "16";
    std::string seed_list = "42";
    std::string method_list = "auto";
    long long m = 1000000;
    long long samples = 1000000;
    bool exact_eval = false;
    double timeout_sec = 0.0;
    int cell_workers = 1;
    std::string out;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string tok;
    std::stringstream ss(s);
    while (std::getline(ss, tok, ',')) {
        const auto a = tok.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        const auto b = tok.find_last_not_of(" \t");
        out.push_back(tok.substr(a, b - a + 1));
    }
    return out;
}

template <typename T, typename Fn>
std::vector<T> parse_list(const std::string& flag, const std::string& s, Fn convert) {
    std::vector<T> out;
    for (const std::string& tok : split_list(s)) {
        try {
            out.push_back(convert(tok));
        } catch (const std::exception&) {
            throw grmr::ConfigError(flag + ": not a number: '" + tok + "'");
        }
    }
    return out;
}

struct BenchCell {
    std::string dist;
    int n = 0;
    int d = 0;
    std::string method;
    double eps = 0.0;
    int k = 0;
    std::uint64_t seed = 0;
};

struct BenchRow {
    std::string status = "ok";
    long long size = -1;
    double exact = std::nan("");
    double sampled = std::nan("");
    double wall_ms = 0.0;
};

BenchRow run_bench_cell(const BenchCell& c, const BenchArgs& a) {
    BenchRow row;
    try {
        const grmr::Dataset ds = c.dist == "normal"
                                     ? grmr::generate_normal(c.n, c.d, c.seed)
                                     : grmr::generate_uniform(c.n, c.d, c.seed);
        const std::string& method = c.method;
        if (method == "egrmr" && c.d != 2) {
            row.status = "skipped";
            return row;
        }
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<int> rows;
        std::vector<int> xrows;
        if (method == "egrmr") {
            grmr::Egrmr2dOptions opt;
            opt.verify = false;
            rows = grmr::egrmr(ds, c.eps, opt).rows;
            xrows = grmr::extreme_points_2d(ds);
        } else {
            xrows = compute_extremes(ds);
            const grmr::IpdgGraph g =
                c.d == 2 ? grmr::ipdg_exact_2d(xrows)
                         : grmr::ipdg_approx(ds, xrows, a.m, c.k,
                                             derive_seed(c.seed, kIpdgStream));
            rows = method == "reuse" ? grmr::hgrmr_reuse(ds, xrows, g, c.eps).rows
                                     : grmr::hgrmr(ds, xrows, g, c.eps).rows;
        }
        row.wall_ms = ms_since(t0);
        row.size = static_cast<long long>(rows.size());
        // The cell ran to completion; the timeout is applied to the measured
        // solver time afterwards, so late results are marked, not discarded.
        if (a.timeout_sec > 0.0 && row.wall_ms > a.timeout_sec * 1000.0)
            row.status = "timeout";
        if (a.exact_eval)
            row.exact = grmr::exact_max_regret(ds, rows, xrows).value;
        if (a.samples > 0)
            row.sampled = grmr::estimate_max_regret(ds, rows, xrows, a.samples,
                                                    derive_seed(c.seed, kEvalStream))
                              .value;
    } catch (const grmr::ConditionError&) {
        row.status = "condition";
    } catch (const grmr::ConfigError&) {
        row.status = "config";
    } catch (const std::exception&) {
        row.status = "error";
    }
    return row;
}

std::string csv_num(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

int run_bench(const BenchArgs& a) {
    const std::vector<std::string> dists = split_list(a.dist_list);
    const std::vector<std::string> methods = split_list(a.method_list);
    const std::vector<int> ns =
        parse_list<int>("--n-list", a.n_list, [](const std::string& s) { return std::stoi(s); });
    const std::vector<int> ds =
        parse_list<int>("--d-list", a.d_list, [](const std::string& s) { return std::stoi(s); });
    const std::vector<double> epss = parse_list<double>(
        "--eps-list", a.eps_list, [](const std::string& s) { return std::stod(s); });
    const std::vector<int> ks =
        parse_list<int>("--k-list", a.k_list, [](const std::string& s) { return std::stoi(s); });
    const std::vector<std::uint64_t> seeds = parse_list<std::uint64_t>(
        "--seed-list", a.seed_list, [](const std::string& s) { return std::stoull(s); });
    for (const std::string& d : dists)
        if (d != "normal" && d != "uniform")
            throw grmr::ConfigError("--dist-list entries must be normal or uniform");
    for (const std::string& m : methods)
        if (m != "auto" && m != "egrmr" && m != "hgrmr" && m != "reuse")
            throw grmr::ConfigError("--method-list entries must be auto, egrmr, hgrmr, or reuse");
    for (double e : epss) require_eps(e);
    if (a.cell_workers < 1) throw grmr::ConfigError("--cell-workers must be >= 1");

    // Grid order: dist, n, d, method, eps, k, seed (innermost fastest).
    std::vector<BenchCell> cells;
    for (const std::string& dist : dists)
        for (int n : ns)
            for (int d : ds)
                for (const std::string& method : methods) {
                    // Resolve "auto" here so the CSV names the solver that ran.
                    const std::string resolved =
                        method == "auto" ? (d == 2 ? "egrmr" : "hgrmr") : method;
                    for (double eps : epss)
                        for (int k : ks)
                            for (std::uint64_t seed : seeds)
                                cells.push_back({dist, n, d, resolved, eps, k, seed});
                }

    std::vector<BenchRow> rows(cells.size());
    const int workers =
        std::max(1, std::min<int>(a.cell_workers, static_cast<int>(cells.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) rows[i] = run_bench_cell(cells[i], a);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells.size();
                     i = next.fetch_add(1))
                    rows[i] = run_bench_cell(cells[i], a);
            });
        for (auto& t : pool) t.join();
    }

    json grid;
    grid["command"] = "bench";
    grid["dist_list"] = dists;
    grid["n_list"] = ns;
    grid["d_list"] = ds;
    grid["method_list"] = methods;
    grid["eps_list"] = epss;
    grid["k_list"] = ks;
    grid["seed_list"] = seeds;
    grid["ipdg_m"] = a.m;
    grid["eval_samples"] = a.samples;
    grid["exact_eval"] = a.exact_eval;
    grid["timeout_sec"] = a.timeout_sec;
    grid["cell_workers"] = a.cell_workers;

    std::ostringstream csv;
    csv << "# config: " << grid.dump() << "\n";
    csv << "method,distribution,n,d,eps,k,seed,size,exact_regret,sampled_regret,"
           "wall_ms,status\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const BenchCell& c = cells[i];
        const BenchRow& r = rows[i];
        csv << c.method << ',' << c.dist << ',' << c.n << ',' << c.d << ',' << c.eps
            << ',' << c.k << ',' << c.seed << ','
            << (r.size < 0 ? "" : std::to_string(r.size)) << ',' << csv_num(r.exact)
            << ',' << csv_num(r.sampled) << ',' << csv_num(r.wall_ms) << ',' << r.status
            << "\n";
    }
    if (a.out.empty() || a.out == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream file(a.out);
        if (!file) throw grmr::ConfigError("cannot write output file: " + a.out);
        file << csv.str();
        std::cout << "{\"written\": \"" << a.out << "\", \"rows\": " << cells.size()
                  << "}\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-size regret-set solver for linear rankings"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: GRMR_THREADS or hardware)");

    GenerateArgs gen;
    CLI::App* cmd_gen = app.add_subcommand("generate", "Write a synthetic dataset CSV");
    cmd_gen->fallthrough();
    add_data_flags(cmd_gen, gen.data);
    cmd_gen->add_option("--out", gen.out, "Output CSV path");

    ExtremesArgs ext;
    CLI::App* cmd_ext = app.add_subcommand("extremes", "Compute the extreme rows");
    cmd_ext->fallthrough();
    add_data_flags(cmd_ext, ext.data);
    cmd_ext->add_option("--out", ext.out, "Write one row index per line");

    IpdgArgs ipdg;
    CLI::App* cmd_ipdg =
        app.add_subcommand("ipdg", "Build the sampled top-k adjacency graph");
    cmd_ipdg->fallthrough();
    add_data_flags(cmd_ipdg, ipdg.data);
    cmd_ipdg->add_option("--m", ipdg.m, "Sampled directions (default 1e6)");
    cmd_ipdg->add_option("--k", ipdg.k, "Neighborhood size per sample (default 16)");
    cmd_ipdg->add_flag("--exact", ipdg.exact, "Exact adjacency cycle (2D only)");
    cmd_ipdg->add_option("--out", ipdg.out, "Graph file path");

    SolveArgs solve;
    CLI::App* cmd_solve = app.add_subcommand("solve", "Find a small subset within --eps");
    cmd_solve->fallthrough();
    add_data_flags(cmd_solve, solve.data);
    cmd_solve->add_option("--eps", solve.eps, "Target worst-case regret, in (0, 1)");
    cmd_solve->add_option("--method", solve.method,
                          "auto | egrmr (exact 2D) | hgrmr | reuse")
        ->check(CLI::IsMember({"auto", "egrmr", "hgrmr", "reuse"}));
    cmd_solve->add_option("--r", solve.r,
                          "Dual mode: smallest regret level with at most r rows");
    cmd_solve->add_option("--m", solve.m, "Graph sampling directions (d >= 3)");
    cmd_solve->add_option("--k", solve.k, "Graph neighborhood size (d >= 3)");
    cmd_solve->add_option("--eta-mult", solve.eta_mult,
                          "reuse: build level as a multiple of eps (default 3)");
    cmd_solve->add_option("--samples", solve.samples, "Sampled evaluation directions");
    cmd_solve->add_flag("--no-exact-eval", solve.no_exact_eval,
                        "Skip the exact regret evaluation of the result");
    cmd_solve->add_flag("--no-sampled-eval", solve.no_sampled_eval,
                        "Skip the sampled regret evaluation of the result");
    cmd_solve->add_option("--timeout-sec", solve.timeout_sec,
                          "Mark the run timed out past this wall time");
    cmd_solve->add_option("--out", solve.out, "Write the result JSON here");

    EvaluateArgs eval;
    CLI::App* cmd_eval =
        app.add_subcommand("evaluate", "Measure the regret of a given subset");
    cmd_eval->fallthrough();
    add_data_flags(cmd_eval, eval.data);
    cmd_eval->add_option("--rows", eval.rows, "Subset row indices")->delimiter(',');
    cmd_eval->add_option("--rows-file", eval.rows_file, "File with one row index per line");
    cmd_eval->add_option("--extremes-file", eval.extremes_file,
                         "Precomputed extreme rows (validated on load)");
    cmd_eval->add_option("--samples", eval.samples, "Sampled evaluation directions");
    cmd_eval->add_flag("--no-exact", eval.no_exact, "Skip the exact evaluation");
    cmd_eval->add_option("--out", eval.out, "Write the report JSON here");

    OracleArgs oracle;
    CLI::App* cmd_oracle =
        app.add_subcommand("oracle", "Exhaustive smallest subset (small inputs)");
    cmd_oracle->fallthrough();
    add_data_flags(cmd_oracle, oracle.data);
    cmd_oracle->add_option("--eps", oracle.eps, "Target worst-case regret, in (0, 1)");
    cmd_oracle->add_option("--max-subsets", oracle.max_subsets,
                           "Evaluation budget before giving up");
    cmd_oracle->add_option("--out", oracle.out, "Write the result JSON here");

    BenchArgs bench;
    CLI::App* cmd_bench = app.add_subcommand("bench", "Run a parameter grid, emit CSV");
    cmd_bench->fallthrough();
    // Comma-separated values; an explicitly empty list ("") empties the grid.
    cmd_bench->add_option("--dist-list", bench.dist_list, "normal,uniform");
    cmd_bench->add_option("--n-list", bench.n_list, "Row counts");
    cmd_bench->add_option("--d-list", bench.d_list, "Dimensions");
    cmd_bench->add_option("--eps-list", bench.eps_list, "Regret targets");
    cmd_bench->add_option("--k-list", bench.k_list, "Graph neighborhood sizes");
    cmd_bench->add_option("--seed-list", bench.seed_list, "Dataset seeds");
    cmd_bench->add_option("--method-list", bench.method_list, "auto,egrmr,hgrmr,reuse");
    cmd_bench->add_option("--m", bench.m, "Graph sampling directions (d >= 3)");
    cmd_bench->add_option("--samples", bench.samples,
                          "Sampled evaluation directions (0 disables)");
    cmd_bench->add_flag("--exact-eval", bench.exact_eval,
                        "Also run the exact evaluator per cell");
    cmd_bench->add_option("--timeout-sec", bench.timeout_sec,
                          "Per-cell wall-time budget; late cells are marked");
    cmd_bench->add_option("--cell-workers", bench.cell_workers,
                          "Grid cells run in this many worker threads");
    cmd_bench->add_option("--out", bench.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (threads > 0) {
        const std::string v = std::to_string(threads);
        setenv("GRMR_THREADS", v.c_str(), 1);
    }

    try {
        if (cmd_gen->parsed()) return run_generate(gen);
        if (cmd_ext->parsed()) return run_extremes(ext);
        if (cmd_ipdg->parsed()) return run_ipdg(ipdg);
        if (cmd_solve->parsed()) return run_solve(solve);
        if (cmd_eval->parsed()) return run_evaluate(eval);
        if (cmd_oracle->parsed()) return run_oracle(oracle);
        if (cmd_bench->parsed()) return run_bench(bench);
    } catch (const grmr::ConditionError& e) {
        json err{{"error", "interior-origin"}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        std::cerr << "interior-origin violation: " << e.what() << "\n";
        return 3;
    } catch (const grmr::ConfigError& e) {
        json err{{"error", "config"}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "miqp/miqp.hpp"

namespace fs = std::filesystem;

namespace {

struct SolveFlags {
    double tol = 1e-5;
    double time_limit = 0.0;
    double initial_ub = 1e30;
    bool no_warmstart = false;
    bool no_early_pruning = false;

    miqp::MiqpOptions options() const {
        miqp::MiqpOptions opts;
        opts.tol = tol;
        opts.time_limit = time_limit;
        opts.initial_ub = initial_ub;
        opts.warmstart = !no_warmstart;
        opts.early_pruning = !no_early_pruning;
        return opts;
    }

    miqp::ResultParams params() const {
        return {tol, time_limit, initial_ub, !no_warmstart, !no_early_pruning};
    }
};

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_ms(double seconds) {  // wall-clock with 1 ms resolution
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", seconds);
    return buf;
}

int run_generate(std::size_t n, std::size_t n1, std::size_t m, const std::string& kind,
                 int count, std::uint64_t seed, const std::string& out_dir, double min_eig) {
    if (n1 > n) {
        std::cerr << "error: --n1 must not exceed --n\n";
        return 1;
    }
    if (kind != "a" && kind != "b") {
        std::cerr << "error: --kind must be 'a' or 'b'\n";
        return 1;
    }
    fs::create_directories(out_dir);
    for (int i = 0; i < count; ++i) {
        miqp::GenSpec spec;
        spec.n = n;
        spec.n1 = n1;
        spec.m = m;
        spec.kind = kind == "a" ? miqp::GenSpec::Kind::A : miqp::GenSpec::Kind::B;
        spec.seed = seed + static_cast<std::uint64_t>(i);
        spec.min_eig = min_eig;
        const miqp::GeneratedInstance gen = miqp::generate(spec);
        char name[128];
        std::snprintf(name, sizeof(name), "miqp_n%zu_n1_%zu_m%zu_%s_s%llu.miqp", n, n1, m,
                      kind.c_str(), static_cast<unsigned long long>(spec.seed));
        const fs::path path = fs::path(out_dir) / name;
        miqp::write_instance(path.string(), gen.instance, gen.meta);
        std::cout << path.string() << "\n";
    }
    return 0;
}

void print_summary(const miqp::MiqpResult& res) {
    std::cout << "status        " << miqp::to_string(res.status) << "\n";
    if (res.status != miqp::MiqpStatus::Infeasible) {
        std::cout << "value         " << fmt_g(res.value) << "\n";
        std::cout << "x             ";
        for (std::size_t i = 0; i < res.x.size(); ++i)
            std::cout << fmt_g(res.x[i]) << (i + 1 < res.x.size() ? ' ' : '\n');
        if (res.x.empty()) std::cout << "\n";
    }
    std::cout << "nodes         " << res.nodes << "\n";
    std::cout << "it root       " << res.it_root << "\n";
    std::cout << "it/node mean  " << fmt_g(res.it_per_node_mean) << "\n";
    std::cout << "ptime         " << fmt_ms(res.preprocess_seconds) << " s\n";
    std::cout << "time          " << fmt_ms(res.solve_seconds) << " s\n";
    std::cout << "max violation " << fmt_g(res.max_constraint_violation) << "\n";
}

int run_solve(const std::string& instance_path, const SolveFlags& flags,
              const std::string& out_path) {
    const miqp::Instance inst = miqp::read_instance(instance_path);
    const miqp::MiqpResult res = miqp::solve_miqp(inst, flags.options());
    print_summary(res);
    if (!out_path.empty()) miqp::write_result(out_path, res, flags.params());
    switch (res.status) {
        case miqp::MiqpStatus::Optimal: return 0;
        case miqp::MiqpStatus::Infeasible: return 2;
        case miqp::MiqpStatus::TimeLimit: return 3;
    }
    return 1;
}

struct BenchRow {
    std::string instance;
    std::string config;
    std::size_t n = 0, n1 = 0, m = 0;
    std::string kind;
    miqp::MiqpStatus status = miqp::MiqpStatus::Infeasible;
    double value = 0.0;
    long long nodes = 0;
    long long it_root = 0;
    double it_mean = 0.0;
    double ptime = 0.0;
    double time = 0.0;
};

miqp::MiqpOptions config_options(const std::string& name, const SolveFlags& flags) {
    miqp::MiqpOptions opts = flags.options();
    if (name == "default") return opts;
    if (name == "no-warmstart") {
        opts.warmstart = false;
        return opts;
    }
    if (name == "no-pruning") {
        opts.early_pruning = false;
        return opts;
    }
    throw miqp::ParseError("unknown config '" + name + "' (expected default, no-warmstart, no-pruning)");
}

int run_bench(const std::string& dir, const SolveFlags& flags, const std::string& out_csv,
              const std::string& profile_csv, const std::string& configs_arg) {
    std::vector<std::string> configs;
    {
        std::string cur;
        for (char ch : configs_arg + ",") {
            if (ch == ',') {
                if (!cur.empty()) configs.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
    }
    if (configs.empty()) configs.push_back("default");

    std::vector<fs::path> files;
    if (fs::is_directory(dir))
        for (const auto& e : fs::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == ".miqp") files.push_back(e.path());
    if (files.empty()) {
        std::cerr << "error: no .miqp instances in '" << dir << "'\n";
        return 1;
    }
    std::sort(files.begin(), files.end());

    std::vector<BenchRow> rows;
    for (const fs::path& f : files) {
        const miqp::Instance inst = miqp::read_instance(f.string());
        const auto meta = miqp::read_instance_meta(f.string());
        for (const std::string& cfg_name : configs) {
            const miqp::MiqpResult res = miqp::solve_miqp(inst, config_options(cfg_name, flags));
            BenchRow row;
            row.instance = f.filename().string();
            row.config = cfg_name;
            row.n = inst.n;
            row.n1 = inst.n1;
            row.m = inst.num_constraints();
            row.kind = meta ? (meta->kind == miqp::GenSpec::Kind::A ? "a" : "b") : "-";
            row.status = res.status;
            row.value = res.value;
            row.nodes = res.nodes;
            row.it_root = res.it_root;
            row.it_mean = res.it_per_node_mean;
            row.ptime = res.preprocess_seconds;
            row.time = res.solve_seconds;
            rows.push_back(std::move(row));
        }
    }

    std::ofstream out(out_csv);
    if (!out) {
        std::cerr << "error: cannot write '" << out_csv << "'\n";
        return 1;
    }
    out << "instance,n,n1,m,kind,status,value,nodes,it_root,it_mean,ptime,time";
    if (configs.size() > 1) out << ",config";
    out << "\n";
    for (const BenchRow& r : rows) {
        out << r.instance << ',' << r.n << ',' << r.n1 << ',' << r.m << ',' << r.kind << ','
            << miqp::to_string(r.status) << ','
            << (r.status == miqp::MiqpStatus::Infeasible ? "" : fmt_g(r.value)) << ',' << r.nodes
            << ',' << r.it_root << ',' << fmt_g(r.it_mean) << ',' << fmt_ms(r.ptime) << ','
            << fmt_ms(r.time);
        if (configs.size() > 1) out << ',' << r.config;
        out << "\n";
    }

    // per-config means over the instances each config solved
    for (const std::string& cfg_name : configs) {
        double time_sum = 0.0, nodes_sum = 0.0, it_sum = 0.0;
        int solved = 0, unsolved = 0;
        for (const BenchRow& r : rows) {
            if (r.config != cfg_name) continue;
            if (r.status == miqp::MiqpStatus::TimeLimit) {
                ++unsolved;
                continue;
            }
            ++solved;
            time_sum += r.time;
            nodes_sum += static_cast<double>(r.nodes);
            it_sum += r.it_mean;
        }
        std::cout << cfg_name << ": solved " << solved << "/" << (solved + unsolved);
        if (solved > 0)
            std::cout << ", mean time " << fmt_ms(time_sum / solved) << " s, mean nodes "
                      << fmt_g(nodes_sum / solved) << ", mean it/node " << fmt_g(it_sum / solved);
        std::cout << "\n";
    }

    if (!profile_csv.empty() && configs.size() >= 2) {
        // Dolan-More performance profile over instances solved by every config
        std::map<std::string, std::map<std::string, double>> times;  // instance -> config -> time
        for (const BenchRow& r : rows)
            if (r.status != miqp::MiqpStatus::TimeLimit) times[r.instance][r.config] = r.time;
        std::vector<std::string> solved_by_all;
        for (const auto& [inst_name, per_cfg] : times)
            if (per_cfg.size() == configs.size()) solved_by_all.push_back(inst_name);

        std::map<std::string, std::vector<double>> ratios;
        std::vector<double> taus;
        for (const std::string& inst_name : solved_by_all) {
            const auto& per_cfg = times[inst_name];
            double tmin = std::numeric_limits<double>::infinity();
            for (const auto& [cfg_name, t] : per_cfg) tmin = std::min(t, tmin);
            tmin = std::max(tmin, 1e-9);
            for (const std::string& cfg_name : configs) {
                const double ratio = std::max(per_cfg.at(cfg_name), 1e-9) / tmin;
                ratios[cfg_name].push_back(ratio);
                taus.push_back(ratio);
            }
        }
        std::sort(taus.begin(), taus.end());
        taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

        std::ofstream pout(profile_csv);
        if (!pout) {
            std::cerr << "error: cannot write '" << profile_csv << "'\n";
            return 1;
        }
        pout << "config,tau,rho\n";
        const double total = static_cast<double>(solved_by_all.size());
        for (const std::string& cfg_name : configs) {
            std::vector<double>& rs = ratios[cfg_name];
            std::sort(rs.begin(), rs.end());
            for (double tau : taus) {
                const auto cnt = std::upper_bound(rs.begin(), rs.end(), tau) - rs.begin();
                pout << cfg_name << ',' << fmt_g(tau) << ','
                     << fmt_g(total > 0 ? static_cast<double>(cnt) / total : 0.0) << "\n";
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convex MIQP solver: dual active-set bounds in depth-first branch and bound"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate random instances");
    std::size_t g_n = 0, g_n1 = 0, g_m = 0;
    std::string g_kind = "a";
    int g_count = 1;
    std::uint64_t g_seed = 0;
    std::string g_out_dir = ".";
    double g_min_eig = 0.0;
    gen->add_option("--n", g_n, "total variables")->required();
    gen->add_option("--n1", g_n1, "integer variables (first n1 indices)")->required();
    gen->add_option("--m", g_m, "constraints")->required();
    gen->add_option("--kind", g_kind, "constraint kind: a (U[-1,1]) or b (knapsack-like)");
    gen->add_option("--count", g_count, "number of instances");
    gen->add_option("--seed", g_seed, "seed of the first instance; later ones use seed+1, ...");
    gen->add_option("--out-dir", g_out_dir, "output directory");
    gen->add_option("--min-eig", g_min_eig, "optional spectrum floor for Q (default off)");

    // solve
    auto* solve = app.add_subcommand("solve", "Solve one instance");
    std::string s_instance, s_out;
    SolveFlags s_flags;
    solve->add_option("--instance", s_instance, "instance file")->required();
    solve->add_option("--tol", s_flags.tol, "dual optimality tolerance");
    solve->add_option("--time-limit", s_flags.time_limit, "wall-clock limit in seconds (0 = none)");
    solve->add_option("--initial-ub", s_flags.initial_ub, "initial upper bound (incumbent to beat)");
    solve->add_flag("--no-warmstart", s_flags.no_warmstart, "cold-start every node");
    solve->add_flag("--no-early-pruning", s_flags.no_early_pruning,
                    "solve every node relaxation to optimality");
    solve->add_option("--out", s_out, "write the result as JSON");

    // bench
    auto* bench = app.add_subcommand("bench", "Solve a directory of instances, write CSV");
    std::string b_dir, b_out = "bench.csv", b_profile, b_configs = "default";
    SolveFlags b_flags;
    bench->add_option("--dir", b_dir, "directory with .miqp files")->required();
    bench->add_option("--time-limit", b_flags.time_limit, "per-instance limit in seconds");
    bench->add_option("--tol", b_flags.tol, "dual optimality tolerance");
    bench->add_option("--out", b_out, "results CSV path");
    bench->add_option("--profile-out", b_profile,
                      "performance-profile CSV (needs at least two configs)");
    bench->add_option("--configs", b_configs,
                      "comma list from: default, no-warmstart, no-pruning");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return run_generate(g_n, g_n1, g_m, g_kind, g_count, g_seed, g_out_dir, g_min_eig);
        if (solve->parsed()) return run_solve(s_instance, s_flags, s_out);
        if (bench->parsed()) return run_bench(b_dir, b_flags, b_out, b_profile, b_configs);
    } catch (const miqp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const miqp::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through the C API.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orthoreflect/orthoreflect.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotContinuable = 2;
constexpr int kExitFailure = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(orf_status s, const char* what)
{
    if (s != ORF_OK) {
        std::string msg = std::string(what) + ": " + orf_status_name(s);
        const std::string detail = orf_last_error();
        if (!detail.empty()) {
            msg += " (" + detail + ")";
        }
        if (s == ORF_ERR_CONFIG || s == ORF_ERR_NEGATIVE_ENTRY || s == ORF_ERR_NON_SQUARE
            || s == ORF_ERR_NONZERO_DIAGONAL || s == ORF_ERR_DIMENSION) {
            throw UsageError(msg);
        }
        throw ApiError(msg);
    }
}

struct MatrixDeleter {
    void operator()(orf_matrix* q) const { orf_matrix_destroy(q); }
};
struct ConfigDeleter {
    void operator()(orf_config* c) const { orf_config_destroy(c); }
};
struct CurvesDeleter {
    void operator()(orf_curves* c) const { orf_curves_destroy(c); }
};
using MatrixPtr = std::unique_ptr<orf_matrix, MatrixDeleter>;
using ConfigPtr = std::unique_ptr<orf_config, ConfigDeleter>;
using CurvesPtr = std::unique_ptr<orf_curves, CurvesDeleter>;

std::vector<double> parse_row(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw UsageError("cannot parse number '" + item + "'");
        }
        if (item.find_first_not_of(" \t", pos) != std::string::npos) {
            throw UsageError("cannot parse number '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw UsageError("empty vector '" + text + "'");
    }
    return out;
}

// "a,b;c,d" -> rows. Rows may also be separated by newlines (matrix files).
std::vector<std::vector<double>> parse_matrix(std::string text)
{
    for (char& ch : text) {
        if (ch == '\n') {
            ch = ';';
        } else if (ch == ' ' || ch == '\t') {
            ch = ',';
        }
    }
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        // collapse repeated separators left by whitespace
        std::string clean;
        for (char ch : row) {
            if (ch == ',' && (clean.empty() || clean.back() == ',')) {
                continue;
            }
            clean.push_back(ch);
        }
        while (!clean.empty() && clean.back() == ',') {
            clean.pop_back();
        }
        if (!clean.empty()) {
            rows.push_back(parse_row(clean));
        }
    }
    return rows;
}

MatrixPtr make_matrix(const std::vector<std::vector<double>>& rows)
{
    const std::size_t n = rows.size();
    std::vector<double> flat;
    for (const auto& r : rows) {
        if (r.size() != n) {
            throw UsageError("Q must be square: got a row of length " + std::to_string(r.size())
                             + " in a " + std::to_string(n) + "-row matrix");
        }
        flat.insert(flat.end(), r.begin(), r.end());
    }
    orf_matrix* q = nullptr;
    check(orf_matrix_create(n, flat.data(), &q), "Q");
    return MatrixPtr(q);
}

std::string join(const std::vector<double>& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v[i]);
        out += (i ? ", " : "") + std::string(buf);
    }
    return out + ")";
}

ConfigPtr load_config(const std::string& path, std::optional<std::uint64_t> seed)
{
    orf_config* cfg = nullptr;
    check(orf_config_load(path.c_str(), &cfg), "config");
    ConfigPtr out(cfg);
    if (seed) {
        orf_config_set_seed(out.get(), *seed);
    }
    return out;
}

nlohmann::json config_json(const orf_config* cfg)
{
    std::size_t len = 0;
    orf_config_to_json(cfg, nullptr, 0, &len);
    std::string buf(len + 1, '\0');
    check(orf_config_to_json(cfg, buf.data(), buf.size(), &len), "config");
    buf.resize(len);
    return nlohmann::json::parse(buf);
}

void write_manifest(const fs::path& path, const orf_config* cfg, const std::string& command,
                    const std::vector<std::string>& outputs, double wall, unsigned threads)
{
    nlohmann::json m;
    m["command"] = command;
    m["config"] = config_json(cfg);
    m["output_paths"] = outputs;
    m["wall_time"] = wall;
    m["threads"] = threads;
    m["version"] = orf_version();
    std::ofstream os(path);
    if (!os) {
        throw ApiError("cannot write manifest '" + path.string() + "'");
    }
    os << m.dump(2) << '\n';
}

struct Globals {
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::string out;
};

struct JumpArgs {
    std::string q;
    std::string q_file;
    std::string y;
    double eps = 1e-9;
    double fp_tol = 1e-12;
    std::size_t fp_max_iter = 1000000;
};

MatrixPtr matrix_from_args(const JumpArgs& a)
{
    if (a.q.empty() == a.q_file.empty()) {
        throw UsageError("give exactly one of --q or --q-file");
    }
    std::string text = a.q;
    if (!a.q_file.empty()) {
        std::ifstream in(a.q_file);
        if (!in) {
            throw UsageError("cannot open matrix file '" + a.q_file + "'");
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return make_matrix(parse_matrix(text));
}

int cmd_minimal_jump(const JumpArgs& a, bool membership_only)
{
    const MatrixPtr q = matrix_from_args(a);
    const std::vector<double> y = parse_row(a.y);
    const std::size_t n = orf_matrix_size(q.get());
    if (y.size() != n) {
        throw UsageError("y has length " + std::to_string(y.size()) + " but Q is "
                         + std::to_string(n) + "x" + std::to_string(n));
    }

    int member = 0;
    std::vector<double> out(n);
    if (membership_only) {
        check(orf_cone_test(q.get(), y.data(), a.eps, &member, out.data()), "cone-test");
        std::cout << "member: " << (member ? "yes" : "no") << '\n';
        if (!member) {
            std::cout << "witness: " << join(out) << '\n';
        }
        return member ? kExitOk : kExitNotContinuable;
    }

    check(orf_minimal_jump(q.get(), y.data(), a.eps, &member, out.data()), "minimal-jump");
    std::vector<double> z(n);
    int converged = 0;
    std::size_t iters = 0;
    check(orf_least_fixed_point(q.get(), y.data(), a.fp_tol, a.fp_max_iter, z.data(),
                                &converged, &iters),
          "fixed point");

    std::cout << "member: " << (member ? "yes" : "no") << '\n';
    if (member) {
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            residual = std::max(residual, std::abs(out[i] - z[i]));
        }
        std::cout << "dl: " << join(out) << '\n';
        std::cout << "fixed_point: " << join(z) << " after " << iters << " iterations"
                  << (converged ? "" : " (not converged)") << '\n';
        std::cout << "fixed_point_residual: " << residual << '\n';
        return kExitOk;
    }
    std::cout << "witness: " << join(out) << '\n';
    std::cout << "fixed_point: " << (converged ? "converged unexpectedly" : "no limit")
              << " after " << iters << " iterations\n";
    return kExitNotContinuable;
}

void report_progress(std::uint64_t done, std::uint64_t total, void*)
{
    static std::uint64_t last = 0;
    if (done == total || done - last >= total / 20 + 1) {
        last = done;
        std::fprintf(stderr, "\rtrials %llu/%llu", static_cast<unsigned long long>(done),
                     static_cast<unsigned long long>(total));
        if (done == total) {
            std::fputc('\n', stderr);
        }
    }
}

int cmd_ruin_curves(const std::string& config_path, const Globals& g, bool quiet)
{
    const ConfigPtr cfg = load_config(config_path, g.seed);
    const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ApiError("cannot create output directory '" + dir.string() + "'");
    }
    const auto start = std::chrono::steady_clock::now();
    orf_curves* raw = nullptr;
    check(orf_ruin_curves(cfg.get(), g.threads, quiet ? nullptr : report_progress, nullptr,
                          &raw),
          "ruin-curves");
    const CurvesPtr curves(raw);
    const fs::path csv = dir / "ruin_curves.csv";
    check(orf_curves_write_csv(curves.get(), csv.string().c_str()), "ruin-curves");
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(dir / "ruin_curves.manifest.json", cfg.get(), "ruin-curves",
                   {csv.string()}, wall, g.threads);
    if (!quiet) {
        std::cerr << "wrote " << csv.string() << '\n';
    }
    return kExitOk;
}

int cmd_slopes(const std::string& config_path, double quad_tol)
{
    const ConfigPtr cfg = load_config(config_path, std::nullopt);
    struct Row {
        const char* name;
        orf_ruin_event event;
        double value;
    };
    Row rows[] = {{"T1", ORF_EVENT_T1, 0.0},
                  {"T2", ORF_EVENT_T2, 0.0},
                  {"both", ORF_EVENT_BOTH, 0.0},
                  {"either", ORF_EVENT_EITHER, 0.0},
                  {"tau*", ORF_EVENT_TAU, 0.0}};
    std::cout << "event    initial_intensity\n";
    for (Row& r : rows) {
        check(orf_initial_intensity(cfg.get(), r.event, quad_tol, &r.value), "slopes");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-8s %.10g\n", r.name, r.value);
        std::cout << buf;
    }
    const double both = rows[2].value;
    const double tau = rows[4].value;
    const double either = rows[3].value;
    const bool ok = both <= tau && tau <= either;
    std::cout << "bracketing both <= tau* <= either: " << (ok ? "ok" : "VIOLATED") << '\n';
    return ok ? kExitOk : kExitFailure;
}

int cmd_simulate_path(const std::string& config_path, const Globals& g)
{
    const ConfigPtr cfg = load_config(config_path, g.seed);
    const fs::path out = g.out.empty() ? fs::path("path.csv") : fs::path(g.out);
    if (out.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(out.parent_path(), ec);
    }
    const auto start = std::chrono::steady_clock::now();
    int hit = 0;
    check(orf_simulate_path(cfg.get(), orf_config_seed(cfg.get()), out.string().c_str(), &hit),
          "simulate-path");
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(fs::path(out.string() + ".manifest.json"), cfg.get(), "simulate-path",
                   {out.string()}, wall, 1);
    std::cerr << "wrote " << out.string() << (hit ? " (tau* reached)" : "") << '\n';
    return kExitOk;
}

// CLI11 reads "-1,6" after an option as a new flag; glue such values on.
std::vector<std::string> normalize_args(int argc, char** argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        const bool takes_vector = a == "--y" || a == "--q";
        if (takes_vector && i + 1 < argc && argv[i + 1][0] == '-'
            && (std::isdigit(static_cast<unsigned char>(argv[i + 1][1])) || argv[i + 1][1] == '.')) {
            a += "=" + std::string(argv[++i]);
        }
        args.push_back(std::move(a));
    }
    return args;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Minimal reflection in the orthant and two-firm reinsurance ruin curves",
                 "orthoreflect"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(orf_version()));

    Globals g;
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");
    app.add_option("--threads", g.threads, "Worker threads (0 = all processors)");
    app.add_option("--out", g.out, "Output directory (ruin-curves) or file (simulate-path)");

    JumpArgs jump;
    auto add_jump_opts = [&jump](CLI::App* sub) {
        sub->add_option("--q", jump.q, "Reflection matrix, rows ';'-separated: 0,2;2,0");
        sub->add_option("--q-file", jump.q_file, "File holding Q, one row per line");
        sub->add_option("--y", jump.y, "Pre-reflection state X_{t-} - dZ_t: -1,6")->required();
        sub->add_option("--eps", jump.eps, "Feasibility tolerance");
    };
    auto* mj = app.add_subcommand("minimal-jump", "Minimal reflection jump with fixed-point check");
    add_jump_opts(mj);
    mj->add_option("--fp-tol", jump.fp_tol, "Fixed-point stopping tolerance");
    mj->add_option("--fp-max-iter", jump.fp_max_iter, "Fixed-point iteration cap");
    auto* ct = app.add_subcommand("cone-test", "Dual-cone membership only");
    add_jump_opts(ct);

    std::string config_path;
    bool quiet = false;
    auto* rc = app.add_subcommand("ruin-curves", "Monte Carlo ruin-probability curves");
    rc->add_option("config", config_path, "Scenario JSON")->required();
    rc->add_flag("--quiet", quiet, "No progress output");

    double quad_tol = 1e-10;
    auto* sl = app.add_subcommand("slopes", "Initial slopes of the five ruin curves");
    sl->add_option("config", config_path, "Scenario JSON")->required();
    sl->add_option("--quad-tol", quad_tol, "Quadrature tolerance");

    auto* sp = app.add_subcommand("simulate-path", "Event log of one trial for both systems");
    sp->add_option("config", config_path, "Scenario JSON")->required();

    std::vector<std::string> args = normalize_args(argc, argv);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (seed_opt->count() > 0) {
        g.seed = seed;
    }

    try {
        if (mj->parsed()) {
            return cmd_minimal_jump(jump, false);
        }
        if (ct->parsed()) {
            return cmd_minimal_jump(jump, true);
        }
        if (rc->parsed()) {
            return cmd_ruin_curves(config_path, g, quiet);
        }
        if (sl->parsed()) {
            return cmd_slopes(config_path, quad_tol);
        }
        if (sp->parsed()) {
            return cmd_simulate_path(config_path, g);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

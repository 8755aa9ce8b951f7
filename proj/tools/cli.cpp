#include "cli.hpp"

#include "rangerenew/acceptance.hpp"
#include "rangerenew/io.hpp"
#include "rangerenew/laws.hpp"
#include "rangerenew/moments.hpp"
#include "rangerenew/montecarlo.hpp"
#include "rangerenew/ratefn.hpp"
#include "rangerenew/verify.hpp"
#include "rangerenew/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace rangerenew {

namespace {

using ordered_json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "lo:hi:step" (inclusive, step > 0) or a comma list / single value.
std::vector<double> parse_grid(const std::string& name,
                               const std::string& text) {
    std::vector<double> out;
    auto parse_one = [&](const std::string& tok) {
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw UsageError(name + ": cannot parse '" + tok +
                             "' as a number");
        }
    };
    if (text.find(':') != std::string::npos) {
        std::istringstream is(text);
        std::string lo_s, hi_s, step_s;
        if (!std::getline(is, lo_s, ':') || !std::getline(is, hi_s, ':') ||
            !std::getline(is, step_s))
            throw UsageError(name + ": expected lo:hi:step");
        double lo = parse_one(lo_s), hi = parse_one(hi_s),
               step = parse_one(step_s);
        if (!(step > 0.0))
            throw UsageError(name + ": step must be > 0");
        if (hi < lo) throw UsageError(name + ": hi must be >= lo");
        long long count =
            static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
        if (count > 1000000)
            throw UsageError(name + ": grid larger than 1e6 points");
        for (long long k = 0; k < count; ++k)
            out.push_back(lo + static_cast<double>(k) * step);
        return out;
    }
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ','))
        if (!tok.empty()) out.push_back(parse_one(tok));
    if (out.empty()) throw UsageError(name + ": empty grid");
    return out;
}

std::vector<std::int64_t> parse_int_grid(const std::string& name,
                                         const std::string& text) {
    std::vector<std::int64_t> out;
    for (double v : parse_grid(name, text)) {
        double r = std::round(v);
        if (std::abs(v - r) > 1e-9 || r < 1.0 || r > 9.0e15)
            throw UsageError(name + ": entries must be integers >= 1");
        out.push_back(static_cast<std::int64_t>(r));
    }
    return out;
}

struct Options {
    std::string law;
    double gamma = 0.5;
    std::string lambda_grid = "-2:1:0.1";
    std::string x_grid = "-0.5:2:0.125";
    std::string t_grid;   // per-subcommand default
    std::string n_grid;   // per-subcommand default
    double t = 0.0;
    std::int64_t n = 0;
    std::int64_t replicas = 10000;
    std::uint64_t seed = 42;
    double tv_budget = 1e-6;
    std::string method = "poissonized";
    std::string emit = "lambda";
    std::string check;
    std::string out_path;
    std::string format = "csv";
    int threads = 0;
    double tol = 1e-9;
    std::int64_t pair_cutoff = 20000;
    double b_beta = 0.0;   // 0 selects b = ln t, otherwise b = t^beta
    std::string eps_grid = "0.25,0.5,1,2";
};

struct Ctx {
    OutputMeta meta;
    std::string out_path;
    bool json = false;
};

// Writes body to the configured sink; returns an exit code.
int emit_output(const Ctx& ctx, const std::string& body) {
    if (ctx.out_path.empty()) {
        std::cout << body;
        return 0;
    }
    try {
        write_text_atomic(ctx.out_path, body);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

ordered_json meta_json(const OutputMeta& meta) {
    ordered_json j;
    j["version"] = meta.version;
    j["config"] = hex64(meta.config_hash);
    j["seed"] = meta.seed;
    return j;
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

std::string report_csv(const Ctx& ctx, const Report& rep) {
    std::string body = csv_comment_header(ctx.meta);
    body += "# kind " + rep.kind + "\n";
    for (const auto& kv : rep.inputs)
        body += "# input " + kv.first + "=" + kv.second + "\n";
    body += "# criteria " + rep.criteria + "\n";
    body += std::string("# pass ") + (rep.pass ? "true" : "false") + "\n";
    for (const auto& n : rep.notes) body += "# note " + n + "\n";
    body += csv_line(rep.columns);
    for (const auto& row : rep.rows) {
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (double v : row) cells.push_back(format_g17(v));
        body += csv_line(cells);
    }
    return body;
}

std::string report_json(const Ctx& ctx, const Report& rep) {
    ordered_json j;
    j["meta"] = meta_json(ctx.meta);
    j["kind"] = rep.kind;
    ordered_json inputs;
    for (const auto& kv : rep.inputs) inputs[kv.first] = kv.second;
    j["inputs"] = inputs;
    j["criteria"] = rep.criteria;
    j["pass"] = rep.pass;
    j["gating"] = rep.gating;
    j["columns"] = rep.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : rep.rows) {
        ordered_json r = ordered_json::array();
        for (double v : row) {
            if (std::isfinite(v))
                r.push_back(v);
            else
                r.push_back(format_g17(v));
        }
        rows.push_back(r);
    }
    j["rows"] = rows;
    j["notes"] = rep.notes;
    return j.dump(2) + "\n";
}

int run_moments(const Options& opt, const Ctx& ctx) {
    if (opt.law.empty()) throw UsageError("moments: --law is required");
    DiscreteLaw law = parse_law_spec(opt.law);
    std::string grid = opt.t_grid.empty() ? "1,10,100,1000" : opt.t_grid;
    std::vector<double> ts = parse_grid("--t-grid", grid);
    std::vector<MomentRow> rows =
        moments_table(law, ts, opt.tol, opt.pair_cutoff);

    const std::vector<std::string> cols = {
        "t",       "mu",         "mu_err",     "sigma_sq",
        "sigma_sq_err", "mu_dot", "mu_ddot",    "exact_mean",
        "exact_var",    "asym_mu", "asym_sigma_sq"};
    if (ctx.json) {
        ordered_json j;
        j["meta"] = meta_json(ctx.meta);
        j["law"] = law.spec_string();
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json o;
            o["t"] = r.t;
            o["mu"] = r.mu.value;
            o["mu_err"] = r.mu.abs_error;
            o["sigma_sq"] = r.sigma_sq.value;
            o["sigma_sq_err"] = r.sigma_sq.abs_error;
            o["mu_dot"] = r.mu_dot.value;
            o["mu_ddot"] = r.mu_ddot.value;
            o["exact_mean"] =
                r.exact_mean ? ordered_json(r.exact_mean->value)
                             : ordered_json(nullptr);
            o["exact_var"] = r.exact_var ? ordered_json(r.exact_var->value)
                                         : ordered_json(nullptr);
            o["asym_mu"] =
                r.asym_mu ? ordered_json(*r.asym_mu) : ordered_json(nullptr);
            o["asym_sigma_sq"] = r.asym_sigma_sq
                                     ? ordered_json(*r.asym_sigma_sq)
                                     : ordered_json(nullptr);
            arr.push_back(o);
        }
        j["rows"] = arr;
        return emit_output(ctx, j.dump(2) + "\n");
    }
    std::string body = csv_comment_header(ctx.meta);
    body += "# law " + law.spec_string() + "\n";
    body += csv_line(cols);
    for (const auto& r : rows) {
        std::vector<std::string> cells;
        cells.push_back(format_g17(r.t));
        cells.push_back(format_g17(r.mu.value));
        cells.push_back(format_g17(r.mu.abs_error));
        cells.push_back(format_g17(r.sigma_sq.value));
        cells.push_back(format_g17(r.sigma_sq.abs_error));
        cells.push_back(format_g17(r.mu_dot.value));
        cells.push_back(format_g17(r.mu_ddot.value));
        cells.push_back(r.exact_mean ? format_g17(r.exact_mean->value) : "");
        cells.push_back(r.exact_var ? format_g17(r.exact_var->value) : "");
        cells.push_back(r.asym_mu ? format_g17(*r.asym_mu) : "");
        cells.push_back(r.asym_sigma_sq ? format_g17(*r.asym_sigma_sq) : "");
        body += csv_line(cells);
    }
    return emit_output(ctx, body);
}

int run_ratefn(const Options& opt, const Ctx& ctx) {
    const bool closed_form_ok = opt.emit == "lambda" || opt.emit == "mdp";
    if (!(opt.gamma > 0.0) || opt.gamma > 1.0 ||
        (opt.gamma == 1.0 && !closed_form_ok))
        throw UsageError(
            "--gamma must lie in (0,1) (gamma=1 is accepted for --emit "
            "lambda/mdp via the closed forms)");

    struct Row {
        double gamma, key, value, est_error;
        std::string method;
    };
    std::vector<Row> rows;

    if (opt.emit == "lambda") {
        for (double lam : parse_grid("--lambda-grid", opt.lambda_grid)) {
            if (opt.gamma == 1.0) {
                rows.push_back({1.0, lam, lambda_one(lam), 0.0,
                                "closed_form_1regular"});
                continue;
            }
            RateFnSample q = lambda_gamma_integral(opt.gamma, lam, opt.tol);
            rows.push_back({opt.gamma, lam, q.value, q.est_error,
                            "quadrature"});
            if (std::abs(-std::expm1(lam)) <= 0.95) {
                RateFnSample s = lambda_gamma_series(opt.gamma, lam);
                rows.push_back({opt.gamma, lam, s.value, s.est_error,
                                "series"});
                if (s.converged && std::abs(s.value - q.value) > 1e-8)
                    std::cerr << "diagnostic: series and quadrature differ "
                                 "by "
                              << format_g17(std::abs(s.value - q.value))
                              << " at lambda=" << format_g17(lam)
                              << "; quadrature is authoritative\n";
            }
        }
    } else if (opt.emit == "conjugate") {
        for (double x : parse_grid("--x-grid", opt.x_grid)) {
            ConjugateSample c = legendre_transform(opt.gamma, x, opt.tol);
            rows.push_back({opt.gamma, x, c.value,
                            c.converged ? opt.tol
                                        : std::numeric_limits<double>::infinity(),
                            "conjugate"});
        }
    } else if (opt.emit == "mdp") {
        for (double x : parse_grid("--x-grid", opt.x_grid))
            rows.push_back(
                {opt.gamma, x, mdp_rate(opt.gamma, x), 0.0, "mdp_closed_form"});
    } else {   // finite-t
        if (opt.law.empty())
            throw UsageError("ratefn --emit finite-t: --law is required");
        if (!(opt.t > 0.0))
            throw UsageError("ratefn --emit finite-t: --t must be > 0");
        DiscreteLaw law = parse_law_spec(opt.law);
        auto profile = regular_profile(law);
        double g = profile ? profile->gamma
                           : std::numeric_limits<double>::quiet_NaN();
        for (double lam : parse_grid("--lambda-grid", opt.lambda_grid))
            rows.push_back({g, lam, finite_t_cgf(law, opt.t, lam, opt.tol),
                            opt.tol, "finite_t"});
    }

    const std::vector<std::string> cols = {"gamma", "lambda_or_x", "value",
                                           "method", "est_error"};
    if (ctx.json) {
        ordered_json j;
        j["meta"] = meta_json(ctx.meta);
        j["emit"] = opt.emit;
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json o;
            o["gamma"] = r.gamma;
            o["lambda_or_x"] = r.key;
            o["value"] = std::isfinite(r.value)
                             ? ordered_json(r.value)
                             : ordered_json(format_g17(r.value));
            o["method"] = r.method;
            o["est_error"] = std::isfinite(r.est_error)
                                 ? ordered_json(r.est_error)
                                 : ordered_json(format_g17(r.est_error));
            arr.push_back(o);
        }
        j["rows"] = arr;
        return emit_output(ctx, j.dump(2) + "\n");
    }
    std::string body = csv_comment_header(ctx.meta);
    body += "# emit " + opt.emit + "\n";
    body += csv_line(cols);
    for (const auto& r : rows)
        body += csv_line({format_g17(r.gamma), format_g17(r.key),
                          format_g17(r.value), r.method,
                          format_g17(r.est_error)});
    return emit_output(ctx, body);
}

ordered_json summary_json(const SummaryStats& s) {
    ordered_json o;
    o["count"] = s.count;
    o["mean"] = s.mean;
    o["variance"] = s.variance;
    o["min"] = s.min;
    o["q25"] = s.q25;
    o["median"] = s.median;
    o["q75"] = s.q75;
    o["max"] = s.max;
    return o;
}

int run_simulate(const Options& opt, const Ctx& ctx) {
    if (opt.law.empty()) throw UsageError("simulate: --law is required");
    DiscreteLaw law = parse_law_spec(opt.law);
    if (opt.replicas < 1)
        throw UsageError("simulate: --replicas must be >= 1");

    SimBatch batch;
    if (opt.method == "direct") {
        if (opt.n < 1)
            throw UsageError("simulate --method direct: --n must be >= 1");
        batch = simulate_direct(law, opt.n, opt.replicas, opt.seed,
                                opt.threads);
    } else if (opt.method == "poissonized") {
        if (!(opt.t > 0.0))
            throw UsageError(
                "simulate --method poissonized: --t must be > 0");
        if (!(opt.tv_budget > 0.0) || opt.tv_budget > 1e-3)
            throw UsageError(
                "simulate: --tv-budget must lie in (0, 1e-3]");
        batch = simulate_poissonized(law, opt.t, opt.replicas, opt.seed,
                                     opt.threads, opt.tv_budget);
    } else {   // coupled
        if (!(opt.t >= 1.0))
            throw UsageError("simulate --method coupled: --t must be >= 1");
        batch = simulate_coupled(law, opt.t, opt.replicas, opt.seed,
                                 opt.threads);
    }

    if (ctx.json) {
        ordered_json j;
        j["meta"] = meta_json(ctx.meta);
        j["law"] = batch.law_spec;
        j["mode"] = batch.mode;
        if (batch.mode == "direct")
            j["n"] = batch.n;
        else
            j["t"] = batch.t;
        j["replicas"] = static_cast<std::int64_t>(batch.values.size());
        j["threads"] = batch.threads;
        if (batch.mode == "poissonized") {
            j["head_cutoff"] = batch.head_cutoff;
            j["tail_lambda"] = batch.tail_lambda;
            j["tv_bound"] = batch.tv_bound;
        }
        j["summary"] = summary_json(summarize(batch.values));
        if (!batch.values_star.empty()) {
            j["summary_star"] = summary_json(summarize(batch.values_star));
            double mean_abs = 0.0;
            for (std::size_t i = 0; i < batch.values.size(); ++i)
                mean_abs +=
                    std::abs(batch.values_star[i] - batch.values[i]);
            j["mean_abs_diff"] =
                mean_abs / static_cast<double>(batch.values.size());
        }
        return emit_output(ctx, j.dump(2) + "\n");
    }

    std::string body = csv_comment_header(ctx.meta);
    body += "# law " + batch.law_spec + "\n";
    body += "# mode " + batch.mode + "\n";
    if (batch.mode == "poissonized") {
        body += "# head_cutoff " + std::to_string(batch.head_cutoff) + "\n";
        body += "# tail_lambda " + format_g17(batch.tail_lambda) + "\n";
        body += "# tv_bound " + format_g17(batch.tv_bound) + "\n";
    }
    bool coupled = !batch.values_star.empty();
    body += coupled ? "replica,value,value_star\n" : "replica,value\n";
    for (std::size_t i = 0; i < batch.values.size(); ++i) {
        body += std::to_string(i);
        body += ',';
        body += format_g17(batch.values[i]);
        if (coupled) {
            body += ',';
            body += format_g17(batch.values_star[i]);
        }
        body += '\n';
    }
    return emit_output(ctx, body);
}

int run_verify(const Options& opt, const Ctx& ctx, bool n_grid_set,
               bool t_set, bool replicas_set) {
    if (opt.check.empty())
        throw UsageError("verify: --check is required "
                         "(brute|clt|mean-bounds|var-ratio|cgf|mdp|coupling)");
    auto law = [&]() {
        if (opt.law.empty()) throw UsageError("verify: --law is required");
        return parse_law_spec(opt.law);
    };

    Report rep;
    if (opt.check == "brute") {
        rep = brute_force_report(law(), opt.n > 0 ? opt.n : 2);
    } else if (opt.check == "clt") {
        rep = clt_report(law(), t_set ? opt.t : 1e5, opt.replicas, opt.seed,
                         opt.threads);
    } else if (opt.check == "mean-bounds") {
        std::string grid = n_grid_set ? opt.n_grid : "10,100,1000";
        rep = mean_bounds_report(law(), parse_int_grid("--n-grid", grid));
    } else if (opt.check == "var-ratio") {
        std::string grid = n_grid_set ? opt.n_grid : "100,1000,10000,100000";
        rep = var_ratio_report(law(), parse_int_grid("--n-grid", grid),
                               opt.pair_cutoff);
    } else if (opt.check == "cgf") {
        std::string grid = opt.t_grid.empty() ? "1e4,1e6,1e8" : opt.t_grid;
        rep = cgf_convergence_report(
            law(), parse_grid("--lambda-grid", opt.lambda_grid),
            parse_grid("--t-grid", grid));
    } else if (opt.check == "mdp") {
        double t = t_set ? opt.t : 1e4;
        double b = opt.b_beta == 0.0 ? std::log(t)
                                     : std::pow(t, opt.b_beta);
        if (opt.b_beta != 0.0 &&
            !(opt.b_beta > 0.0 && opt.b_beta < 1.0))
            throw UsageError("--b-beta must lie in (0,1), or 0 for ln t");
        std::string xg = opt.x_grid == "-0.5:2:0.125" ? "0.5" : opt.x_grid;
        rep = mdp_tail_report(law(), t, b, parse_grid("--x-grid", xg),
                              replicas_set ? opt.replicas : 1000000,
                              opt.seed, opt.threads);
    } else {   // coupling
        rep = coupling_report(law(), t_set ? opt.t : 1e5,
                              replicas_set ? opt.replicas : 1000, opt.seed,
                              parse_grid("--eps-grid", opt.eps_grid),
                              opt.threads);
    }

    int code = emit_output(
        ctx, ctx.json ? report_json(ctx, rep) : report_csv(ctx, rep));
    if (code != 0) return code;
    return (rep.pass || !rep.gating) ? 0 : 1;
}

int run_report_all(const Options& opt, const Ctx& ctx) {
    AcceptanceOutcome outcome = run_acceptance(opt.seed, &std::cout);
    ordered_json j;
    j["meta"] = meta_json(ctx.meta);
    ordered_json arr = ordered_json::array();
    for (const auto& c : outcome.criteria) {
        ordered_json o;
        o["index"] = c.index;
        o["name"] = c.name;
        o["pass"] = c.pass;
        o["gating"] = c.gating;
        o["seconds"] = c.seconds;
        o["detail"] = c.detail;
        arr.push_back(o);
    }
    j["criteria"] = arr;
    j["all_gating_pass"] = outcome.all_gating_pass;
    if (!ctx.out_path.empty()) {
        int code = emit_output(ctx, j.dump(2) + "\n");
        if (code != 0) return code;
    }
    return outcome.all_gating_pass ? 0 : 1;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"range-renewal process toolkit: certified moments, "
                 "large-deviation rate functions, reproducible simulation "
                 "and statistical verification of the distinct-count "
                 "process"};
    app.fallthrough();

    Options opt;
    app.set_config("--config", "",
                   "flat key=value config file; command-line flags take "
                   "precedence");
    app.allow_config_extras(false);

    app.add_option("--law", opt.law,
                   "law spec: zipf:gamma=G | geom:q=Q | finite:w1,w2,... | "
                   "factgap")
        ->capture_default_str();
    app.add_option("--gamma", opt.gamma, "rate-function index in (0,1)")
        ->capture_default_str();
    app.add_option("--lambda-grid", opt.lambda_grid,
                   "lambda grid, lo:hi:step or comma list")
        ->capture_default_str();
    app.add_option("--x-grid", opt.x_grid, "x grid, lo:hi:step or comma list")
        ->capture_default_str();
    app.add_option("--t-grid", opt.t_grid, "t grid, lo:hi:step or comma list")
        ->capture_default_str();
    app.add_option("--n-grid", opt.n_grid, "integer n grid")
        ->capture_default_str();
    app.add_option("--t", opt.t, "Poissonized time parameter")
        ->capture_default_str();
    app.add_option("--n", opt.n, "sample count for direct simulation")
        ->capture_default_str();
    app.add_option("--replicas", opt.replicas, "Monte Carlo replicas")
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "master seed")->capture_default_str();
    app.add_option("--tv-budget", opt.tv_budget,
                   "Poissonized tail total-variation budget, (0, 1e-3]")
        ->capture_default_str();
    app.add_option("--method", opt.method, "simulation method")
        ->check(CLI::IsMember({"direct", "poissonized", "coupled"}))
        ->capture_default_str();
    app.add_option("--emit", opt.emit, "ratefn output family")
        ->check(CLI::IsMember({"lambda", "conjugate", "mdp", "finite-t"}))
        ->capture_default_str();
    app.add_option("--check", opt.check, "verification to run")
        ->check(CLI::IsMember({"brute", "clt", "mean-bounds", "var-ratio",
                               "cgf", "mdp", "coupling"}))
        ->capture_default_str();
    app.add_option("--out", opt.out_path,
                   "output file (atomic write); stdout when omitted")
        ->capture_default_str();
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--threads", opt.threads,
                   "worker threads; 0 = RANGERENEW_THREADS or hardware")
        ->capture_default_str();
    app.add_option("--tol", opt.tol, "absolute tolerance for certified sums")
        ->capture_default_str();
    app.add_option("--pair-cutoff", opt.pair_cutoff,
                   "pair truncation for the exact variance")
        ->capture_default_str();
    app.add_option("--b-beta", opt.b_beta,
                   "moderate-deviation speed exponent: b = t^beta, 0 = ln t")
        ->capture_default_str();
    app.add_option("--eps-grid", opt.eps_grid, "coupling epsilon grid")
        ->capture_default_str();

    CLI::App* sub_moments =
        app.add_subcommand("moments", "certified moment table over a t grid");
    CLI::App* sub_ratefn = app.add_subcommand(
        "ratefn", "rate function, conjugate, and finite-t CGF");
    CLI::App* sub_simulate =
        app.add_subcommand("simulate", "replicated simulation of the count");
    CLI::App* sub_verify =
        app.add_subcommand("verify", "statistical verification reports");
    CLI::App* sub_report =
        app.add_subcommand("report-all", "full acceptance suite, one seed");
    for (CLI::App* sub :
         {sub_moments, sub_ratefn, sub_simulate, sub_verify, sub_report})
        sub->fallthrough();
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Ctx ctx;
        ctx.meta.version = kVersion;
        ctx.meta.seed = opt.seed;
        ctx.out_path = opt.out_path;
        ctx.json = opt.format == "json";
        std::string sub_name;
        for (CLI::App* sub :
             {sub_moments, sub_ratefn, sub_simulate, sub_verify, sub_report})
            if (sub->parsed()) sub_name = sub->get_name();
        if (sub_name.empty()) {
            std::cerr << "error: a subcommand is required (moments, ratefn, "
                         "simulate, verify, report-all)\n"
                      << app.help() << "\n";
            return 2;
        }
        ctx.meta.config_hash =
            fnv1a64(sub_name + "\n" + app.config_to_str(true, false));

        if (sub_name == "moments") return run_moments(opt, ctx);
        if (sub_name == "ratefn") return run_ratefn(opt, ctx);
        if (sub_name == "simulate") return run_simulate(opt, ctx);
        if (sub_name == "verify")
            return run_verify(opt, ctx, app.count("--n-grid") > 0,
                              app.count("--t") > 0,
                              app.count("--replicas") > 0);
        return run_report_all(opt, ctx);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace rangerenew

#include "rangerenew/verify.hpp"

#include "rangerenew/moments.hpp"
#include "rangerenew/ratefn.hpp"
#include "rangerenew/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rangerenew {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void dfs_words(const std::vector<double>& w, std::int64_t depth,
               std::int64_t n, double weight, std::vector<char>& occ,
               int distinct, std::vector<double>& pmf) {
    if (depth == n) {
        pmf[static_cast<std::size_t>(distinct)] += weight;
        return;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        bool fresh = !occ[i];
        if (fresh) occ[i] = 1;
        dfs_words(w, depth + 1, n, weight * w[i], occ,
                  distinct + (fresh ? 1 : 0), pmf);
        if (fresh) occ[i] = 0;
    }
}

} // namespace

BruteForceResult brute_force_Rn(const DiscreteLaw& law, std::int64_t n) {
    if (law.support_size() < 0)
        throw std::invalid_argument("brute_force_Rn: finite law required");
    if (n < 0) throw std::invalid_argument("brute_force_Rn: n must be >= 0");
    const auto& w = law.finite_weights();
    const std::int64_t K = static_cast<std::int64_t>(w.size());
    double words = std::pow(static_cast<double>(K), static_cast<double>(n));
    if (words > 1.0e7)
        throw std::invalid_argument(
            "brute_force_Rn: K^n exceeds the 1e7 enumeration budget");

    BruteForceResult res;
    res.pmf.assign(static_cast<std::size_t>(K) + 1, 0.0);
    std::vector<char> occ(w.size(), 0);
    dfs_words(w, 0, n, 1.0, occ, 0, res.pmf);

    double m1 = 0.0, m2 = 0.0;
    for (std::size_t r = 0; r < res.pmf.size(); ++r) {
        m1 += static_cast<double>(r) * res.pmf[r];
        m2 += static_cast<double>(r) * static_cast<double>(r) * res.pmf[r];
    }
    res.mean = m1;
    res.variance = m2 - m1 * m1;
    return res;
}

double ks_statistic_normal(std::vector<double> sample) {
    if (sample.empty())
        throw std::invalid_argument("ks_statistic_normal: empty sample");
    std::sort(sample.begin(), sample.end());
    const double m = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double phi = normal_cdf(sample[i]);
        double hi = static_cast<double>(i + 1) / m - phi;
        double lo = phi - static_cast<double>(i) / m;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_statistic_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    return d;
}

double ks_p_value(double stat, double effective_m) {
    if (!(effective_m > 0.0))
        throw std::invalid_argument("ks_p_value: effective_m must be > 0");
    return kolmogorov_sf(std::sqrt(effective_m) * stat);
}

Report brute_force_report(const DiscreteLaw& law, std::int64_t n) {
    Report rep;
    rep.kind = "brute_force";
    rep.inputs = {{"law", law.spec_string()}, {"n", fmt(static_cast<double>(n))}};
    rep.columns = {"r", "probability"};
    rep.criteria =
        "enumeration mean/variance match the closed-form mean/variance to "
        "1e-12";

    BruteForceResult bf = brute_force_Rn(law, n);
    for (std::size_t r = 0; r < bf.pmf.size(); ++r)
        rep.rows.push_back({static_cast<double>(r), bf.pmf[r]});

    CertifiedValue mean = exact_mean_Rn(law, n);
    CertifiedValue var = exact_var_Rn(law, n);
    double dm = std::abs(bf.mean - mean.value);
    double dv = std::abs(bf.variance - var.value);
    rep.inputs.push_back({"enumeration_mean", fmt(bf.mean)});
    rep.inputs.push_back({"formula_mean", fmt(mean.value)});
    rep.inputs.push_back({"enumeration_variance", fmt(bf.variance)});
    rep.inputs.push_back({"formula_variance", fmt(var.value)});
    rep.pass = dm <= 1e-12 + mean.abs_error && dv <= 1e-12 + var.abs_error;
    if (!rep.pass)
        rep.notes.push_back("mean gap " + fmt(dm) + ", variance gap " +
                            fmt(dv));
    return rep;
}

Report clt_report(const DiscreteLaw& law, double t, std::int64_t replicas,
                  std::uint64_t seed, int threads) {
    if (replicas < 2)
        throw std::invalid_argument("clt_report: replicas must be >= 2");
    CertifiedValue m = mu(law, t);
    CertifiedValue s2 = sigma_sq(law, t);
    if (!(s2.value > 0.0))
        throw std::domain_error("clt_report: degenerate sigma");
    const double sigma = std::sqrt(s2.value);

    SimBatch batch = simulate_poissonized(law, t, replicas, seed, threads);
    std::vector<double> z(batch.values.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        z[i] = (batch.values[i] - m.value) / sigma;
    double ks = ks_statistic_normal(std::move(z));

    const double esseen = 10.0 / sigma;
    const double envelope =
        esseen + 1.63 / std::sqrt(static_cast<double>(replicas));
    Report rep;
    rep.kind = "clt";
    rep.inputs = {{"law", law.spec_string()},
                  {"t", fmt(t)},
                  {"replicas", fmt(static_cast<double>(replicas))},
                  {"seed", fmt(static_cast<double>(seed))}};
    rep.columns = {"t", "mu", "sigma", "ks", "esseen_bound", "envelope"};
    rep.rows.push_back({t, m.value, sigma, ks, esseen, envelope});
    rep.criteria = "KS <= min(0.05, 10/sigma + 1.63/sqrt(replicas))";
    rep.pass = ks <= std::min(0.05, envelope);
    if (sigma < 5.0)
        rep.notes.push_back("sigma below the recommended minimum of 5");
    return rep;
}

Report mean_bounds_report(const DiscreteLaw& law,
                          const std::vector<std::int64_t>& n_grid) {
    Report rep;
    rep.kind = "mean_bounds";
    rep.inputs = {{"law", law.spec_string()}};
    rep.columns = {"n", "mu", "exact_mean", "upper", "row_pass"};
    rep.criteria = "mu(n) <= E R_n <= (1 + e/n) mu(n), beyond certified errors";
    rep.pass = true;
    for (std::int64_t n : n_grid) {
        CertifiedValue m = mu(law, static_cast<double>(n));
        CertifiedValue er = exact_mean_Rn(law, n);
        double factor = 1.0 + std::exp(1.0) / static_cast<double>(n);
        CertifiedValue upper = factor * m;
        bool ok = m.upper() <= er.lower() + 1e-15 &&
                  er.upper() <= upper.lower() + 1e-15;
        rep.rows.push_back({static_cast<double>(n), m.value, er.value,
                            upper.value, ok ? 1.0 : 0.0});
        if (!ok) rep.pass = false;
    }
    return rep;
}

Report var_ratio_report(const DiscreteLaw& law,
                        const std::vector<std::int64_t>& n_grid,
                        std::int64_t pair_cutoff) {
    Report rep;
    rep.kind = "var_ratio";
    rep.inputs = {{"law", law.spec_string()},
                  {"pair_cutoff", fmt(static_cast<double>(pair_cutoff))}};
    rep.columns = {"n", "exact_var", "exact_var_err", "sigma_sq", "ratio"};
    rep.criteria =
        "Var R_n / sigma_n^2 in [0.9, 1.1] at the largest grid point";

    const bool degenerate = law.kind() == LawKind::Finite ||
                            law.kind() == LawKind::FactorialGap;
    for (std::int64_t n : n_grid) {
        CertifiedValue var = exact_var_Rn(law, n, pair_cutoff);
        CertifiedValue s2 = sigma_sq(law, static_cast<double>(n));
        double ratio = s2.value > 0.0 ? var.value / s2.value : kNaN;
        rep.rows.push_back({static_cast<double>(n), var.value, var.abs_error,
                            s2.value, ratio});
    }
    if (degenerate) {
        rep.notes.push_back(
            "skipped: hypothesis lim n^p sigma_n^2 = infinity fails for this "
            "law");
        rep.pass = true;
        return rep;
    }
    std::int64_t n = n_grid.empty() ? 0 : n_grid.back();
    if (n <= 1) {
        rep.notes.push_back("largest grid point has no variance; skipped");
        rep.pass = true;
        return rep;
    }
    CertifiedValue var = exact_var_Rn(law, n, pair_cutoff);
    CertifiedValue s2 = sigma_sq(law, static_cast<double>(n));
    double lo = var.lower() / s2.upper();
    double hi = var.upper() / s2.lower();
    rep.pass = lo >= 0.9 && hi <= 1.1;
    if (!rep.pass)
        rep.notes.push_back("certified ratio range [" + fmt(lo) + ", " +
                            fmt(hi) + "] leaves [0.9, 1.1]");
    return rep;
}

Report cgf_convergence_report(const DiscreteLaw& law,
                              const std::vector<double>& lambda_grid,
                              const std::vector<double>& t_grid) {
    auto profile = regular_profile(law);
    if (!profile || !(profile->gamma < 1.0))
        throw std::invalid_argument(
            "cgf_convergence_report: needs a power-law profile with gamma in "
            "(0,1)");
    const double gamma = profile->gamma;

    Report rep;
    rep.kind = "cgf_convergence";
    rep.inputs = {{"law", law.spec_string()}, {"gamma", fmt(gamma)}};
    rep.columns = {"t", "lambda", "finite_t_cgf", "limit", "gap"};
    rep.criteria =
        "max |finite-t CGF - limit| over lambda <= 0.05 at the largest t, "
        "non-increasing along the t grid";

    std::vector<double> limits;
    limits.reserve(lambda_grid.size());
    for (double lam : lambda_grid)
        limits.push_back(lambda_gamma_integral(gamma, lam, 1e-10).value);

    std::vector<double> max_gaps;
    for (double t : t_grid) {
        double worst = 0.0;
        for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
            double v = finite_t_cgf(law, t, lambda_grid[k]);
            double gap = std::abs(v - limits[k]);
            worst = std::max(worst, gap);
            rep.rows.push_back({t, lambda_grid[k], v, limits[k], gap});
        }
        max_gaps.push_back(worst);
        rep.notes.push_back("max gap at t=" + fmt(t) + ": " + fmt(worst));
    }
    rep.pass = !max_gaps.empty() && max_gaps.back() <= 0.05;
    for (std::size_t k = 0; k + 1 < max_gaps.size(); ++k)
        if (max_gaps[k + 1] > max_gaps[k]) rep.pass = false;
    return rep;
}

Report mdp_tail_report(const DiscreteLaw& law, double t, double b_value,
                       const std::vector<double>& x_grid,
                       std::int64_t replicas, std::uint64_t seed,
                       int threads) {
    if (!(b_value > 0.0))
        throw std::invalid_argument("mdp_tail_report: b must be > 0");
    auto profile = regular_profile(law);
    if (!profile)
        throw std::invalid_argument(
            "mdp_tail_report: needs a regular profile (gamma in (0,1])");
    const double gamma = profile->gamma;

    CertifiedValue m = mu(law, t);
    const double scale = std::sqrt(m.value * b_value);

    Report rep;
    rep.kind = "mdp_tail";
    rep.gating = false;
    rep.inputs = {{"law", law.spec_string()},
                  {"t", fmt(t)},
                  {"b", fmt(b_value)},
                  {"mu", fmt(m.value)},
                  {"replicas", fmt(static_cast<double>(replicas))},
                  {"seed", fmt(static_cast<double>(seed))}};
    rep.columns = {"x", "hits", "neg_log_p_over_b", "rate", "ratio"};
    rep.criteria =
        "empirical -log P(Z >= x)/b within [0.5, 2] of x^2/(2(2^gamma-1)) "
        "for rows with >= 100 hits (diagnostic)";
    if (m.value < 10.0 * b_value)
        rep.notes.push_back(
            "hypothesis mu/b -> infinity is weak at this scale: mu/b = " +
            fmt(m.value / b_value));

    SimBatch batch = simulate_poissonized(law, t, replicas, seed, threads);

    rep.pass = true;
    bool any_row = false;
    for (double x : x_grid) {
        if (!(x > 0.0)) {
            rep.rows.push_back({x, kNaN, kNaN, mdp_rate(gamma, x), kNaN});
            rep.notes.push_back("x=" + fmt(x) +
                                ": nonpositive, excluded from the check");
            continue;
        }
        const double threshold = m.value + x * scale;
        std::int64_t hits = 0;
        for (double v : batch.values)
            if (v >= threshold) ++hits;
        double rate = mdp_rate(gamma, x);
        if (hits < 100) {
            rep.rows.push_back({x, static_cast<double>(hits), kNaN, rate,
                                kNaN});
            rep.notes.push_back("x=" + fmt(x) + ": insufficient tail hits (" +
                                fmt(static_cast<double>(hits)) + ")");
            continue;
        }
        double p_hat =
            static_cast<double>(hits) / static_cast<double>(replicas);
        double emp = -std::log(p_hat) / b_value;
        double ratio = emp / rate;
        rep.rows.push_back(
            {x, static_cast<double>(hits), emp, rate, ratio});
        any_row = true;
        if (ratio < 0.5 || ratio > 2.0) rep.pass = false;
    }
    if (!any_row)
        rep.notes.push_back("no row had enough hits; diagnostic inconclusive");
    return rep;
}

Report coupling_report(const DiscreteLaw& law, double t,
                       std::int64_t replicas, std::uint64_t seed,
                       const std::vector<double>& eps_grid, int threads) {
    std::int64_t n0 = static_cast<std::int64_t>(std::floor(t));
    CertifiedValue s2 = sigma_sq(law, static_cast<double>(n0));
    if (!(s2.value > 0.0))
        throw std::domain_error("coupling_report: degenerate sigma");
    const double sigma = std::sqrt(s2.value);

    SimBatch batch = simulate_coupled(law, t, replicas, seed, threads);
    std::vector<double> diffs(batch.values.size());
    double mean_abs = 0.0;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        diffs[i] = std::abs(batch.values_star[i] - batch.values[i]);
        mean_abs += diffs[i];
    }
    mean_abs /= static_cast<double>(diffs.size());

    Report rep;
    rep.kind = "coupling";
    rep.gating = false;
    rep.inputs = {{"law", law.spec_string()},
                  {"t", fmt(t)},
                  {"sigma_n", fmt(sigma)},
                  {"mean_abs_diff", fmt(mean_abs)},
                  {"replicas", fmt(static_cast<double>(replicas))},
                  {"seed", fmt(static_cast<double>(seed))}};
    rep.columns = {"eps", "threshold", "exceed_count", "frequency"};
    rep.criteria =
        "P(|R* - R| >= sigma_n) <= 0.1 at eps = 1 (diagnostic)";

    std::vector<double> grid = eps_grid;
    if (std::find(grid.begin(), grid.end(), 1.0) == grid.end())
        grid.push_back(1.0);
    std::sort(grid.begin(), grid.end());
    rep.pass = true;
    for (double eps : grid) {
        double threshold = eps * sigma;
        std::int64_t count = 0;
        for (double d : diffs)
            if (d >= threshold) ++count;
        double freq =
            static_cast<double>(count) / static_cast<double>(diffs.size());
        rep.rows.push_back({eps, threshold, static_cast<double>(count), freq});
        if (eps == 1.0 && freq > 0.1) rep.pass = false;
    }
    return rep;
}

} // namespace rangerenew

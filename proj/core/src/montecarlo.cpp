#include "rangerenew/montecarlo.hpp"

#include "rangerenew/moments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace rangerenew {

namespace {

// Mode tag in the stream id keeps the three simulators statistically
// independent even when run with the same master seed.
constexpr std::uint64_t kDirectSalt = 1ULL << 56;
constexpr std::uint64_t kPoissonizedSalt = 2ULL << 56;
constexpr std::uint64_t kCoupledSalt = 3ULL << 56;

// Runs body(replica, worker) for every replica index, chunked over workers.
// Any exception from a worker is rethrown on the calling thread.
void parallel_replicas(std::int64_t replicas, int threads,
                       const std::function<void(std::int64_t, int)>& body) {
    if (replicas <= 0) return;
    if (threads <= 1 || replicas == 1) {
        for (std::int64_t r = 0; r < replicas; ++r) body(r, 0);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::int64_t chunk =
        std::max<std::int64_t>(1, replicas / (16LL * threads));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&](int slot) {
        try {
            for (;;) {
                std::int64_t lo = next.fetch_add(chunk);
                if (lo >= replicas) break;
                std::int64_t hi = std::min(lo + chunk, replicas);
                for (std::int64_t r = lo; r < hi; ++r) body(r, slot);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

void require_replicas(std::int64_t replicas) {
    if (replicas < 1)
        throw std::invalid_argument("simulate: replicas must be >= 1");
}

} // namespace

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RANGERENEW_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 4096)
            return static_cast<int>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

DistinctCounter::DistinctCounter() : stamp_(kDense, 0) {}

void DistinctCounter::reset() {
    ++epoch_;
    if (epoch_ == 0) {   // stamp wrap after 2^32 resets
        std::fill(stamp_.begin(), stamp_.end(), 0u);
        epoch_ = 1;
    }
    overflow_.clear();
    count_ = 0;
}

void DistinctCounter::insert(std::int64_t i) {
    if (i >= 1 && i <= kDense) {
        std::uint32_t& s = stamp_[static_cast<std::size_t>(i - 1)];
        if (s != epoch_) {
            s = epoch_;
            ++count_;
        }
    } else if (overflow_.insert(i).second) {
        ++count_;
    }
}

PoissonizedPlan build_poissonized_plan(const DiscreteLaw& law, double t,
                                       double tv_budget) {
    if (!(t > 0.0))
        throw std::domain_error("build_poissonized_plan: t must be > 0");
    if (!(tv_budget > 0.0))
        throw std::domain_error("build_poissonized_plan: tv_budget must be > 0");

    PoissonizedPlan plan;
    plan.t = t;

    auto hit = [&](std::int64_t i) { return -std::expm1(-t * law.pmf(i)); };

    std::int64_t head;
    if (law.support_size() >= 0) {
        head = law.support_size();
        plan.tail_lambda = 0.0;
        plan.tv_bound = 0.0;
    } else {
        head = std::max<std::int64_t>(64, law.series_head_cutoff(t));
        while (tail_hit_sq_sum(law, t, head).upper() > tv_budget) {
            if (head > (1LL << 40))
                throw std::runtime_error(
                    "build_poissonized_plan: cannot meet tv budget");
            head *= 2;
        }
        // trim the overshoot from doubling
        std::int64_t lo = head / 2, hi = head;
        while (lo + 1 < hi) {
            std::int64_t mid = lo + (hi - lo) / 2;
            if (tail_hit_sq_sum(law, t, mid).upper() > tv_budget)
                lo = mid;
            else
                hi = mid;
        }
        head = hi;
        CertifiedValue lam = tail_hit_sum(law, t, head);
        CertifiedValue sq = tail_hit_sq_sum(law, t, head);
        plan.tail_lambda = std::max(0.0, lam.value);
        plan.tv_bound = sq.upper() + lam.abs_error;
    }
    plan.head = head;

    std::int64_t dense = 0;
    while (dense < head && hit(dense + 1) > 0.2) ++dense;
    plan.dense_p.reserve(static_cast<std::size_t>(dense));
    for (std::int64_t i = 1; i <= dense; ++i) plan.dense_p.push_back(hit(i));

    for (std::int64_t lo = dense + 1; lo <= head;) {
        double q = hit(lo);
        if (q <= 0.0) break;   // atoms are sorted, the rest are zero too
        PoissonizedPlan::Block blk;
        blk.lo = lo;
        blk.hi = std::min(head, 2 * lo - 1);
        blk.q = q;
        blk.log1p_neg_q = std::log1p(-q);
        plan.blocks.push_back(blk);
        lo = blk.hi + 1;
    }
    return plan;
}

std::int64_t run_poissonized_replica(const DiscreteLaw& law,
                                     const PoissonizedPlan& plan,
                                     Philox& rng) {
    std::int64_t count = 0;
    for (double p : plan.dense_p)
        if (rng.next_double() < p) ++count;
    const double t = plan.t;
    for (const auto& blk : plan.blocks) {
        std::int64_t i = blk.lo;
        for (;;) {
            i += rng.geometric_skips(blk.log1p_neg_q);
            if (i > blk.hi) break;
            double p = -std::expm1(-t * law.pmf(i));
            if (rng.next_double() * blk.q < p) ++count;
            ++i;
        }
    }
    if (plan.tail_lambda > 0.0) count += rng.poisson(plan.tail_lambda);
    return count;
}

SimBatch simulate_direct(const DiscreteLaw& law, std::int64_t n,
                         std::int64_t replicas, std::uint64_t seed,
                         int threads) {
    if (n < 0) throw std::invalid_argument("simulate_direct: n must be >= 0");
    require_replicas(replicas);
    int workers = resolve_threads(threads);

    SimBatch batch;
    batch.law_spec = law.spec_string();
    batch.mode = "direct";
    batch.n = n;
    batch.seed = seed;
    batch.threads = workers;
    batch.values.resize(static_cast<std::size_t>(replicas));

    std::vector<DistinctCounter> counters(static_cast<std::size_t>(workers));
    parallel_replicas(replicas, workers, [&](std::int64_t r, int w) {
        Philox rng(seed, kDirectSalt | static_cast<std::uint64_t>(r));
        DistinctCounter& dc = counters[static_cast<std::size_t>(w)];
        dc.reset();
        for (std::int64_t k = 0; k < n; ++k) dc.insert(law.sample(rng));
        batch.values[static_cast<std::size_t>(r)] =
            static_cast<double>(dc.count());
    });
    return batch;
}

SimBatch simulate_poissonized(const DiscreteLaw& law, double t,
                              std::int64_t replicas, std::uint64_t seed,
                              int threads, double tv_budget) {
    require_replicas(replicas);
    int workers = resolve_threads(threads);
    PoissonizedPlan plan = build_poissonized_plan(law, t, tv_budget);

    SimBatch batch;
    batch.law_spec = law.spec_string();
    batch.mode = "poissonized";
    batch.t = t;
    batch.seed = seed;
    batch.threads = workers;
    batch.head_cutoff = plan.head;
    batch.tail_lambda = plan.tail_lambda;
    batch.tv_bound = plan.tv_bound;
    batch.values.resize(static_cast<std::size_t>(replicas));

    parallel_replicas(replicas, workers, [&](std::int64_t r, int) {
        Philox rng(seed, kPoissonizedSalt | static_cast<std::uint64_t>(r));
        batch.values[static_cast<std::size_t>(r)] =
            static_cast<double>(run_poissonized_replica(law, plan, rng));
    });
    return batch;
}

SimBatch simulate_coupled(const DiscreteLaw& law, double t,
                          std::int64_t replicas, std::uint64_t seed,
                          int threads) {
    if (!(t >= 0.0) || t > 9.0e15)
        throw std::invalid_argument(
            "simulate_coupled: t must lie in [0, 9e15]");
    require_replicas(replicas);
    int workers = resolve_threads(threads);
    const std::int64_t n0 = static_cast<std::int64_t>(std::floor(t));

    SimBatch batch;
    batch.law_spec = law.spec_string();
    batch.mode = "coupled";
    batch.t = t;
    batch.n = n0;
    batch.seed = seed;
    batch.threads = workers;
    batch.values.resize(static_cast<std::size_t>(replicas));
    batch.values_star.resize(static_cast<std::size_t>(replicas));
    batch.poisson_n.resize(static_cast<std::size_t>(replicas));

    std::vector<DistinctCounter> counters(static_cast<std::size_t>(workers));
    parallel_replicas(replicas, workers, [&](std::int64_t r, int w) {
        Philox rng(seed, kCoupledSalt | static_cast<std::uint64_t>(r));
        DistinctCounter& dc = counters[static_cast<std::size_t>(w)];
        dc.reset();
        std::int64_t nt = rng.poisson(t);
        std::int64_t m = std::max(n0, nt);
        std::int64_t r_n = 0, r_star = 0;
        for (std::int64_t k = 1; k <= m; ++k) {
            dc.insert(law.sample(rng));
            if (k == n0) r_n = dc.count();
            if (k == nt) r_star = dc.count();
        }
        batch.values[static_cast<std::size_t>(r)] = static_cast<double>(r_n);
        batch.values_star[static_cast<std::size_t>(r)] =
            static_cast<double>(r_star);
        batch.poisson_n[static_cast<std::size_t>(r)] =
            static_cast<double>(nt);
    });
    return batch;
}

SummaryStats summarize(const std::vector<double>& values) {
    SummaryStats s;
    s.count = static_cast<std::int64_t>(values.size());
    if (values.empty()) return s;
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    double mean = 0.0;
    for (double v : sorted) mean += v;
    mean /= static_cast<double>(sorted.size());
    double ss = 0.0;
    for (double v : sorted) ss += (v - mean) * (v - mean);
    s.mean = mean;
    s.variance = sorted.size() > 1
                     ? ss / static_cast<double>(sorted.size() - 1)
                     : 0.0;
    auto quantile = [&](double p) {
        // linear interpolation between order statistics
        double pos = p * static_cast<double>(sorted.size() - 1);
        std::size_t k = static_cast<std::size_t>(pos);
        double frac = pos - static_cast<double>(k);
        if (k + 1 >= sorted.size()) return sorted.back();
        return sorted[k] + frac * (sorted[k + 1] - sorted[k]);
    };
    s.q25 = quantile(0.25);
    s.median = quantile(0.5);
    s.q75 = quantile(0.75);
    return s;
}

} // namespace rangerenew

#pragma once

#include "rangerenew/laws.hpp"

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace rangerenew {

// Worker count resolution: an explicit request wins, then the
// RANGERENEW_THREADS environment variable (ignored when unparsable), then
// std::thread::hardware_concurrency(). Always >= 1. Results never depend on
// the worker count: replica r draws from Philox stream r regardless of which
// worker runs it.
int resolve_threads(int requested);

// Replica-level distinct counter. Indices up to 2^20 hit an epoch-stamped
// array (reset is O(1)); larger indices fall back to a hash set.
class DistinctCounter {
public:
    DistinctCounter();
    void reset();
    void insert(std::int64_t i);
    std::int64_t count() const { return count_; }

private:
    static constexpr std::int64_t kDense = 1 << 20;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::unordered_set<std::int64_t> overflow_;
    std::int64_t count_ = 0;
};

// Sampling plan for the Poissonized count R*_t = sum_i Bern(1 - e^{-t pi_i}).
// Indices 1..dense get one uniform each; the sparse head up to `head` is
// covered by dyadic blocks sampled by geometric skips under the envelope
// q = p_{block start} and thinned by p_i/q (exact); everything past `head`
// is replaced by one Poisson(tail_lambda) draw, which perturbs the law of
// each replica by at most tv_bound in total variation (Le Cam).
struct PoissonizedPlan {
    double t = 0.0;
    std::int64_t head = 0;
    std::vector<double> dense_p;   // p_1 .. p_dense
    struct Block {
        std::int64_t lo = 0, hi = 0;   // inclusive index range
        double q = 0.0;                // envelope = p_lo
        double log1p_neg_q = 0.0;
    };
    std::vector<Block> blocks;
    double tail_lambda = 0.0;
    double tv_bound = 0.0;
};

PoissonizedPlan build_poissonized_plan(const DiscreteLaw& law, double t,
                                       double tv_budget = 1e-6);
std::int64_t run_poissonized_replica(const DiscreteLaw& law,
                                     const PoissonizedPlan& plan, Philox& rng);

struct SimBatch {
    std::string law_spec;
    std::string mode;              // "direct", "poissonized" or "coupled"
    double t = 0.0;                // poissonized / coupled
    std::int64_t n = 0;            // direct; floor(t) for coupled
    std::uint64_t seed = 0;
    int threads = 1;               // workers used (does not affect values)
    std::int64_t head_cutoff = 0;  // poissonized plan head
    double tail_lambda = 0.0;
    double tv_bound = 0.0;
    std::vector<double> values;        // R_n, or R*_t for poissonized
    std::vector<double> values_star;   // coupled only: R*_t
    std::vector<double> poisson_n;     // coupled only: N_t
};

// R_n by brute sampling: n draws per replica, distinct values counted.
SimBatch simulate_direct(const DiscreteLaw& law, std::int64_t n,
                         std::int64_t replicas, std::uint64_t seed,
                         int threads = 0);

// R*_t through the block plan above; cost per replica is proportional to
// mu(t), not to t.
SimBatch simulate_poissonized(const DiscreteLaw& law, double t,
                              std::int64_t replicas, std::uint64_t seed,
                              int threads = 0, double tv_budget = 1e-6);

// R_{floor(t)} and R*_t on one shared sample stream per replica:
// N ~ Poisson(t), both counts read off the same sequence, exposing the
// coupling |R*_t - R_n|.
SimBatch simulate_coupled(const DiscreteLaw& law, double t,
                          std::int64_t replicas, std::uint64_t seed,
                          int threads = 0);

struct SummaryStats {
    std::int64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;   // unbiased
    double min = 0.0;
    double max = 0.0;
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
};

SummaryStats summarize(const std::vector<double>& values);

} // namespace rangerenew

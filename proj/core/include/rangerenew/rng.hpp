#pragma once

#include <cstdint>
#include <array>

namespace rangerenew {

// Philox4x32-10 counter-based generator. A stream is identified by
// (master_seed, stream_id); the 64-bit Philox key is a hash of the pair, the
// 128-bit counter advances per 4x32 block. Streams are reproducible
// independently of how work is scheduled across threads, which is what makes
// replica-level parallelism deterministic: replica r always uses stream r.
class Philox {
public:
    Philox(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    // Uniform on [0,1) with 53 random bits.
    double next_double();
    // Uniform on (0,1]: never zero, safe as a log() argument.
    double next_double_pos();

    double normal();                        // standard normal, polar method
    std::int64_t poisson(double lambda);    // exact for any lambda >= 0
    // Number of failures before the first success in Bernoulli(p) trials.
    std::int64_t geometric_skips(double log1p_neg_p);

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_{};
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    double spare_normal_ = 0.0;
    bool have_spare_ = false;
};

} // namespace rangerenew

#pragma once

#include <cstdint>
#include <random>

namespace photonmab {

/// Deterministic pseudo-random stream.
///
/// Wraps std::mt19937_64 and converts raw 64-bit output to uniform doubles
/// in [0, 1) without going through std::uniform_real_distribution, whose
/// output is not pinned by the standard. Identical seeds give identical
/// draw sequences on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform variate in [0, 1), consuming exactly one generator step.
    double next_uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 gen_;
};

/// SplitMix64 finalizer; the usual mixer for deriving seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Per-trial stream seeds derived from (master_seed, trial_index, stream_id).
/// Trials and streams are mutually independent by construction.
inline std::uint64_t derive_seed(std::uint64_t master_seed,
                                 std::uint64_t trial_index,
                                 std::uint64_t stream_id) {
    return splitmix64(splitmix64(splitmix64(master_seed) ^ trial_index) ^ stream_id);
}

/// Stream ids used by the engine: photon routing and slot-machine rewards.
inline constexpr std::uint64_t kStreamRouting = 0;
inline constexpr std::uint64_t kStreamRewards = 1;

}  // namespace photonmab

#ifndef QPUFSIM_RNG_HPP
#define QPUFSIM_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace qpufsim {

/// Deterministic per-stream RNG. A stream is identified by
/// (master_seed, stream_index); identical identifiers reproduce
/// identical draw sequences, so trials can run in any order or
/// on any number of workers without changing results.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0)
        : master_seed_(master_seed), stream_index_(stream_index),
          engine_(mix(master_seed, stream_index)) {}

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    /// Derive an independent substream; used for per-trial streams.
    RngStream substream(std::uint64_t index) const {
        return RngStream(mix(master_seed_, stream_index_), index);
    }

    double uniform() { return unif_(engine_); }

    double gaussian() { return normal_(engine_); }

    std::complex<double> complex_gaussian() {
        return {normal_(engine_), normal_(engine_)};
    }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
    }

private:
    // splitmix64-style finalizer over both identifiers
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

} // namespace qpufsim

#endif

#pragma once

#include <cmath>
#include <cstdint>

namespace rbm {

// Counter-based pseudo-random stream: the k-th output is a pure function of
// (state0, k), so sub-streams for parallel chunks can be split from a master
// seed without any sequential dependency between chunks.
//
// The generator is splitmix64 (Steele, Lea, Vigna), whose state walks a
// Weyl sequence; splitting is done by hashing (seed, stream id) into a
// fresh state0.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) {
        state_ = mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0xbf58476d1ce4e5b9ULL));
    }

    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    std::uint64_t operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // uniform in [0, 1)
    double uniform() {
        return double((*this)() >> 11) * 0x1.0p-53;
    }

    // uniform in (0, 1], safe as a log() argument
    double uniform_pos() {
        return double(((*this)() >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal pair, Box-Muller (explicit so the sequence is not
    // implementation-defined like std::normal_distribution)
    void normal_pair(double& n1, double& n2) {
        double u = uniform_pos();
        double v = uniform();
        double r = std::sqrt(-2.0 * std::log(u));
        n1 = r * std::cos(6.283185307179586477 * v);
        n2 = r * std::sin(6.283185307179586477 * v);
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double a, b;
        normal_pair(a, b);
        spare_ = b;
        have_spare_ = true;
        return a;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace rbm

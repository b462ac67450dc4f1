#pragma once

#include "jetclass/scalar.hpp"

#include <cstdint>

namespace jetclass {

/// splitmix64: tiny deterministic generator so seeded runs are reproducible
/// across platforms (std::mt19937 distributions are not portable).
class Prng {
  public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi] inclusive.
    long next_int(long lo, long hi) {
        return lo + static_cast<long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double next_double(double lo, double hi) {
        double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    /// Small rational with numerator in [-num_max, num_max] and denominator
    /// in [1, den_max].
    Rational next_rational(long num_max, long den_max) {
        Rational q(next_int(-num_max, num_max), next_int(1, den_max));
        q.canonicalize();
        return q;
    }

    Rational next_nonzero_rational(long num_max, long den_max) {
        for (;;) {
            Rational q = next_rational(num_max, den_max);
            if (sgn(q) != 0) return q;
        }
    }

  private:
    std::uint64_t state_;
};

} // namespace jetclass

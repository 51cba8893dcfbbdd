#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace limvam {

/// Counter-based deterministic generator (splitmix64 core). Streams are keyed
/// by a seed plus an arbitrary tag list, so parallel generation per
/// (seed, view, variable) is reproducible across platforms and independent of
/// evaluation order.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags = {}) {
        state_ = mix(seed + kGolden);
        for (std::uint64_t tag : tags) state_ = mix(state_ ^ (tag + kGolden));
    }

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix(state_);
    }

    /// Uniform on (0, 1] (never 0, safe under log).
    double uniform() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal (Box-Muller, one spare cached).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 2.0 * M_PI * uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Unit-variance Laplace via inverse CDF (scale 1/sqrt(2)).
    double laplace() {
        const double u = uniform() - 0.5;
        const double b = 1.0 / std::sqrt(2.0);
        return -b * (u < 0.0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::abs(u));
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang, with the shape < 1 boost.
    double gamma(double shape) {
        if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    /// Unit-variance generalized normal with shape beta (beta = 2 is the
    /// standard Gaussian, beta < 2 heavy-tailed). Gamma-transform method:
    /// |x|^beta ~ Gamma(1/beta), then scale to unit variance.
    double gennorm(double beta) {
        const double g = std::pow(gamma(1.0 / beta), 1.0 / beta);
        const double sign = (next_u64() & 1u) ? 1.0 : -1.0;
        const double alpha = std::sqrt(std::tgamma(1.0 / beta) / std::tgamma(3.0 / beta));
        return sign * g * alpha;
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace limvam

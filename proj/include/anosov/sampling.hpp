#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace anosov {

/// Additive-recurrence low-discrepancy sequence (R_d generator built from the
/// generalized golden ratio).  Deterministic: the seed only offsets the start
/// index, so identical (dim, seed) streams are byte-identical across runs.
class QuasiRandom {
public:
    explicit QuasiRandom(int dim, std::uint64_t seed = 0) : dim_(dim), n_(seed) {
        double phi = 2.0;
        for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
        alpha_.resize(dim);
        double a = 1.0;
        for (int k = 0; k < dim; ++k) {
            a /= phi;
            alpha_[k] = a;
        }
    }

    /// Next point in [0,1)^dim.
    std::vector<double> next() {
        ++n_;
        std::vector<double> x(dim_);
        for (int k = 0; k < dim_; ++k) {
            double v = 0.5 + alpha_[k] * static_cast<double>(n_);
            x[k] = v - std::floor(v);
        }
        return x;
    }

private:
    int dim_;
    std::uint64_t n_;
    std::vector<double> alpha_;
};

/// splitmix64, used where tests want scattered (but reproducible) samples.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0,1).
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }
    /// Uniform in [a,b).
    double uniform(double a, double b) { return a + (b - a) * next_double(); }

private:
    std::uint64_t state_;
};

}  // namespace anosov

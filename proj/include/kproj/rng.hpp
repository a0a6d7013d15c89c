#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kproj/scalar.hpp"

namespace kproj {

// Seeded generator used everywhere randomness is needed.  A fixed seed must
// reproduce every sampled artifact byte for byte, so nothing in the library
// draws from any other source.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }

    // Derive an independent stream; used for per-word/per-sample seeding.
    Rng fork(std::uint64_t counter) {
        std::seed_seq seq{gen_(), counter};
        std::mt19937_64 g(seq);
        Rng r(0);
        r.gen_ = g;
        return r;
    }

    Scalar gaussian_scalar(Field f) {
        Scalar s = Scalar::zero(f);
        for (int n = 0; n < real_dim(f); ++n) s.c[n] = gaussian();
        return s;
    }

    // Uniform on the unit sphere of K ~ R^r.
    Scalar unit_scalar(Field f) {
        for (;;) {
            Scalar s = gaussian_scalar(f);
            const double a = abs(s);
            if (a > 1e-12) return s * (1.0 / a);
        }
    }

    Scalar imaginary_scalar(Field f, double scale = 1.0) {
        Scalar s = Scalar::zero(f);
        for (int n = 1; n < real_dim(f); ++n) s.c[n] = scale * gaussian();
        return s;
    }

    std::vector<Scalar> gaussian_vector(Field f, int n) {
        std::vector<Scalar> v(n);
        for (auto& s : v) s = gaussian_scalar(f);
        return v;
    }

    // Uniform in the unit ball of K^n ~ R^{rn}.
    std::vector<Scalar> ball_vector(Field f, int n) {
        std::vector<Scalar> v = gaussian_vector(f, n);
        double norm2 = 0;
        for (const auto& s : v) norm2 += abs2(s);
        if (norm2 < 1e-30) return ball_vector(f, n);
        const double radius = std::pow(uniform(), 1.0 / (real_dim(f) * n));
        const double scale = radius / std::sqrt(norm2);
        for (auto& s : v) s = s * scale;
        return v;
    }

    std::vector<Scalar> unit_vector(Field f, int n) {
        std::vector<Scalar> v = gaussian_vector(f, n);
        double norm2 = 0;
        for (const auto& s : v) norm2 += abs2(s);
        if (norm2 < 1e-30) return unit_vector(f, n);
        const double scale = 1.0 / std::sqrt(norm2);
        for (auto& s : v) s = s * scale;
        return v;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace kproj

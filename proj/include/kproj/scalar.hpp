#pragma once

#include <array>
#include <cmath>
#include <string>

#include "kproj/errors.hpp"

namespace kproj {

// The three real division algebras.
enum class Field { Real, Complex, Quaternion };

constexpr int real_dim(Field f) {
    switch (f) {
        case Field::Real: return 1;
        case Field::Complex: return 2;
        case Field::Quaternion: return 4;
    }
    return 0;
}

const char* field_code(Field f);       // "r" | "c" | "h"
Field field_from_code(const std::string& code);

// An element of R, C or H stored in the common 4-coefficient layout
// a + b*i + c*j + d*k; coefficients beyond real_dim(field) stay exactly zero.
struct Scalar {
    Field field = Field::Real;
    std::array<double, 4> c{0, 0, 0, 0};

    Scalar() = default;
    Scalar(Field f, double a, double b = 0, double cc = 0, double d = 0) : field(f), c{a, b, cc, d} {
        const int r = real_dim(f);
        for (int k = r; k < 4; ++k) {
            if (c[k] != 0.0) throw validation_error("scalar component outside the field's real dimension");
        }
    }

    static Scalar zero(Field f) { return Scalar(f, 0); }
    static Scalar one(Field f) { return Scalar(f, 1); }
    static Scalar real(Field f, double a) { return Scalar(f, a); }
    static Scalar i(Field f) {
        if (f == Field::Real) throw validation_error("no imaginary unit in R");
        return Scalar(f, 0, 1);
    }
    static Scalar j() { return Scalar(Field::Quaternion, 0, 0, 1); }
    static Scalar k() { return Scalar(Field::Quaternion, 0, 0, 0, 1); }

    double re() const { return c[0]; }
    bool operator==(const Scalar&) const = default;
};

inline void check_same_field(const Scalar& x, const Scalar& y) {
    if (x.field != y.field) throw validation_error("scalar field tags do not match");
}

inline Scalar operator+(const Scalar& x, const Scalar& y) {
    check_same_field(x, y);
    return {x.field, x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2], x.c[3] + y.c[3]};
}

inline Scalar operator-(const Scalar& x, const Scalar& y) {
    check_same_field(x, y);
    return {x.field, x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2], x.c[3] - y.c[3]};
}

inline Scalar operator-(const Scalar& x) { return {x.field, -x.c[0], -x.c[1], -x.c[2], -x.c[3]}; }

// Hamilton product from i^2 = j^2 = k^2 = ijk = -1.  The same expansion is
// correct for R and C because their trailing coefficients are zero.
inline Scalar operator*(const Scalar& x, const Scalar& y) {
    check_same_field(x, y);
    const auto& a = x.c;
    const auto& b = y.c;
    return {x.field,
            a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

inline Scalar operator*(const Scalar& x, double t) { return {x.field, x.c[0] * t, x.c[1] * t, x.c[2] * t, x.c[3] * t}; }
inline Scalar operator*(double t, const Scalar& x) { return x * t; }

inline Scalar conj(const Scalar& x) { return {x.field, x.c[0], -x.c[1], -x.c[2], -x.c[3]}; }

inline double abs2(const Scalar& x) {
    return x.c[0] * x.c[0] + x.c[1] * x.c[1] + x.c[2] * x.c[2] + x.c[3] * x.c[3];
}

inline double abs(const Scalar& x) { return std::sqrt(abs2(x)); }

inline bool is_zero(const Scalar& x, double eps = 0.0) { return abs2(x) <= eps * eps; }

// x = Real(x) + Imag(x), the imaginary part living in K_P.
inline double real_part(const Scalar& x) { return x.c[0]; }
inline Scalar imag_part(const Scalar& x) { return {x.field, 0, x.c[1], x.c[2], x.c[3]}; }
inline bool purely_imaginary(const Scalar& x, double eps = 0.0) { return std::abs(x.c[0]) <= eps; }

inline Scalar inverse(const Scalar& x) {
    const double n = abs2(x);
    if (n == 0.0) throw validation_error("inverse of zero scalar");
    return conj(x) * (1.0 / n);
}

// Right division x * y^{-1}; this is the one the Moebius action (az+b)(cz+d)^{-1} uses.
inline Scalar rdiv(const Scalar& x, const Scalar& y) { return x * inverse(y); }

// Left division y^{-1} * x.
inline Scalar ldiv(const Scalar& y, const Scalar& x) { return inverse(y) * x; }

std::string to_string(const Scalar& x);

}  // namespace kproj

#pragma once

// Small fixed-size vector/matrix types. Points of R^n (n <= 3) are embedded in
// R^3 with the unused trailing components held at zero, so dot products and
// matrix products need no dimension argument.

#include <array>
#include <cmath>

namespace nlg {

struct Vec3 {
    std::array<double, 3> c{0.0, 0.0, 0.0};

    constexpr Vec3() = default;
    constexpr Vec3(double x, double y = 0.0, double z = 0.0) : c{x, y, z} {}

    constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    Vec3& operator+=(const Vec3& o) {
        c[0] += o.c[0]; c[1] += o.c[1]; c[2] += o.c[2];
        return *this;
    }
    Vec3& operator-=(const Vec3& o) {
        c[0] -= o.c[0]; c[1] -= o.c[1]; c[2] -= o.c[2];
        return *this;
    }
    Vec3& operator*=(double s) {
        c[0] *= s; c[1] *= s; c[2] *= s;
        return *this;
    }

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

inline Vec3 unit_vector(int axis) {
    Vec3 e;
    e[axis] = 1.0;
    return e;
}

struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};

    constexpr double& operator()(int i, int j) {
        return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    constexpr double operator()(int i, int j) const {
        return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    static Mat3 identity(int n) {
        Mat3 a;
        for (int i = 0; i < n; ++i) a(i, i) = 1.0;
        return a;
    }

    friend bool operator==(const Mat3&, const Mat3&) = default;
};

inline Vec3 operator*(const Mat3& a, const Vec3& x) {
    Vec3 y;
    for (int i = 0; i < 3; ++i) y[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
    return y;
}

inline Mat3 operator*(double s, Mat3 a) {
    for (auto& row : a.m)
        for (auto& v : row) v *= s;
    return a;
}

inline Mat3 operator+(Mat3 a, const Mat3& b) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) += b(i, j);
    return a;
}

inline Mat3 transpose(const Mat3& a) {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = a(j, i);
    return t;
}

/// Symmetric part (A + A^T)/2. Idempotent in floating point: sym(sym(A)) == sym(A).
inline Mat3 sym(const Mat3& a) {
    Mat3 s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
    return s;
}

inline double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

inline double frobenius2(const Mat3& a) {
    double s = 0.0;
    for (const auto& row : a.m)
        for (double v : row) s += v * v;
    return s;
}

/// Quadratic form (S xi) . xi evaluated on the symmetric part S of `a`.
inline double quadratic_form(const Mat3& a, const Vec3& xi) {
    const Mat3 s = sym(a);
    return dot(s * xi, xi);
}

}  // namespace nlg

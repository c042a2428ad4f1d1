#pragma once

#include <algorithm>
#include <cmath>

#include "zs/common.hpp"

namespace zs {

// 2x2 complex matrix in the layout
//   [ m1  m2 ]
//   [ m3  m4 ]
// Fundamental solutions carried in this type satisfy |det - 1| <= solver tolerance.
struct Mat2 {
    cd m1{0.0, 0.0}, m2{0.0, 0.0}, m3{0.0, 0.0}, m4{0.0, 0.0};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    cd trace() const { return m1 + m4; }
    cd antitrace() const { return m2 + m3; }
    cd det() const { return m1 * m4 - m2 * m3; }

    // adjugate; equals the inverse when det == 1
    Mat2 adj() const { return {m4, -m2, -m3, m1}; }

    friend Mat2 operator+(const Mat2& a, const Mat2& b)
    {
        return {a.m1 + b.m1, a.m2 + b.m2, a.m3 + b.m3, a.m4 + b.m4};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b)
    {
        return {a.m1 - b.m1, a.m2 - b.m2, a.m3 - b.m3, a.m4 - b.m4};
    }
    friend Mat2 operator*(const Mat2& a, const Mat2& b)
    {
        return {a.m1 * b.m1 + a.m2 * b.m3, a.m1 * b.m2 + a.m2 * b.m4,
                a.m3 * b.m1 + a.m4 * b.m3, a.m3 * b.m2 + a.m4 * b.m4};
    }
    friend Mat2 operator*(cd s, const Mat2& a) { return {s * a.m1, s * a.m2, s * a.m3, s * a.m4}; }
    friend Mat2 operator*(const Mat2& a, cd s) { return s * a; }

    double frobenius() const
    {
        return std::sqrt(std::norm(m1) + std::norm(m2) + std::norm(m3) + std::norm(m4));
    }

    double max_abs() const
    {
        return std::max(std::max(std::abs(m1), std::abs(m2)), std::max(std::abs(m3), std::abs(m4)));
    }

    // spectral norm (largest singular value)
    double opnorm() const
    {
        const double f2 = std::norm(m1) + std::norm(m2) + std::norm(m3) + std::norm(m4);
        const double d = std::abs(det());
        const double disc = std::max(0.0, f2 * f2 - 4.0 * d * d);
        return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
    }
};

inline Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }

// E_lambda(x) = diag(e^{-i lambda x}, e^{i lambda x})
inline Mat2 E_lambda(cd lambda, double x)
{
    const cd e = std::exp(cd{0.0, -1.0} * lambda * x);
    return {e, 0.0, 0.0, 1.0 / e};
}

// R = diag(i, -i)
inline Mat2 R_mat() { return {iu, 0.0, 0.0, -iu}; }

// off-diagonal potential matrix [[0, phi1], [phi2, 0]]
inline Mat2 Phi_mat(cd phi1, cd phi2) { return {0.0, phi1, phi2, 0.0}; }

}  // namespace zs

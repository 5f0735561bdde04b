// Exact 2x2 integer matrices, used as the second evaluation oracle for the
// Z/2 * Z/3 model (standard images in PSL(2,Z)).  Equality is up to sign;
// canonical form flips so the first nonzero entry is positive.

#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "pingpong/errors.hpp"

namespace pingpong {

struct Mat2 {
    // row major: [a b; c d]
    std::array<long long, 4> m{1, 0, 0, 1};

    static Mat2 identity() { return Mat2{}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        auto mul = [](long long a, long long b) {
            __int128 v = (__int128)a * b;
            if (v > INT64_MAX || v < INT64_MIN)
                throw arithmetic_overflow_error("matrix entry overflow");
            return (long long)v;
        };
        auto add = [](long long a, long long b) {
            __int128 v = (__int128)a + b;
            if (v > INT64_MAX || v < INT64_MIN)
                throw arithmetic_overflow_error("matrix entry overflow");
            return (long long)v;
        };
        Mat2 r;
        r.m[0] = add(mul(x.m[0], y.m[0]), mul(x.m[1], y.m[2]));
        r.m[1] = add(mul(x.m[0], y.m[1]), mul(x.m[1], y.m[3]));
        r.m[2] = add(mul(x.m[2], y.m[0]), mul(x.m[3], y.m[2]));
        r.m[3] = add(mul(x.m[2], y.m[1]), mul(x.m[3], y.m[3]));
        return r;
    }

    Mat2 canonical_sign() const {
        for (long long v : m) {
            if (v > 0) return *this;
            if (v < 0) { Mat2 r; for (int i = 0; i < 4; ++i) r.m[i] = -m[i]; return r; }
        }
        return *this;
    }

    // equality in PSL: M == +-N
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.canonical_sign().m == y.canonical_sign().m;
    }
    friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

    bool is_projective_identity() const { return *this == identity(); }

    long long trace() const { return m[0] + m[3]; }

    std::string str() const {
        return "[[" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "],[" +
               std::to_string(m[2]) + "," + std::to_string(m[3]) + "]]";
    }
};

inline Mat2 mat2_power(Mat2 base, long long e) {
    if (e < 0) {
        // inverse of an integer matrix with det +-1: adj / det
        long long det = base.m[0] * base.m[3] - base.m[1] * base.m[2];
        if (det != 1 && det != -1)
            throw domain_violation("matrix inverse requires det +-1");
        Mat2 inv;
        inv.m = {base.m[3] * det, -base.m[1] * det, -base.m[2] * det, base.m[0] * det};
        return mat2_power(inv, -e);
    }
    Mat2 acc = Mat2::identity();
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

}  // namespace pingpong

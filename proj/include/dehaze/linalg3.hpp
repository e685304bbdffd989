#pragma once

#include <array>
#include <cmath>

namespace dehaze {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(Vec3 a) {
    double n = norm(a);
    return n > 0 ? a * (1.0 / n) : Vec3{0, 0, 0};
}

// Symmetric 3x3 matrix, row major.
using Mat3 = std::array<std::array<double, 3>, 3>;

struct Eigen3 {
    std::array<double, 3> values{};   // descending
    std::array<Vec3, 3> vectors{};    // unit length, values[i] <-> vectors[i]
};

// Cyclic Jacobi rotations. Fine for symmetric 3x3: a handful of sweeps
// reaches machine precision.
inline Eigen3 eigen_symmetric(Mat3 a) {
    Mat3 v{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int sweep = 0; sweep < 32; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        if (off < 1e-15) break;
        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Eigen3 out;
    std::array<int, 3> idx = {0, 1, 2};
    std::array<double, 3> d = {a[0][0], a[1][1], a[2][2]};
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (d[idx[j]] > d[idx[i]]) std::swap(idx[i], idx[j]);
        }
    }
    for (int i = 0; i < 3; ++i) {
        out.values[i] = d[idx[i]];
        out.vectors[i] = normalized({v[0][idx[i]], v[1][idx[i]], v[2][idx[i]]});
    }
    return out;
}

}  // namespace dehaze

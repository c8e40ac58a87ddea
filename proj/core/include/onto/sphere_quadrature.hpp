#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace onto::quad {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

/// Integral over the unit sphere (per unit solid angle) of a function that is
/// smooth except across the great circles orthogonal to `cuts`.
///
/// Product rule in polar coordinates about `pole`: the polar range
/// [0, theta_max] is split wherever a cut circle is tangent to a latitude,
/// each piece gets `n` Gauss-Legendre nodes under an endpoint-clustering
/// map, and each latitude ring is split at its crossings with the cut
/// circles, with `n` Gauss-Legendre nodes per arc.
double integrate_sphere(const std::function<double(const Vec3&)>& f, const Vec3& pole, std::span<const Vec3> cuts,
                        int n, double theta_max = M_PI);

}  // namespace onto::quad

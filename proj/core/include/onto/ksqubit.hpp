#pragma once

#include <optional>
#include <vector>

#include "onto/sphere_quadrature.hpp"
#include "onto/states.hpp"

namespace onto::ks {

/// Smallest accepted quadrature resolution.
inline constexpr int kMinResolution = 64;

/// Point on the unit sphere; a qubit pure state or an ontic state.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    /// Throws InvalidArgument unless x^2 + y^2 + z^2 = 1 within 1e-12.
    static BlochVector make(double x, double y, double z);
    /// Polar angle theta from +z, azimuth phi.
    static BlochVector from_angles(double theta, double phi);

    BlochVector operator-() const { return {-x, -y, -z}; }
    quad::Vec3 vec() const { return {x, y, z}; }
};

double dot(const BlochVector& a, const BlochVector& b);

/// Qubit state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
PureState to_state(const BlochVector& v);

/// Hemisphere model: (1/pi) psi.lambda where positive, else 0 (per unit solid angle).
double mu_density(const BlochVector& psi, const BlochVector& lambda);

/// 1 iff a.lambda >= 0. For the basis {a, -a} the two responses sum to one
/// except on the measure-zero circle a.lambda = 0, where a wins.
int response(const BlochVector& a, const BlochVector& lambda);

/// Integral of response(a, .) mu_density(psi, .); reproduces (1 + a.psi)/2.
double born_quadrature(const BlochVector& a, const BlochVector& psi, int n = kMinResolution);

/// Integral of mu_density(psi, .) over the sphere.
double density_normalization(const BlochVector& psi, int n = kMinResolution);

/// Integral of min(mu_density(psi, .), mu_density(phi, .)).
double classical_overlap_ks(const BlochVector& psi, const BlochVector& phi, int n = kMinResolution);

struct GridRow {
    double theta = 0.0;
    double classical = 0.0;
    double quantum = 0.0;
    /// L_C / L_Q; empty at theta = pi where L_Q = 0.
    std::optional<double> ratio;
};

/// L_C, L_Q and their ratio between |0> and the state at Bloch angle theta,
/// for `points` evenly spaced angles in [0, pi].
std::vector<GridRow> overlap_grid(int points, int n = kMinResolution);

}  // namespace onto::ks

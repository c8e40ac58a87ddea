#include "onto/ksqubit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "onto/error.hpp"

namespace onto::ks {
namespace {

void require_unit(const BlochVector& v, const char* what) {
    const double n2 = v.x * v.x + v.y * v.y + v.z * v.z;
    if (!(std::abs(n2 - 1.0) <= 1e-12)) throw InvalidArgument(std::string(what) + " is not a unit Bloch vector");
}

void require_resolution(int n) {
    if (n < kMinResolution)
        throw InvalidArgument("quadrature resolution " + std::to_string(n) + " is too low (minimum " +
                              std::to_string(kMinResolution) + ")");
}

double density(const quad::Vec3& psi, const quad::Vec3& lambda) {
    const double c = quad::dot(psi, lambda);
    return c > 0.0 ? c / M_PI : 0.0;
}

}  // namespace

BlochVector BlochVector::make(double x, double y, double z) {
    BlochVector v{x, y, z};
    require_unit(v, "input");
    return v;
}

BlochVector BlochVector::from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double dot(const BlochVector& a, const BlochVector& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

PureState to_state(const BlochVector& v) {
    require_unit(v, "state");
    const double theta = std::acos(std::clamp(v.z, -1.0, 1.0));
    const double phi = std::atan2(v.y, v.x);
    const Complex amps[2] = {Complex(std::cos(theta / 2), 0.0), std::polar(std::sin(theta / 2), phi)};
    return make_state(amps);
}

double mu_density(const BlochVector& psi, const BlochVector& lambda) {
    require_unit(psi, "psi");
    require_unit(lambda, "lambda");
    return density(psi.vec(), lambda.vec());
}

int response(const BlochVector& a, const BlochVector& lambda) { return dot(a, lambda) >= 0.0 ? 1 : 0; }

double born_quadrature(const BlochVector& a, const BlochVector& psi, int n) {
    require_unit(a, "a");
    require_unit(psi, "psi");
    require_resolution(n);
    const quad::Vec3 av = a.vec();
    const quad::Vec3 pv = psi.vec();
    const quad::Vec3 cuts[] = {av};
    return quad::integrate_sphere(
        [&](const quad::Vec3& l) { return quad::dot(av, l) >= 0.0 ? density(pv, l) : 0.0; }, pv, cuts, n, M_PI / 2);
}

double density_normalization(const BlochVector& psi, int n) {
    require_unit(psi, "psi");
    require_resolution(n);
    const quad::Vec3 pv = psi.vec();
    return quad::integrate_sphere([&](const quad::Vec3& l) { return density(pv, l); }, pv, {}, n, M_PI / 2);
}

double classical_overlap_ks(const BlochVector& psi, const BlochVector& phi, int n) {
    require_unit(psi, "psi");
    require_unit(phi, "phi");
    require_resolution(n);
    const quad::Vec3 pv = psi.vec();
    const quad::Vec3 fv = phi.vec();
    const quad::Vec3 cuts[] = {fv, fv - pv};
    return quad::integrate_sphere(
        [&](const quad::Vec3& l) { return std::min(density(pv, l), density(fv, l)); }, pv, cuts, n, M_PI / 2);
}

std::vector<GridRow> overlap_grid(int points, int n) {
    if (points < 2) throw InvalidArgument("overlap grid needs at least two points");
    require_resolution(n);
    const BlochVector north{0.0, 0.0, 1.0};
    const PureState zero = to_state(north);
    std::vector<GridRow> rows;
    rows.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        GridRow row;
        row.theta = M_PI * i / (points - 1);
        const BlochVector other = i + 1 == points ? BlochVector{0.0, 0.0, -1.0} : BlochVector::from_angles(row.theta, 0.0);
        row.classical = classical_overlap_ks(north, other, n);
        row.quantum = quantum_overlap(zero, to_state(other));
        if (row.quantum > 0.0) row.ratio = row.classical / row.quantum;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace onto::ks

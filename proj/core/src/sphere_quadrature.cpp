#include "onto/sphere_quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "onto/error.hpp"

namespace onto::quad {
namespace {

GaussLegendre compute_gauss_legendre(int n) {
    GaussLegendre gl;
    gl.nodes.resize(static_cast<std::size_t>(n));
    gl.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.nodes[static_cast<std::size_t>(i)] = -x;
        gl.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        gl.weights[static_cast<std::size_t>(i)] = w;
        gl.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
    if (n < 1) throw InvalidArgument("Gauss-Legendre order must be positive");
    static std::mutex mutex;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

double integrate_sphere(const std::function<double(const Vec3&)>& f, const Vec3& pole, std::span<const Vec3> cuts,
                        int n, double theta_max) {
    const double pn = norm(pole);
    if (!(pn > 0.0)) throw InvalidArgument("quadrature pole must be nonzero");
    const Vec3 p = (1.0 / pn) * pole;
    // e1 orthogonal to p, built from the axis least aligned with it.
    Vec3 axis{1.0, 0.0, 0.0};
    if (std::abs(p.y) < std::abs(p.x) && std::abs(p.y) <= std::abs(p.z)) axis = {0.0, 1.0, 0.0};
    else if (std::abs(p.z) < std::abs(p.x)) axis = {0.0, 0.0, 1.0};
    Vec3 e1 = cross(p, axis);
    e1 = (1.0 / norm(e1)) * e1;
    const Vec3 e2 = cross(p, e1);

    struct Cut {
        double n1, n2, n3;
    };
    std::vector<Cut> local;
    std::vector<double> breaks{0.0, theta_max};
    for (const Vec3& c : cuts) {
        const double cn = norm(c);
        if (!(cn > 1e-14)) continue;
        const Cut k{dot(c, e1) / cn, dot(c, e2) / cn, dot(c, p) / cn};
        local.push_back(k);
        const double gamma = std::acos(std::clamp(std::abs(k.n3), 0.0, 1.0));
        for (double t : {M_PI / 2 - gamma, M_PI / 2 + gamma})
            if (t > 0.0 && t < theta_max) breaks.push_back(t);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return b - a < 1e-14; }),
                 breaks.end());

    const GaussLegendre& gl = gauss_legendre(n);
    const double two_pi = 2.0 * M_PI;
    double total = 0.0;
    std::vector<double> crossings;
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
        const double mid = 0.5 * (breaks[s] + breaks[s + 1]);
        const double half = 0.5 * (breaks[s + 1] - breaks[s]);
        double segment = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double t = gl.nodes[i];
            const double u = 0.5 * (3.0 * t - t * t * t);
            const double jac = 1.5 * (1.0 - t * t);
            const double theta = mid + half * u;
            const double st = std::sin(theta);
            const double ct = std::cos(theta);

            crossings.clear();
            for (const Cut& k : local) {
                const double r = std::hypot(k.n1, k.n2) * st;
                const double rhs = -k.n3 * ct;
                if (r <= std::abs(rhs)) continue;
                const double phi0 = std::atan2(k.n2, k.n1);
                const double delta = std::acos(std::clamp(rhs / r, -1.0, 1.0));
                for (double phi : {phi0 - delta, phi0 + delta}) {
                    phi = std::fmod(phi, two_pi);
                    if (phi < 0.0) phi += two_pi;
                    crossings.push_back(phi);
                }
            }
            std::sort(crossings.begin(), crossings.end());
            if (crossings.empty()) crossings.push_back(0.0);
            double ring = 0.0;
            for (std::size_t a = 0; a < crossings.size(); ++a) {
                const double lo = crossings[a];
                const double hi = a + 1 < crossings.size() ? crossings[a + 1] : crossings.front() + two_pi;
                if (hi - lo <= 0.0) continue;
                const double amid = 0.5 * (lo + hi);
                const double ahalf = 0.5 * (hi - lo);
                double arc = 0.0;
                for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
                    const double phi = amid + ahalf * gl.nodes[j];
                    const double cp = std::cos(phi);
                    const double sp = std::sin(phi);
                    const Vec3 lambda{st * cp * e1.x + st * sp * e2.x + ct * p.x,
                                      st * cp * e1.y + st * sp * e2.y + ct * p.y,
                                      st * cp * e1.z + st * sp * e2.z + ct * p.z};
                    arc += gl.weights[j] * f(lambda);
                }
                ring += arc * ahalf;
            }
            segment += gl.weights[i] * jac * st * ring;
        }
        total += segment * half;
    }
    return total;
}

}  // namespace onto::quad

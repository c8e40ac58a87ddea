#include "onto/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#include "onto/error.hpp"

namespace onto {
namespace {

void require_same_dim(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim())
        throw InvalidArgument("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                              std::to_string(b.dim()));
}

// Sum s_i t_i for two rational-path states.
long long sign_dot(const PureState& a, const PureState& b) {
    long long acc = 0;
    const auto sa = a.signs();
    const auto sb = b.signs();
    for (std::size_t i = 0; i < sa.size(); ++i) acc += static_cast<long long>(sa[i]) * sb[i];
    return acc;
}

}  // namespace

PureState PureState::from_amplitudes(std::span<const Complex> amplitudes) {
    if (amplitudes.size() < 2)
        throw InvalidArgument("state dimension must be at least 2, got " + std::to_string(amplitudes.size()));
    double norm2 = 0.0;
    for (const Complex& z : amplitudes) norm2 += std::norm(z);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw InvalidArgument("zero vector cannot be normalized");

    // Rational path: real entries that are all 0 or of one common magnitude.
    double magnitude = 0.0;
    bool exact = true;
    for (const Complex& z : amplitudes) {
        if (z.imag() != 0.0) {
            exact = false;
            break;
        }
        const double m = std::abs(z.real());
        if (m == 0.0) continue;
        if (magnitude == 0.0) magnitude = m;
        else if (m != magnitude) {
            exact = false;
            break;
        }
    }
    if (exact) {
        std::vector<std::int8_t> signs(amplitudes.size());
        for (std::size_t i = 0; i < amplitudes.size(); ++i) {
            const double re = amplitudes[i].real();
            signs[i] = re > 0.0 ? 1 : (re < 0.0 ? -1 : 0);
        }
        return from_signs(signs);
    }

    PureState state;
    const double norm = std::sqrt(norm2);
    state.amplitudes_.reserve(amplitudes.size());
    for (const Complex& z : amplitudes) state.amplitudes_.push_back(z / norm);
    return state;
}

PureState PureState::from_signs(std::span<const std::int8_t> signs) {
    if (signs.size() < 2)
        throw InvalidArgument("state dimension must be at least 2, got " + std::to_string(signs.size()));
    int support = 0;
    for (std::int8_t s : signs) {
        if (s < -1 || s > 1) throw InvalidArgument("sign entries must be -1, 0 or +1");
        if (s != 0) ++support;
    }
    if (support == 0) throw InvalidArgument("zero vector cannot be normalized");
    PureState state;
    state.signs_.assign(signs.begin(), signs.end());
    state.support_ = support;
    const double scale = 1.0 / std::sqrt(static_cast<double>(support));
    state.amplitudes_.reserve(signs.size());
    for (std::int8_t s : signs) state.amplitudes_.emplace_back(s * scale, 0.0);
    return state;
}

PureState PureState::basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim) throw InvalidArgument("basis index out of range");
    std::vector<std::int8_t> signs(dim, 0);
    signs[index] = 1;
    return from_signs(signs);
}

PureState make_state(std::span<const Complex> amplitudes) { return PureState::from_amplitudes(amplitudes); }

PureState make_state(std::initializer_list<Complex> amplitudes) {
    return PureState::from_amplitudes(std::span<const Complex>(amplitudes.begin(), amplitudes.size()));
}

int SignVector::weight() const noexcept { return std::popcount(bits); }

PureState SignVector::to_state() const {
    std::vector<std::int8_t> signs(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) signs[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(sign(j));
    return PureState::from_signs(signs);
}

std::string SignVector::bit_string() const {
    std::string out(static_cast<std::size_t>(dim), '0');
    for (int j = 0; j < dim; ++j)
        if (sign(j) < 0) out[static_cast<std::size_t>(j)] = '1';
    return out;
}

SignVector SignVector::from_bit_string(std::string_view text) {
    if (text.size() < 2 || text.size() > 64)
        throw InvalidArgument("sign vector bit string must have length 2..64");
    SignVector v;
    v.dim = static_cast<int>(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw InvalidArgument("sign vector bit string must contain only 0 and 1");
        v.bits = (v.bits << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return v;
}

int hamming_distance(const SignVector& a, const SignVector& b) {
    if (a.dim != b.dim) throw InvalidArgument("dimension mismatch between sign vectors");
    return std::popcount(a.bits ^ b.bits);
}

std::vector<SignVector> hadamard_family(int d, const Limits& limits) {
    if (d < 2) throw InvalidArgument("hadamard_family requires d >= 2");
    if (d >= 64 || (std::uint64_t{1} << d) > limits.family_cap)
        throw CapacityError("hadamard_family(" + std::to_string(d) + ")",
                            d >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d), limits.family_cap);
    const std::uint64_t count = std::uint64_t{1} << d;
    std::vector<SignVector> family;
    family.reserve(count);
    for (std::uint64_t bits = 0; bits < count; ++bits) family.push_back(SignVector{d, bits});
    return family;
}

Complex inner_product(const PureState& a, const PureState& b) {
    require_same_dim(a, b);
    if (a.is_exact() && b.is_exact()) {
        const double denom = std::sqrt(static_cast<double>(a.support()) * b.support());
        return {static_cast<double>(sign_dot(a, b)) / denom, 0.0};
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

Rational inner_product(const SignVector& a, const SignVector& b) {
    const int h = hamming_distance(a, b);
    Rational q(static_cast<long>(a.dim - 2 * h), static_cast<long>(a.dim));
    q.canonicalize();
    return q;
}

std::optional<Rational> exact_born_probability(const PureState& a, const PureState& psi) {
    require_same_dim(a, psi);
    if (!a.is_exact() || !psi.is_exact()) return std::nullopt;
    const long long dot = sign_dot(a, psi);
    Rational q(static_cast<long>(dot * dot), static_cast<long>(a.support() * psi.support()));
    q.canonicalize();
    return q;
}

double born_probability(const PureState& a, const PureState& psi) {
    if (auto exact = exact_born_probability(a, psi)) return exact->get_d();
    return std::clamp(std::norm(inner_product(a, psi)), 0.0, 1.0);
}

double trace_distance(const PureState& psi, const PureState& phi) {
    return std::sqrt(1.0 - born_probability(phi, psi));
}

double quantum_overlap(const PureState& psi, const PureState& phi) { return 1.0 - trace_distance(psi, phi); }

bool orthogonal(const PureState& a, const PureState& b) {
    require_same_dim(a, b);
    if (a.is_exact() && b.is_exact()) return sign_dot(a, b) == 0;
    return std::abs(inner_product(a, b)) < kOrthogonalityTolerance;
}

bool same_ray(const PureState& a, const PureState& b) {
    require_same_dim(a, b);
    if (a.is_exact() && b.is_exact()) {
        const long long dot = sign_dot(a, b);
        return a.support() == b.support() && std::llabs(dot) == a.support();
    }
    return std::norm(inner_product(a, b)) > 1.0 - kSameRayTolerance;
}

}  // namespace onto

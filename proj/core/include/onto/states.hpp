#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "onto/limits.hpp"
#include "onto/rational.hpp"

namespace onto {

using Complex = std::complex<double>;

/// |<a|b>| below this counts as orthogonal off the rational path.
inline constexpr double kOrthogonalityTolerance = 1e-10;
/// |<a|b>|^2 above 1 - this counts as the same ray off the rational path.
inline constexpr double kSameRayTolerance = 1e-10;

/// Unit vector in C^d.
///
/// States whose nonzero amplitudes are all real and of equal magnitude are
/// kept on a rational fast path: amplitude_i = s_i / sqrt(k) with
/// s_i in {-1, 0, +1} and k the number of nonzero entries. Hadamard states,
/// computational basis states and |+>, |-> all live there, and inner
/// products between two such states have rational squares.
class PureState {
public:
    /// Normalizes `amplitudes`. Throws InvalidArgument on a zero vector or d < 2.
    static PureState from_amplitudes(std::span<const Complex> amplitudes);
    /// Exact state with entries s_i / sqrt(#nonzero).
    static PureState from_signs(std::span<const std::int8_t> signs);
    /// Computational basis vector e_index.
    static PureState basis_vector(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_[i]; }

    bool is_exact() const noexcept { return !signs_.empty(); }
    /// Sign pattern on the rational path; empty otherwise.
    std::span<const std::int8_t> signs() const noexcept { return signs_; }
    /// Number of nonzero entries on the rational path.
    int support() const noexcept { return support_; }

private:
    PureState() = default;

    std::vector<Complex> amplitudes_;
    std::vector<std::int8_t> signs_;
    int support_ = 0;
};

/// make_state: the input normalized to unit norm.
PureState make_state(std::span<const Complex> amplitudes);
PureState make_state(std::initializer_list<Complex> amplitudes);

/// Hadamard sign pattern (1/sqrt(d))(±1, ..., ±1).
///
/// Coordinate 0 is the most significant bit of `bits`, so the bit string
/// "0011" is (+, +, -, -) / 2. A set bit means amplitude -1/sqrt(d).
struct SignVector {
    int dim = 0;
    std::uint64_t bits = 0;

    /// Sign of coordinate j: +1 or -1.
    int sign(int j) const noexcept { return ((bits >> (dim - 1 - j)) & 1u) ? -1 : +1; }
    int weight() const noexcept;
    PureState to_state() const;
    /// Most-significant-coordinate-first bit string.
    std::string bit_string() const;
    static SignVector from_bit_string(std::string_view bits);

    friend bool operator==(const SignVector&, const SignVector&) = default;
};

int hamming_distance(const SignVector& a, const SignVector& b);

/// All 2^d sign vectors in lexicographic bit order.
/// Throws CapacityError when 2^d exceeds `limits.family_cap`.
std::vector<SignVector> hadamard_family(int d, const Limits& limits = {});

/// <a|b> = sum conj(a_i) b_i.
Complex inner_product(const PureState& a, const PureState& b);
/// (d - 2h)/d for two sign vectors at Hamming distance h.
Rational inner_product(const SignVector& a, const SignVector& b);

/// |<a|psi>|^2.
double born_probability(const PureState& a, const PureState& psi);
/// |<a|psi>|^2 as an exact rational when both states are on the rational path.
std::optional<Rational> exact_born_probability(const PureState& a, const PureState& psi);

/// L_Q = 1 - sqrt(1 - |<phi|psi>|^2).
double quantum_overlap(const PureState& psi, const PureState& phi);
/// D_Q = sqrt(1 - |<phi|psi>|^2).
double trace_distance(const PureState& psi, const PureState& phi);

/// Exact on the rational path, |<a|b>| < kOrthogonalityTolerance otherwise.
bool orthogonal(const PureState& a, const PureState& b);
/// Equal up to a global phase.
bool same_ray(const PureState& a, const PureState& b);

}  // namespace onto

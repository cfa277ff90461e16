#pragma once

#include <cmath>
#include <cstdint>

#include "subldpc/errors.hpp"
#include "subldpc/field.hpp"
#include "subldpc/subspace.hpp"

namespace subldpc {

/// Additive subspace-noise channel on F_q^m: the noise vector is uniform on
/// a uniformly random subspace V of dimension noise_dim, and the receiver
/// observes both the sum and V itself.
struct ChannelSpec {
    std::uint32_t q;
    std::size_t m;
    double epsilon;
    std::size_t noise_dim;

    ChannelSpec(std::uint32_t q_, std::size_t m_, double eps)
        : q(FieldSpec(q_).q), m(m_), epsilon(eps), noise_dim(0) {
        if (m < 1) throw ParamError("channel symbol dimension must be at least 1");
        if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("noise rate must lie in [0, 1]");
        noise_dim = static_cast<std::size_t>(std::floor(eps * static_cast<double>(m) + 0.5));
        if (noise_dim > m) noise_dim = m;
    }

    /// True when epsilon * m is integral, i.e. no rounding occurred.
    bool epsilon_integral(double tol = 1e-9) const {
        const double em = epsilon * static_cast<double>(m);
        return std::fabs(em - std::round(em)) <= tol;
    }
};

struct ChannelOutput {
    Vec y;
    Subspace noise_space;
};

/// Normalized capacity of the channel, 1 - epsilon.
inline double capacity(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("noise rate must lie in [0, 1]");
    return 1.0 - epsilon;
}

inline ChannelOutput transmit(const ChannelSpec& spec, const Vec& x, Rng& rng) {
    if (x.size() != spec.m) throw ShapeError("transmit: input length does not match m");
    Subspace v = uniform_random_subspace(spec.m, spec.noise_dim, spec.q, rng);
    Vec y = x;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        detail::row_addmul(y.data(), v.basis().row_ptr(i), spec.m, rng.field_element(spec.q),
                           spec.q);
    }
    return ChannelOutput{std::move(y), std::move(v)};
}

/// The affine space y - V the receiver learns (= y + V, as -V = V).
inline AffineSubspace received_affine(const ChannelOutput& out) {
    return AffineSubspace(out.y, out.noise_space);
}

}  // namespace subldpc

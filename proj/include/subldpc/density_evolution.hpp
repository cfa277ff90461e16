#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "subldpc/errors.hpp"

namespace subldpc {

inline void check_unit_interval(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

/// a [.] b = max(a + b - 1, 0): normalized dimension of a generic
/// intersection. 1 is the identity element.
inline double boxdot(double a, double b) {
    check_unit_interval(a, "boxdot argument");
    check_unit_interval(b, "boxdot argument");
    return std::max(a + b - 1.0, 0.0);
}

/// a [+] b = min(a + b, 1): normalized dimension of a generic sum.
/// 0 is the identity element.
inline double boxplus(double a, double b) {
    check_unit_interval(a, "boxplus argument");
    check_unit_interval(b, "boxplus argument");
    return std::min(a + b, 1.0);
}

namespace detail {

/// k-fold box-plus of equal/summed terms: min(total, 1). Folding pairwise
/// gives the same value since partial sums only saturate upward.
inline double boxplus_total(double total) { return std::min(total, 1.0); }

/// k-fold box-dot: max(total - (count - 1), 0); once any partial fold
/// clamps to zero the whole fold is zero, which the closed form preserves.
inline double boxdot_total(double total, std::size_t count) {
    return std::max(total - static_cast<double>(count - 1), 0.0);
}

}  // namespace detail

inline void check_regular_degrees(unsigned dl, unsigned dr) {
    if (dl < 2) throw ParamError("variable degree must be at least 2");
    if (dr <= dl) throw ParamError("check degree must exceed variable degree");
}

/// One round of the regular-ensemble recursion:
///   zeta = min((dr-1) xi, 1),  xi' = max((dl-1)(zeta-1) + eps, 0).
/// The grouping (dl-1)(zeta-1) + eps returns eps exactly once zeta
/// saturates at 1, keeping above-threshold traces constant bit-for-bit.
inline double de_regular_step(double xi, unsigned dl, unsigned dr, double eps) {
    check_regular_degrees(dl, dr);
    check_unit_interval(xi, "xi");
    check_unit_interval(eps, "eps");
    const double zeta = std::min(static_cast<double>(dr - 1) * xi, 1.0);
    return std::max(static_cast<double>(dl - 1) * (zeta - 1.0) + eps, 0.0);
}

/// Trace [xi_0 .. xi_T] starting from xi_0 = eps.
inline std::vector<double> de_regular_trace(unsigned dl, unsigned dr, double eps,
                                            std::size_t iterations) {
    check_regular_degrees(dl, dr);
    check_unit_interval(eps, "eps");
    std::vector<double> trace;
    trace.reserve(iterations + 1);
    double xi = eps;
    trace.push_back(xi);
    for (std::size_t t = 0; t < iterations; ++t) {
        xi = de_regular_step(xi, dl, dr, eps);
        trace.push_back(xi);
    }
    return trace;
}

/// Closed-form value of xi_t for eps below 1/(dr-1), where the recursion is
/// the affine map xi -> (dl-1)(dr-1) xi + eps - (dl-1) clamped at zero:
/// geometric growth around the fixed point, cut off by the clamp.
inline double de_closed_form(unsigned dl, unsigned dr, double eps, std::size_t t) {
    check_regular_degrees(dl, dr);
    check_unit_interval(eps, "eps");
    if (static_cast<double>(dr - 1) * eps >= 1.0) {
        throw DomainError("closed form is valid only for eps below 1/(dr-1)");
    }
    const double a = static_cast<double>(dl - 1);
    const double b = static_cast<double>(dr - 1);
    const double growth = a * b;
    const double coeff = a * std::pow(growth, static_cast<double>(t)) / (growth - 1.0);
    const double value = coeff * (b * eps - 1.0) + (eps - a) / (1.0 - growth);
    return std::max(value, 0.0);
}

namespace detail {

constexpr double kDeZeroCutoff = 1e-12;
constexpr double kDeFixedPointCutoff = 1e-14;
constexpr std::size_t kDeMaxIterations = 100000;

inline bool regular_de_converges(unsigned dl, unsigned dr, double eps) {
    double xi = eps;
    for (std::size_t t = 0; t < kDeMaxIterations; ++t) {
        if (xi < kDeZeroCutoff) return true;
        const double next = de_regular_step(xi, dl, dr, eps);
        if (std::fabs(next - xi) < kDeFixedPointCutoff) return xi < kDeZeroCutoff;
        xi = next;
    }
    return xi < kDeZeroCutoff;
}

}  // namespace detail

/// Noise threshold of the regular ensemble: bisection on the monotone
/// predicate "the trace reaches zero".
inline double threshold_regular(unsigned dl, unsigned dr, double tol = 1e-9) {
    check_regular_degrees(dl, dr);
    if (!(tol > 0.0)) throw ParamError("tolerance must be positive");
    double lo = 0.0, hi = 1.0;
    for (std::size_t i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        (detail::regular_de_converges(dl, dr, mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// State of the coupled recursion: per variable section j in [0, L) and edge
/// type k in [0, dl), xi(j, k) is the message toward check row j + k;
/// per check row i in [0, L + dl - 1), zeta(i, k) is the message toward
/// section i - k. Sections outside [0, L) are pinned to zero.
struct CoupledDEState {
    unsigned dl = 0, dr = 0, L = 0;
    std::vector<double> xi;       // L x dl
    std::vector<double> zeta;     // (L + dl - 1) x dl
    std::vector<double> xi_post;  // L

    static CoupledDEState initial(unsigned dl, unsigned dr, unsigned L, double eps) {
        check_regular_degrees(dl, dr);
        if (dr % dl != 0 || dr / dl < 2) {
            throw ParamError("check degree must be an integer multiple (>= 2) of variable degree");
        }
        if (L < 1) throw ParamError("coupling number must be at least 1");
        check_unit_interval(eps, "eps");
        CoupledDEState s;
        s.dl = dl;
        s.dr = dr;
        s.L = L;
        s.xi.assign(static_cast<std::size_t>(L) * dl, eps);
        s.zeta.assign(static_cast<std::size_t>(L + dl - 1) * dl, 0.0);
        s.xi_post.assign(L, eps);
        return s;
    }

    double xi_at(std::size_t section, std::size_t type) const { return xi[section * dl + type]; }
    double zeta_at(std::size_t row, std::size_t type) const { return zeta[row * dl + type]; }
};

/// One coupled round. Check row i aggregates, per covered section i - k',
/// dr/dl parallel edges (one fewer on the outgoing position); variable
/// section j intersects its channel value with the dl - 1 other check
/// messages. Out-of-range sections contribute zero (known symbols).
inline CoupledDEState de_coupled_step(const CoupledDEState& s, double eps) {
    check_unit_interval(eps, "eps");
    const unsigned dl = s.dl, L = s.L;
    const unsigned per_section = s.dr / dl;
    CoupledDEState next = s;

    const std::size_t n_rows = L + dl - 1;
    for (std::size_t i = 0; i < n_rows; ++i) {
        for (std::size_t k = 0; k < dl; ++k) {
            double total = 0.0;
            for (std::size_t kp = 0; kp < dl; ++kp) {
                if (kp > i) continue;
                const std::size_t section = i - kp;
                if (section >= L) continue;
                const double mult = static_cast<double>(per_section - (kp == k ? 1 : 0));
                total += mult * s.xi_at(section, kp);
            }
            next.zeta[i * dl + k] = detail::boxplus_total(total);
        }
    }
    for (std::size_t j = 0; j < L; ++j) {
        double total_all = eps;
        for (std::size_t kp = 0; kp < dl; ++kp) total_all += next.zeta_at(j + kp, kp);
        next.xi_post[j] = detail::boxdot_total(total_all, dl + 1);
        for (std::size_t k = 0; k < dl; ++k) {
            const double total = total_all - next.zeta_at(j + k, k);
            next.xi[j * dl + k] = detail::boxdot_total(total, dl);
        }
    }
    return next;
}

namespace detail {

inline bool coupled_de_converges(unsigned dl, unsigned dr, unsigned L, double eps,
                                 std::size_t max_steps) {
    CoupledDEState state = CoupledDEState::initial(dl, dr, L, eps);
    for (std::size_t t = 0; t < max_steps; ++t) {
        CoupledDEState next = de_coupled_step(state, eps);
        const bool all_zero = std::all_of(next.xi_post.begin(), next.xi_post.end(),
                                          [](double v) { return v < kDeZeroCutoff; });
        if (all_zero) return true;
        double delta = 0.0;
        for (std::size_t i = 0; i < next.xi.size(); ++i) {
            delta = std::max(delta, std::fabs(next.xi[i] - state.xi[i]));
        }
        if (delta < kDeFixedPointCutoff) return false;
        state = std::move(next);
    }
    return false;
}

}  // namespace detail

/// Noise threshold of the coupled ensemble: bisection on "all a-posteriori
/// values reach zero within the step budget". The default budget scales with
/// the chain length so the decoding wave has room to cross it.
///
/// The search runs over [0, eps_hi], default dl/dr: the quantity of interest
/// is how closely the chain approaches the capacity of its L -> infinity
/// design rate. Short terminated chains also decode at rates above dl/dr
/// (boundary rate loss, e.g. raw suprema 0.505 at L = 8 and 0.500 at L = 64
/// for (3,6)); that surplus is excluded so values are comparable across L.
inline double threshold_coupled(unsigned dl, unsigned dr, unsigned L, double tol = 1e-4,
                                std::size_t max_steps = 0, double eps_hi = 0.0) {
    if (max_steps == 0) max_steps = 10 * (static_cast<std::size_t>(L) + dl);
    if (!(tol > 0.0)) throw ParamError("tolerance must be positive");
    CoupledDEState::initial(dl, dr, L, 0.0);  // validates parameters
    if (eps_hi == 0.0) eps_hi = static_cast<double>(dl) / static_cast<double>(dr);
    check_unit_interval(eps_hi, "search ceiling");
    double lo = 0.0, hi = eps_hi;
    for (std::size_t i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        (detail::coupled_de_converges(dl, dr, L, mid, max_steps) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace subldpc

#pragma once

#include <cstdint>
#include <string>

#include "subldpc/errors.hpp"

namespace subldpc {

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

/// A prime field F_q, q prime. Construction validates primality.
struct FieldSpec {
    std::uint32_t q;

    explicit FieldSpec(std::uint32_t modulus) : q(modulus) {
        if (!is_prime(q)) {
            throw ParamError("field modulus " + std::to_string(q) + " is not prime");
        }
    }
};

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    std::uint32_t s = a + b;
    return s >= q ? s - q : s;
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return a >= b ? a - b : a + q - b;
}

inline std::uint32_t neg_mod(std::uint32_t a, std::uint32_t q) {
    return a == 0 ? 0 : q - a;
}

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % q);
}

/// Multiplicative inverse in F_q via the extended Euclidean algorithm.
inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q) {
    if (a == 0) throw SingularError("inverse of 0 in F_" + std::to_string(q));
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = q, new_r = a % q;
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        std::int64_t tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += q;
    return static_cast<std::uint32_t>(t);
}

}  // namespace subldpc

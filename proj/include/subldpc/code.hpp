#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "subldpc/errors.hpp"
#include "subldpc/matrix.hpp"
#include "subldpc/rng.hpp"

namespace subldpc {

/// Protograph adjacency matrix (edge multiplicities).
struct BaseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint32_t> entries;

    std::uint32_t at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
    std::uint32_t& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }

    std::size_t row_weight(std::size_t r) const {
        std::size_t w = 0;
        for (std::size_t c = 0; c < cols; ++c) w += at(r, c);
        return w;
    }
    std::size_t col_weight(std::size_t c) const {
        std::size_t w = 0;
        for (std::size_t r = 0; r < rows; ++r) w += at(r, c);
        return w;
    }
};

inline void check_degree_pair(unsigned dl, unsigned dr) {
    if (dl < 1) throw ParamError("variable degree must be at least 1");
    if (dr % dl != 0 || dr / dl < 2) {
        throw ParamError("check degree must be an integer multiple (>= 2) of variable degree");
    }
}

/// Band base matrix of the coupled ensemble: (L + dl - 1) rows and
/// (dr/dl) L columns; the columns of section s carry ones in rows
/// s .. s+dl-1, so interior rows reach weight dr and boundary rows are
/// truncated.
inline BaseMatrix base_matrix_coupled(unsigned dl, unsigned dr, unsigned L) {
    check_degree_pair(dl, dr);
    if (L < 1) throw ParamError("coupling number must be at least 1");
    const std::size_t sect = dr / dl;
    BaseMatrix base;
    base.rows = L + dl - 1;
    base.cols = sect * L;
    base.entries.assign(base.rows * base.cols, 0);
    for (std::size_t j = 0; j < base.cols; ++j) {
        const std::size_t s = j / sect;
        for (std::size_t k = 0; k < dl; ++k) base.at(s + k, j) = 1;
    }
    return base;
}

/// Lift a 0/1 base matrix: each 1 becomes an independent uniform M x M
/// permutation block, each 0 an M x M zero block. Blocks are drawn in
/// row-major order over the base cells.
inline Matrix lift(const BaseMatrix& base, std::size_t M, Rng& rng) {
    if (M < 1) throw ParamError("lifting number must be at least 1");
    Matrix H(base.rows * M, base.cols * M, 2);
    for (std::size_t r = 0; r < base.rows; ++r) {
        for (std::size_t c = 0; c < base.cols; ++c) {
            if (base.at(r, c) == 0) continue;
            if (base.at(r, c) > 1) {
                throw ParamError("lift expects a 0/1 base matrix");
            }
            const auto p = random_permutation(M, rng);
            for (std::size_t i = 0; i < M; ++i) H(r * M + i, c * M + p[i]) = 1;
        }
    }
    return H;
}

struct CodeMeta {
    unsigned dl = 0;
    unsigned dr = 0;
    unsigned L = 0;  // 0 for uncoupled (regular) codes
    std::size_t M = 0;
    std::uint64_t seed = 0;
};

struct CheckEntry {
    std::size_t var;
    Matrix coeff;  // element of GL(m, F_q)
};

/// Sparse parity-check matrix over GL(m, F_q): per check, the incident
/// variables with their coefficients. A codeword (x_1..x_N) with
/// x_j in F_q^m satisfies sum_j coeff_{i,j} x_j = 0 for every check i.
struct ParityCheckCode {
    std::uint32_t q = 2;
    std::size_t m = 1;
    std::size_t n_checks = 0;
    std::size_t n_vars = 0;
    std::vector<std::vector<CheckEntry>> rows;
    CodeMeta meta;
};

namespace detail {

/// Sort each check's entries by variable index and attach one independent
/// uniform GL(m, F_q) coefficient per edge, iterating checks in increasing
/// index. Fixing this order makes seeded construction reproducible.
inline void assign_coefficients(ParityCheckCode& code, std::size_t m, std::uint32_t q,
                                Rng& rng) {
    for (auto& row : code.rows) {
        std::sort(row.begin(), row.end(),
                  [](const CheckEntry& a, const CheckEntry& b) { return a.var < b.var; });
        for (auto& e : row) e.coeff = random_gl(m, q, rng);
    }
}

}  // namespace detail

/// Regular (dl, dr) code: M dl checks of degree dr, M dr variables of degree
/// dl. The binary skeleton comes from the configuration model (a uniform
/// matching of check sockets to variable sockets), resampled whole while any
/// (check, variable) pair repeats; conditioning on acceptance keeps the
/// distribution exactly uniform over simple skeletons. The acceptance rate
/// is about exp(-(dl-1)(dr-1)/2) independent of M, hence the large default
/// retry budget.
inline ParityCheckCode build_regular(unsigned dl, unsigned dr, std::size_t M, std::size_t m,
                                     std::uint32_t q, Rng& rng,
                                     std::size_t max_attempts = 20000) {
    check_degree_pair(dl, dr);
    FieldSpec{q};
    if (M < 1) throw ParamError("lifting number must be at least 1");
    if (m < 1) throw ParamError("symbol dimension must be at least 1");

    const std::size_t n_checks = M * dl;
    const std::size_t n_vars = M * dr;
    const std::size_t n_edges = M * dl * dr;

    std::vector<std::size_t> pairs(n_edges);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        const auto perm = random_permutation(n_edges, rng);
        for (std::size_t e = 0; e < n_edges; ++e) {
            pairs[e] = (e / dr) * n_vars + perm[e] / dl;
        }
        std::sort(pairs.begin(), pairs.end());
        if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) continue;
        std::vector<std::vector<CheckEntry>> rows(n_checks);
        for (std::size_t e = 0; e < n_edges; ++e) {
            rows[e / dr].push_back(CheckEntry{perm[e] / dl, Matrix()});
        }
        ParityCheckCode code;
        code.q = q;
        code.m = m;
        code.n_checks = n_checks;
        code.n_vars = n_vars;
        code.rows = std::move(rows);
        code.meta = CodeMeta{dl, dr, 0, M, 0};
        detail::assign_coefficients(code, m, q, rng);
        return code;
    }
    throw ConstructionError("regular skeleton sampling kept producing repeated edges");
}

/// Spatially coupled (dl, dr, L) code: band base matrix, M-lifting with
/// permutation blocks, then GL(m, F_q) coefficients on the lifted edges.
inline ParityCheckCode build_coupled(unsigned dl, unsigned dr, unsigned L, std::size_t M,
                                     std::size_t m, std::uint32_t q, Rng& rng) {
    FieldSpec{q};
    if (M < 1) throw ParamError("lifting number must be at least 1");
    if (m < 1) throw ParamError("symbol dimension must be at least 1");
    const BaseMatrix base = base_matrix_coupled(dl, dr, L);

    ParityCheckCode code;
    code.q = q;
    code.m = m;
    code.n_checks = base.rows * M;
    code.n_vars = base.cols * M;
    code.rows.assign(code.n_checks, {});
    for (std::size_t r = 0; r < base.rows; ++r) {
        for (std::size_t c = 0; c < base.cols; ++c) {
            if (base.at(r, c) == 0) continue;
            const auto p = random_permutation(M, rng);
            for (std::size_t i = 0; i < M; ++i) {
                code.rows[r * M + i].push_back(CheckEntry{c * M + p[i], Matrix()});
            }
        }
    }
    code.meta = CodeMeta{dl, dr, L, M, 0};
    detail::assign_coefficients(code, m, q, rng);
    return code;
}

/// Design rate of the regular ensemble, 1 - dl/dr.
inline double design_rate(unsigned dl, unsigned dr) {
    if (dl < 1 || dr <= dl) throw ParamError("need 1 <= dl < dr");
    return 1.0 - static_cast<double>(dl) / static_cast<double>(dr);
}

/// Design rate of the coupled ensemble, from the block dimensions
/// (L + dl - 1) M x (dr/dl) L M assuming full row rank.
inline double design_rate(unsigned dl, unsigned dr, unsigned L) {
    if (dl < 1 || dr <= dl) throw ParamError("need 1 <= dl < dr");
    if (L < 1) throw ParamError("coupling number must be at least 1");
    return 1.0 - (static_cast<double>(dl) / dr) * (static_cast<double>(L + dl - 1) / L);
}

/// Structural validation: index ranges, entry ordering, coefficient shapes
/// and invertibility. Used after deserialization.
inline void validate_code(const ParityCheckCode& code) {
    FieldSpec{code.q};
    if (code.m < 1) throw ParamError("symbol dimension must be at least 1");
    if (code.rows.size() != code.n_checks) throw ParamError("check count mismatch");
    for (const auto& row : code.rows) {
        std::size_t prev_var = 0;
        bool first = true;
        for (const auto& e : row) {
            if (e.var >= code.n_vars) throw ParamError("variable index out of range");
            if (!first && e.var <= prev_var) throw ParamError("check entries must be sorted");
            prev_var = e.var;
            first = false;
            if (e.coeff.rows() != code.m || e.coeff.cols() != code.m ||
                e.coeff.field() != code.q) {
                throw ParamError("coefficient shape mismatch");
            }
            if (rank_of(e.coeff) != code.m) {
                throw ParamError("coefficient matrix is singular");
            }
        }
    }
}

}  // namespace subldpc

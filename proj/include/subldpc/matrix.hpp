#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subldpc/errors.hpp"
#include "subldpc/field.hpp"
#include "subldpc/rng.hpp"

namespace subldpc {

/// Vector over F_q, entries in [0, q).
using Vec = std::vector<std::uint32_t>;

namespace detail {

/// dst += c * src (mod q), elementwise over n entries. The q == 2 branch is a
/// plain XOR sweep; it computes the same residues, just without the divide.
inline void row_addmul(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                       std::uint32_t c, std::uint32_t q) {
    if (c == 0) return;
    if (q == 2) {
        for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = static_cast<std::uint32_t>(
            (dst[i] + static_cast<std::uint64_t>(c) * src[i]) % q);
    }
}

inline void row_scale(std::uint32_t* row, std::size_t n, std::uint32_t c, std::uint32_t q) {
    if (c == 1) return;
    for (std::size_t i = 0; i < n; ++i) {
        row[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) * row[i]) % q);
    }
}

}  // namespace detail

/// Dense matrix over the prime field F_q, row-major storage.
/// Entries always live in [0, q); all operations reduce eagerly.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0), q_(2) {}

    Matrix(std::size_t rows, std::size_t cols, std::uint32_t q)
        : rows_(rows), cols_(cols), q_(q), data_(rows * cols, 0) {
        check_modulus(q);
    }

    Matrix(std::size_t rows, std::size_t cols, std::uint32_t q, std::vector<std::uint32_t> entries)
        : rows_(rows), cols_(cols), q_(q), data_(std::move(entries)) {
        check_modulus(q);
        if (data_.size() != rows * cols) {
            throw ShapeError("entry count does not match matrix shape");
        }
        for (std::uint32_t e : data_) {
            if (e >= q_) throw ParamError("matrix entry out of range [0, q)");
        }
    }

    static Matrix identity(std::size_t n, std::uint32_t q) {
        Matrix I(n, n, q);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
        return I;
    }

    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols, std::uint32_t q) {
        Matrix A(rows.size(), cols, q);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw ShapeError("row length mismatch");
            for (std::size_t c = 0; c < cols; ++c) {
                if (rows[r][c] >= q) throw ParamError("matrix entry out of range [0, q)");
                A(r, c) = rows[r][c];
            }
        }
        return A;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t field() const { return q_; }

    std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::uint32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    const std::uint32_t* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }
    std::uint32_t* row_ptr(std::size_t r) { return data_.data() + r * cols_; }

    Vec row(std::size_t r) const {
        return Vec(row_ptr(r), row_ptr(r) + cols_);
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::uint32_t* pa = row_ptr(a);
        std::uint32_t* pb = row_ptr(b);
        for (std::size_t i = 0; i < cols_; ++i) std::swap(pa[i], pb[i]);
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.q_ == b.q_ && a.data_ == b.data_;
    }

    const std::vector<std::uint32_t>& entries() const { return data_; }

  private:
    static void check_modulus(std::uint32_t q) {
        if (q < 2) throw ParamError("field modulus must be at least 2");
    }

    std::size_t rows_, cols_;
    std::uint32_t q_;
    std::vector<std::uint32_t> data_;
};

inline Matrix transpose(const Matrix& A) {
    Matrix T(A.cols(), A.rows(), A.field());
    for (std::size_t r = 0; r < A.rows(); ++r)
        for (std::size_t c = 0; c < A.cols(); ++c) T(c, r) = A(r, c);
    return T;
}

inline Matrix vstack(const Matrix& top, const Matrix& bottom) {
    if (top.cols() != bottom.cols() || top.field() != bottom.field()) {
        throw ShapeError("vstack: column count or field mismatch");
    }
    Matrix S(top.rows() + bottom.rows(), top.cols(), top.field());
    for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c) S(r, c) = top(r, c);
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        for (std::size_t c = 0; c < bottom.cols(); ++c) S(top.rows() + r, c) = bottom(r, c);
    return S;
}

inline Matrix operator*(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows() || A.field() != B.field()) {
        throw ShapeError("matrix product: inner dimension or field mismatch");
    }
    const std::uint32_t q = A.field();
    Matrix C(A.rows(), B.cols(), q);
    // Accumulate in 64 bits; a*b < 2^62 for q < 2^31, so one guarded
    // reduction keeps the sum exact.
    constexpr std::uint64_t kGuard = std::uint64_t{1} << 62;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < B.cols(); ++j) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < A.cols(); ++k) {
                acc += static_cast<std::uint64_t>(A(i, k)) * B(k, j);
                if (acc >= kGuard) acc %= q;
            }
            C(i, j) = static_cast<std::uint32_t>(acc % q);
        }
    }
    return C;
}

inline Vec mat_vec(const Matrix& A, const Vec& x) {
    if (A.cols() != x.size()) throw ShapeError("matrix-vector product: dimension mismatch");
    const std::uint32_t q = A.field();
    constexpr std::uint64_t kGuard = std::uint64_t{1} << 62;
    Vec y(A.rows(), 0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        std::uint64_t acc = 0;
        const std::uint32_t* row = A.row_ptr(i);
        for (std::size_t k = 0; k < x.size(); ++k) {
            acc += static_cast<std::uint64_t>(row[k]) * x[k];
            if (acc >= kGuard) acc %= q;
        }
        y[i] = static_cast<std::uint32_t>(acc % q);
    }
    return y;
}

struct RrefResult {
    Matrix R;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Pivot selection is fixed: first nonzero entry
/// scanning top-to-bottom within each column, columns left-to-right.
inline RrefResult rref(const Matrix& A) {
    Matrix R = A;
    const std::uint32_t q = R.field();
    const std::size_t n_rows = R.rows(), n_cols = R.cols();
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < n_cols && lead < n_rows; ++col) {
        std::size_t pivot_row = lead;
        while (pivot_row < n_rows && R(pivot_row, col) == 0) ++pivot_row;
        if (pivot_row == n_rows) continue;
        R.swap_rows(lead, pivot_row);
        detail::row_scale(R.row_ptr(lead), n_cols, inv_mod(R(lead, col), q), q);
        for (std::size_t r = 0; r < n_rows; ++r) {
            if (r == lead) continue;
            const std::uint32_t c = R(r, col);
            if (c != 0) detail::row_addmul(R.row_ptr(r), R.row_ptr(lead), n_cols, neg_mod(c, q), q);
        }
        pivots.push_back(col);
        ++lead;
    }
    return RrefResult{std::move(R), pivots.size(), std::move(pivots)};
}

inline std::size_t rank_of(const Matrix& A) { return rref(A).rank; }

/// Basis of the right null space {x : A x^T = 0}, one row per free column.
/// Rows are independent but not, in general, in echelon form.
inline Matrix kernel_basis(const Matrix& A) {
    const auto red = rref(A);
    const std::uint32_t q = A.field();
    const std::size_t n = A.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : red.pivots) is_pivot[p] = true;

    Matrix K(n - red.rank, n, q);
    std::size_t out = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        K(out, f) = 1;
        for (std::size_t i = 0; i < red.rank; ++i) {
            K(out, red.pivots[i]) = neg_mod(red.R(i, f), q);
        }
        ++out;
    }
    return K;
}

struct AffineSolution {
    Vec particular;
    Matrix kernel;
};

/// Solve A x = b over F_q. Inconsistency is a regular outcome (nullopt),
/// not an error. On success the full solution set is
/// particular + row-space(kernel).
inline std::optional<AffineSolution> solve_affine(const Matrix& A, const Vec& b) {
    if (A.rows() != b.size()) throw ShapeError("solve_affine: rhs length mismatch");
    const std::uint32_t q = A.field();
    Matrix aug(A.rows(), A.cols() + 1, q);
    for (std::size_t r = 0; r < A.rows(); ++r) {
        for (std::size_t c = 0; c < A.cols(); ++c) aug(r, c) = A(r, c);
        if (b[r] >= q) throw ParamError("rhs entry out of range [0, q)");
        aug(r, A.cols()) = b[r];
    }
    const auto red = rref(aug);
    for (std::size_t i = 0; i < red.rank; ++i) {
        if (red.pivots[i] == A.cols()) return std::nullopt;
    }
    Vec particular(A.cols(), 0);
    for (std::size_t i = 0; i < red.rank; ++i) {
        particular[red.pivots[i]] = red.R(i, A.cols());
    }
    return AffineSolution{std::move(particular), kernel_basis(A)};
}

/// Inverse of a square matrix; throws SingularError when rank < n.
inline Matrix inverse(const Matrix& A) {
    if (A.rows() != A.cols()) throw ShapeError("inverse: matrix is not square");
    const std::size_t n = A.rows();
    const std::uint32_t q = A.field();
    Matrix aug(n, 2 * n, q);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = A(r, c);
        aug(r, n + r) = 1;
    }
    const auto red = rref(aug);
    if (red.rank < n || red.pivots[n - 1] >= n) {
        throw SingularError("matrix is singular");
    }
    Matrix inv(n, n, q);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = red.R(r, n + c);
    return inv;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint32_t q, Rng& rng) {
    Matrix A(rows, cols, q);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) A(r, c) = rng.field_element(q);
    return A;
}

/// Uniform draw from GL(m, F_q), built row by row: each row is drawn
/// uniformly from F_q^m and redrawn while it lies in the span of the rows
/// already accepted (membership tracked by an incremental echelon basis).
/// Acceptance probability per draw is at least 1 - 1/q.
inline Matrix random_gl(std::size_t m, std::uint32_t q, Rng& rng) {
    if (m < 1) throw ParamError("random_gl: dimension must be at least 1");
    Matrix A(m, m, q);
    // echelon[i] = reduced representative with leading 1 at pivot[i]
    std::vector<Vec> echelon;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t r = 0; r < m;) {
        Vec cand(m);
        for (auto& e : cand) e = rng.field_element(q);
        Vec residual = cand;
        for (std::size_t i = 0; i < echelon.size(); ++i) {
            const std::uint32_t c = residual[pivot_cols[i]];
            if (c != 0) {
                detail::row_addmul(residual.data(), echelon[i].data(), m, neg_mod(c, q), q);
            }
        }
        std::size_t lead = 0;
        while (lead < m && residual[lead] == 0) ++lead;
        if (lead == m) continue;  // in span, redraw
        detail::row_scale(residual.data(), m, inv_mod(residual[lead], q), q);
        // keep the stored representatives mutually reduced
        for (std::size_t i = 0; i < echelon.size(); ++i) {
            const std::uint32_t c = echelon[i][lead];
            if (c != 0) {
                detail::row_addmul(echelon[i].data(), residual.data(), m, neg_mod(c, q), q);
            }
        }
        echelon.push_back(std::move(residual));
        pivot_cols.push_back(lead);
        for (std::size_t c = 0; c < m; ++c) A(r, c) = cand[c];
        ++r;
    }
    return A;
}

inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        std::swap(p[i - 1], p[rng.below(i)]);
    }
    return p;
}

/// Uniform random n x n permutation matrix (over F_2 unless told otherwise).
inline Matrix random_permutation_matrix(std::size_t n, Rng& rng, std::uint32_t q = 2) {
    if (n < 1) throw ParamError("random_permutation_matrix: size must be at least 1");
    const auto p = random_permutation(n, rng);
    Matrix P(n, n, q);
    for (std::size_t i = 0; i < n; ++i) P(i, p[i]) = 1;
    return P;
}

inline Vec vec_add(const Vec& a, const Vec& b, std::uint32_t q) {
    if (a.size() != b.size()) throw ShapeError("vector addition: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = add_mod(a[i], b[i], q);
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b, std::uint32_t q) {
    if (a.size() != b.size()) throw ShapeError("vector subtraction: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = sub_mod(a[i], b[i], q);
    return r;
}

inline Vec vec_neg(const Vec& a, std::uint32_t q) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = neg_mod(a[i], q);
    return r;
}

inline bool is_zero_vec(const Vec& a) {
    for (std::uint32_t e : a)
        if (e != 0) return false;
    return true;
}

}  // namespace subldpc

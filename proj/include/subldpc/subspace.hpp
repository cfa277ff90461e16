#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "subldpc/errors.hpp"
#include "subldpc/matrix.hpp"
#include "subldpc/rng.hpp"

namespace subldpc {

/// Linear subspace of F_q^m in canonical form: the basis is the RREF of any
/// generating set with zero rows dropped. Two Subspace values are equal iff
/// their basis matrices are entry-identical, so equality is cheap and exact.
class Subspace {
  public:
    Subspace() : ambient_(0), q_(2), basis_(0, 0, 2) {}

    static Subspace zero(std::size_t m, std::uint32_t q) {
        return Subspace(m, q, Matrix(0, m, q), {});
    }

    static Subspace full(std::size_t m, std::uint32_t q) {
        std::vector<std::size_t> pivots(m);
        for (std::size_t i = 0; i < m; ++i) pivots[i] = i;
        return Subspace(m, q, Matrix::identity(m, q), std::move(pivots));
    }

    /// Span of the rows of `generators`, canonicalized.
    static Subspace from_matrix(const Matrix& generators) {
        auto red = rref(generators);
        Matrix basis(red.rank, generators.cols(), generators.field());
        for (std::size_t r = 0; r < red.rank; ++r)
            for (std::size_t c = 0; c < generators.cols(); ++c) basis(r, c) = red.R(r, c);
        return Subspace(generators.cols(), generators.field(), std::move(basis),
                        std::move(red.pivots));
    }

    static Subspace from_generators(const std::vector<Vec>& gens, std::size_t m,
                                    std::uint32_t q) {
        for (const Vec& g : gens) {
            if (g.size() != m) throw ShapeError("generator length does not match ambient dim");
        }
        if (gens.empty()) return zero(m, q);
        return from_matrix(Matrix::from_rows(gens, m, q));
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    std::uint32_t field() const { return q_; }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }

    /// Residual of x after eliminating the basis pivots; zero iff x is a member.
    Vec reduce(Vec x) const {
        if (x.size() != ambient_) throw ShapeError("vector length does not match ambient dim");
        for (std::size_t i = 0; i < basis_.rows(); ++i) {
            const std::uint32_t c = x[pivots_[i]];
            if (c != 0) {
                detail::row_addmul(x.data(), basis_.row_ptr(i), ambient_, neg_mod(c, q_), q_);
            }
        }
        return x;
    }

    bool contains(const Vec& x) const { return is_zero_vec(reduce(x)); }

    /// All q^dim member vectors; intended for small spaces (tests, oracles).
    std::vector<Vec> enumerate_points(std::size_t max_points = (1u << 20)) const {
        double size = 1.0;
        for (std::size_t i = 0; i < dim(); ++i) size *= q_;
        if (size > static_cast<double>(max_points)) {
            throw InstanceTooLargeError("subspace too large to enumerate");
        }
        std::vector<Vec> pts;
        pts.reserve(static_cast<std::size_t>(size));
        Vec coeff(dim(), 0);
        for (;;) {
            Vec p(ambient_, 0);
            for (std::size_t i = 0; i < dim(); ++i) {
                detail::row_addmul(p.data(), basis_.row_ptr(i), ambient_, coeff[i], q_);
            }
            pts.push_back(std::move(p));
            std::size_t k = 0;
            while (k < dim() && ++coeff[k] == q_) coeff[k++] = 0;
            if (k == dim()) break;
        }
        return pts;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.q_ == b.q_ && a.basis_ == b.basis_;
    }

  private:
    Subspace(std::size_t m, std::uint32_t q, Matrix basis, std::vector<std::size_t> pivots)
        : ambient_(m), q_(q), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    std::size_t ambient_;
    std::uint32_t q_;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

inline void check_same_space(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.field() != b.field()) {
        throw ShapeError("subspaces live in different ambient spaces");
    }
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
    check_same_space(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Subspace::from_matrix(vstack(a.basis(), b.basis()));
}

/// Constraint matrix C with V = {x : C x^T = 0}; C has m - dim(V) rows.
inline Matrix constraint_matrix(const Subspace& v) {
    if (v.is_zero()) return Matrix::identity(v.ambient_dim(), v.field());
    return kernel_basis(v.basis());
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    check_same_space(a, b);
    if (a.is_full()) return b;
    if (b.is_full()) return a;
    return Subspace::from_matrix(
        kernel_basis(vstack(constraint_matrix(a), constraint_matrix(b))));
}

/// Intersection of several subspaces with one stacked kernel computation.
inline Subspace intersect_all(std::span<const Subspace> spaces) {
    if (spaces.empty()) throw ParamError("intersect_all: empty input");
    std::size_t total_rows = 0;
    for (const auto& v : spaces) {
        check_same_space(spaces.front(), v);
        total_rows += v.ambient_dim() - v.dim();
    }
    const std::size_t m = spaces.front().ambient_dim();
    const std::uint32_t q = spaces.front().field();
    Matrix stacked(total_rows, m, q);
    std::size_t out = 0;
    for (const auto& v : spaces) {
        const Matrix c = constraint_matrix(v);
        for (std::size_t r = 0; r < c.rows(); ++r, ++out)
            for (std::size_t col = 0; col < m; ++col) stacked(out, col) = c(r, col);
    }
    return Subspace::from_matrix(kernel_basis(stacked));
}

/// Image {A v : v in V} under an invertible map.
inline Subspace apply_map(const Matrix& A, const Subspace& v) {
    if (A.rows() != A.cols() || A.rows() != v.ambient_dim() || A.field() != v.field()) {
        throw ShapeError("apply_map: map shape does not match ambient space");
    }
    if (rank_of(A) != A.rows()) throw SingularError("apply_map: map is singular");
    if (v.is_zero() || v.is_full()) return v;
    return Subspace::from_matrix(v.basis() * transpose(A));
}

/// Uniform draw from the Grassmannian of d-dimensional subspaces of F_q^m:
/// a d x m matrix with iid uniform entries has a uniform row space
/// conditioned on full rank, because every d-subspace is the row space of
/// exactly |GL(d, q)| such matrices.
inline Subspace uniform_random_subspace(std::size_t m, std::size_t d, std::uint32_t q,
                                        Rng& rng) {
    if (d > m) throw DomainError("subspace dimension exceeds ambient dimension");
    if (d == 0) return Subspace::zero(m, q);
    for (;;) {
        const Matrix g = random_matrix(d, m, q, rng);
        const Subspace s = Subspace::from_matrix(g);
        if (s.dim() == d) return s;
    }
}

/// Coset offset + direction with a canonical representative: the offset's
/// components at the direction's pivot columns are reduced to zero, so equal
/// cosets compare equal entrywise.
class AffineSubspace {
  public:
    AffineSubspace() : offset_(), direction_() {}

    AffineSubspace(Vec offset, Subspace direction)
        : offset_(direction.reduce(std::move(offset))), direction_(std::move(direction)) {}

    static AffineSubspace point(Vec p, std::uint32_t q) {
        const std::size_t m = p.size();
        return AffineSubspace(std::move(p), Subspace::zero(m, q));
    }

    const Vec& offset() const { return offset_; }
    const Subspace& direction() const { return direction_; }
    std::size_t ambient_dim() const { return direction_.ambient_dim(); }
    std::size_t dim() const { return direction_.dim(); }
    std::uint32_t field() const { return direction_.field(); }
    bool is_point() const { return direction_.is_zero(); }

    bool contains(const Vec& x) const {
        return direction_.contains(vec_sub(x, offset_, field()));
    }

    std::vector<Vec> enumerate_points(std::size_t max_points = (1u << 20)) const {
        auto pts = direction_.enumerate_points(max_points);
        for (Vec& p : pts) p = vec_add(p, offset_, field());
        return pts;
    }

    friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) {
        return a.offset_ == b.offset_ && a.direction_ == b.direction_;
    }

  private:
    Vec offset_;
    Subspace direction_;
};

inline void check_same_space(const AffineSubspace& a, const AffineSubspace& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.field() != b.field()) {
        throw ShapeError("affine subspaces live in different ambient spaces");
    }
}

/// Minkowski sum (o1 + V1) + (o2 + V2) = (o1 + o2) + (V1 + V2).
inline AffineSubspace affine_sum(const AffineSubspace& a, const AffineSubspace& b) {
    check_same_space(a, b);
    return AffineSubspace(vec_add(a.offset(), b.offset(), a.field()),
                          sum(a.direction(), b.direction()));
}

/// -(o + V) = (-o) + V, since V is linear.
inline AffineSubspace affine_neg(const AffineSubspace& a) {
    return AffineSubspace(vec_neg(a.offset(), a.field()), a.direction());
}

/// Exact coset intersection; an empty intersection is a regular outcome.
inline std::optional<AffineSubspace> affine_intersect(const AffineSubspace& a,
                                                      const AffineSubspace& b) {
    check_same_space(a, b);
    if (a.direction().is_full()) return b;
    if (b.direction().is_full()) return a;
    const Matrix ca = constraint_matrix(a.direction());
    const Matrix cb = constraint_matrix(b.direction());
    const Matrix stacked = vstack(ca, cb);
    Vec rhs = mat_vec(ca, a.offset());
    const Vec rhs_b = mat_vec(cb, b.offset());
    rhs.insert(rhs.end(), rhs_b.begin(), rhs_b.end());
    auto sol = solve_affine(stacked, rhs);
    if (!sol) return std::nullopt;
    return AffineSubspace(std::move(sol->particular), Subspace::from_matrix(sol->kernel));
}

/// A (o + V) = A o + A V for invertible A.
inline AffineSubspace affine_map(const Matrix& A, const AffineSubspace& x) {
    return AffineSubspace(mat_vec(A, x.offset()), apply_map(A, x.direction()));
}

}  // namespace subldpc

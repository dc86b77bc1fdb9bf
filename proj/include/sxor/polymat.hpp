#pragma once

// Dense matrices over GF(2^m) and over F2[z].
//
// Rational functions in F2(z) never appear as a type: an inverse over F2(z)
// is carried as the pair (det, adjugate), i.e. M^-1 = adj / det.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sxor/error.hpp"
#include "sxor/gf2m.hpp"
#include "sxor/gf2poly.hpp"

namespace sxor {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<T> column(std::size_t c) const {
        std::vector<T> out;
        out.reserve(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    // 0-based column indices, in the given order.
    Matrix select_columns(std::span<const std::size_t> idx) const {
        Matrix out;
        out.rows_ = rows_;
        out.cols_ = idx.size();
        out.data_.reserve(rows_ * idx.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c : idx) {
                if (c >= cols_) throw InvalidArgument("column index out of range");
                out.data_.push_back((*this)(r, c));
            }
        return out;
    }

    Matrix without(std::size_t skip_row, std::size_t skip_col) const {
        Matrix out;
        out.rows_ = rows_ - 1;
        out.cols_ = cols_ - 1;
        out.data_.reserve(out.rows_ * out.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == skip_row) continue;
            for (std::size_t c = 0; c < cols_; ++c)
                if (c != skip_col) out.data_.push_back((*this)(r, c));
        }
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InvalidArgument("matrix dimension mismatch in product");
        if (a.cols_ == 0) throw InvalidArgument("empty inner dimension");
        Matrix out;
        out.rows_ = a.rows_;
        out.cols_ = b.cols_;
        out.data_.reserve(a.rows_ * b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t c = 0; c < b.cols_; ++c) {
                T acc = a(r, 0) * b(0, c);
                for (std::size_t k = 1; k < a.cols_; ++k) acc += a(r, k) * b(k, c);
                out.data_.push_back(std::move(acc));
            }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using FieldMatrix = Matrix<FieldElem>;
using PolyMatrix = Matrix<Poly2>;

inline FieldMatrix field_identity(std::size_t n, const FieldCtx& ctx) {
    FieldMatrix out(n, n, FieldElem::zero(ctx));
    for (std::size_t i = 0; i < n; ++i) out(i, i) = FieldElem::one(ctx);
    return out;
}

inline PolyMatrix poly_identity(std::size_t n) {
    PolyMatrix out(n, n, Poly2{});
    for (std::size_t i = 0; i < n; ++i) out(i, i) = Poly2::one();
    return out;
}

// K x N matrix with entry (i, j) = z^(i*j), 0-based.
inline FieldMatrix vandermonde(std::size_t k, std::size_t n, const FieldCtx& ctx) {
    if (k == 0 || k > n || n > ctx.order())
        throw InvalidArgument("Vandermonde dimensions need 1 <= K <= N <= 2^m - 1 (K=" + std::to_string(k) +
                              ", N=" + std::to_string(n) + ", m=" + std::to_string(ctx.m()) + ")");
    FieldMatrix out(k, n, FieldElem::zero(ctx));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = f_pow(static_cast<std::uint64_t>(i * j), ctx);
    return out;
}

// Gauss-Jordan elimination. Throws Singular for rank-deficient input.
inline FieldMatrix field_inverse(const FieldMatrix& m) {
    if (!m.square()) throw InvalidArgument("field_inverse needs a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return m;
    const FieldCtx ctx = m(0, 0).ctx();
    FieldMatrix a = m;
    FieldMatrix inv = field_identity(n, ctx);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) throw Singular("matrix is singular over GF(2^" + std::to_string(ctx.m()) + ")");
        a.swap_rows(piv, col);
        inv.swap_rows(piv, col);
        const FieldElem scale = f_inv(a(col, col));
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) *= scale;
            inv(col, c) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col).is_zero()) continue;
            const FieldElem f = a(r, col);
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) += f * a(col, c);
                inv(r, c) += f * inv(col, c);
            }
        }
    }
    return inv;
}

inline PolyMatrix lift(const FieldMatrix& m) {
    PolyMatrix out(m.rows(), m.cols(), Poly2{});
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).poly();
    return out;
}

// Fraction-free (Bareiss) elimination over F2[z]. Row swaps carry no sign in
// characteristic 2, and every intermediate division is exact.
inline Poly2 determinant(const PolyMatrix& m) {
    if (!m.square()) throw InvalidArgument("determinant needs a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Poly2::one();
    PolyMatrix a = m;
    Poly2 prev = Poly2::one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a(piv, k).is_zero()) ++piv;
        if (piv == n) return {};
        a.swap_rows(piv, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly2 num = a(i, j) * a(k, k) + a(i, k) * a(k, j);
                if (prev == Poly2::one()) {
                    a(i, j) = std::move(num);
                } else {
                    DivRem qr = divrem(num, prev);
                    a(i, j) = std::move(qr.quotient);
                }
            }
            a(i, k) = Poly2{};
        }
        prev = a(k, k);
    }
    return a(n - 1, n - 1);
}

struct DetAdjugate {
    Poly2 det;
    PolyMatrix adj;
};

// adj(j, i) = det of m with row i and column j removed (no signs over F2),
// so that m * adj = adj * m = det * I.
inline DetAdjugate det_adjugate(const PolyMatrix& m) {
    if (!m.square()) throw InvalidArgument("det_adjugate needs a square matrix");
    const std::size_t n = m.rows();
    DetAdjugate out{determinant(m), poly_identity(n)};
    if (n <= 1) return out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.adj(j, i) = determinant(m.without(i, j));
    return out;
}

// M^-1 = numer / denom in lowest terms: det and adjugate divided by the gcd
// of det and every adjugate entry. Throws Singular when det = 0.
struct InverseFraction {
    Poly2 denom;
    PolyMatrix numer;
};

inline InverseFraction reduced_inverse(const PolyMatrix& m) {
    DetAdjugate da = det_adjugate(m);
    if (da.det.is_zero()) throw Singular("matrix is singular over F2(z)");
    Poly2 common = da.det;
    for (std::size_t r = 0; r < da.adj.rows(); ++r)
        for (std::size_t c = 0; c < da.adj.cols(); ++c) common = gcd(std::move(common), da.adj(r, c));
    if (common == Poly2::one()) return {std::move(da.det), std::move(da.adj)};
    InverseFraction out{divrem(da.det, common).quotient, std::move(da.adj)};
    for (std::size_t r = 0; r < out.numer.rows(); ++r)
        for (std::size_t c = 0; c < out.numer.cols(); ++c) out.numer(r, c) = divrem(out.numer(r, c), common).quotient;
    return out;
}

} // namespace sxor

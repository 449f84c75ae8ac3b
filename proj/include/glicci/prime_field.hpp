#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "glicci/errors.hpp"

namespace glicci {

using Residue = std::uint32_t;

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Arithmetic context for GF(p), p prime below 2^31. Elements are plain
/// residues in [0, p); the context is carried by the containers.
class PrimeField {
public:
    PrimeField() = default;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p >= (1u << 31) || !is_prime(p))
            throw InvalidInput("modulus must be a prime below 2^31: " + std::to_string(p));
    }

    std::uint32_t modulus() const { return p_; }

    Residue reduce(std::int64_t v) const {
        const auto m = static_cast<std::int64_t>(p_);
        v %= m;
        return static_cast<Residue>(v < 0 ? v + m : v);
    }
    Residue add(Residue a, Residue b) const {
        const std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
    Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const {
        return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
    }
    /// a + b*c
    Residue mul_add(Residue a, Residue b, Residue c) const {
        return static_cast<Residue>((static_cast<std::uint64_t>(b) * c + a) % p_);
    }

    Residue inv(Residue a) const {
        if (a == 0) throw DivisionByZero();
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = p_, new_r = a;
        while (new_r != 0) {
            const std::int64_t q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        return reduce(t);
    }

    Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }

    Residue pow(Residue a, std::uint64_t e) const {
        Residue r = 1 % p_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_ = 2;
};

/// A single element of GF(p) carrying its modulus.
class PrimeFieldElement {
public:
    PrimeFieldElement(PrimeField f, std::int64_t v) : field_(f), residue_(f.reduce(v)) {}

    Residue residue() const { return residue_; }
    const PrimeField& field() const { return field_; }

    PrimeFieldElement inverse() const { return {field_, field_.inv(residue_)}; }

    friend PrimeFieldElement operator+(PrimeFieldElement a, PrimeFieldElement b) {
        return {a.field_, a.field_.add(a.residue_, b.residue_)};
    }
    friend PrimeFieldElement operator-(PrimeFieldElement a, PrimeFieldElement b) {
        return {a.field_, a.field_.sub(a.residue_, b.residue_)};
    }
    friend PrimeFieldElement operator*(PrimeFieldElement a, PrimeFieldElement b) {
        return {a.field_, a.field_.mul(a.residue_, b.residue_)};
    }
    friend PrimeFieldElement operator/(PrimeFieldElement a, PrimeFieldElement b) {
        return {a.field_, a.field_.div(a.residue_, b.residue_)};
    }
    friend bool operator==(const PrimeFieldElement&, const PrimeFieldElement&) = default;

private:
    PrimeField field_;
    Residue residue_;
};

inline PrimeFieldElement field_inverse(PrimeFieldElement a) { return a.inverse(); }

/// Dense row-major matrix over GF(p).
class FpMatrix {
public:
    FpMatrix(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    FpMatrix(PrimeField field, std::size_t rows, std::size_t cols, std::vector<Residue> entries)
        : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows * cols) throw InvalidInput("matrix entry count does not match shape");
        for (auto& v : data_) v = field_.reduce(v);
    }

    static FpMatrix identity(PrimeField field, std::size_t n) {
        FpMatrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const PrimeField& field() const { return field_; }

    Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    /// Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = r;
            while (piv < rows_ && (*this)(piv, c) == 0) ++piv;
            if (piv == rows_) continue;
            swap_rows(piv, r);
            scale_row(r, field_.inv((*this)(r, c)));
            for (std::size_t i = 0; i < rows_; ++i)
                if (i != r && (*this)(i, c) != 0) add_row_multiple(i, r, field_.neg((*this)(i, c)), c);
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        FpMatrix copy = *this;
        return copy.forward_eliminate();
    }

    /// Canonical kernel basis: one vector per free column of the RREF, with a
    /// 1 in that column.
    std::vector<std::vector<Residue>> kernel_basis() const {
        FpMatrix r = *this;
        const auto pivots = r.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<Residue>> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<Residue> v(cols_, 0);
            v[f] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = field_.neg(r(i, f));
            basis.push_back(std::move(v));
        }
        return basis;
    }

    std::vector<Residue> apply(std::span<const Residue> v) const {
        if (v.size() != cols_) throw InvalidInput("vector length does not match matrix columns");
        std::vector<Residue> out(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < cols_; ++j) {
                acc += static_cast<std::uint64_t>((*this)(i, j)) * v[j];
                if ((j & 7) == 7) acc %= field_.modulus();
            }
            out[i] = static_cast<Residue>(acc % field_.modulus());
        }
        return out;
    }

    friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
        if (a.cols_ != b.rows_) throw InvalidInput("matrix product shape mismatch");
        FpMatrix out(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Residue aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = a.field_.mul_add(out(i, j), aik, b(k, j));
            }
        return out;
    }

    Residue determinant() const {
        if (rows_ != cols_) throw InvalidInput("determinant of a non-square matrix");
        FpMatrix m = *this;
        Residue det = 1;
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t piv = c;
            while (piv < rows_ && m(piv, c) == 0) ++piv;
            if (piv == rows_) return 0;
            if (piv != c) {
                m.swap_rows(piv, c);
                det = field_.neg(det);
            }
            det = field_.mul(det, m(c, c));
            const Residue inv = field_.inv(m(c, c));
            for (std::size_t i = c + 1; i < rows_; ++i)
                if (m(i, c) != 0) m.add_row_multiple(i, c, field_.neg(field_.mul(m(i, c), inv)), c);
        }
        return det;
    }

    /// Inverse, or an empty optional-like result signalled by `ok = false`.
    bool try_inverse(FpMatrix& out) const {
        if (rows_ != cols_) throw InvalidInput("inverse of a non-square matrix");
        const std::size_t n = rows_;
        FpMatrix aug(field_, n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
            aug(i, n + i) = 1;
        }
        const auto pivots = aug.rref();
        if (pivots.size() < n || pivots[n - 1] != n - 1) return false;
        out = FpMatrix(field_, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
        return true;
    }

    /// Characteristic polynomial det(tI - A), ascending coefficients, monic.
    /// Hessenberg reduction followed by the standard recurrence.
    std::vector<Residue> characteristic_polynomial() const {
        if (rows_ != cols_) throw InvalidInput("characteristic polynomial of a non-square matrix");
        const std::size_t n = rows_;
        FpMatrix h = *this;
        for (std::size_t m = 1; m + 1 < n + 1 && m < n; ++m) {
            std::size_t piv = m;
            while (piv < n && h(piv, m - 1) == 0) ++piv;
            if (piv == n) continue;
            if (piv != m) {
                h.swap_rows(piv, m);
                h.swap_cols(piv, m);
            }
            const Residue inv = field_.inv(h(m, m - 1));
            for (std::size_t i = m + 1; i < n; ++i) {
                const Residue u = field_.mul(h(i, m - 1), inv);
                if (u == 0) continue;
                for (std::size_t j = 0; j < n; ++j) h(i, j) = field_.sub(h(i, j), field_.mul(u, h(m, j)));
                for (std::size_t j = 0; j < n; ++j) h(j, m) = field_.add(h(j, m), field_.mul(u, h(j, i)));
            }
        }
        // p_k = characteristic polynomial of the leading k x k block.
        std::vector<std::vector<Residue>> p(n + 1);
        p[0] = {1};
        for (std::size_t k = 1; k <= n; ++k) {
            std::vector<Residue> cur(k + 1, 0);
            // t * p_{k-1} - h(k-1,k-1) * p_{k-1}
            for (std::size_t i = 0; i < k; ++i) {
                cur[i + 1] = field_.add(cur[i + 1], p[k - 1][i]);
                cur[i] = field_.sub(cur[i], field_.mul(h(k - 1, k - 1), p[k - 1][i]));
            }
            Residue sub_prod = 1;
            for (std::size_t i = 1; i < k; ++i) {
                // term for row k-1-i
                const std::size_t r = k - 1 - i;
                sub_prod = field_.mul(sub_prod, h(r + 1, r));
                const Residue coef = field_.mul(sub_prod, h(r, k - 1));
                if (coef == 0) continue;
                for (std::size_t j = 0; j < p[r].size(); ++j) cur[j] = field_.sub(cur[j], field_.mul(coef, p[r][j]));
            }
            p[k] = std::move(cur);
        }
        return p[n];
    }

    friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

private:
    std::size_t forward_eliminate() {
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = r;
            while (piv < rows_ && (*this)(piv, c) == 0) ++piv;
            if (piv == rows_) continue;
            swap_rows(piv, r);
            const Residue inv = field_.inv((*this)(r, c));
            for (std::size_t i = r + 1; i < rows_; ++i)
                if ((*this)(i, c) != 0) add_row_multiple(i, r, field_.neg(field_.mul((*this)(i, c), inv)), c);
            ++r;
        }
        return r;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    void scale_row(std::size_t r, Residue s) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = field_.mul((*this)(r, j), s);
    }
    // row[dst] += s * row[src], starting at column `from`
    void add_row_multiple(std::size_t dst, std::size_t src, Residue s, std::size_t from = 0) {
        for (std::size_t j = from; j < cols_; ++j)
            if ((*this)(src, j) != 0) (*this)(dst, j) = field_.mul_add((*this)(dst, j), s, (*this)(src, j));
    }

    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Residue> data_;
};

}  // namespace glicci

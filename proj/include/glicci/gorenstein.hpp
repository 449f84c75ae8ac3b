#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "glicci/errors.hpp"
#include "glicci/groebner.hpp"
#include "glicci/hvector.hpp"
#include "glicci/multipoly.hpp"
#include "glicci/prime_field.hpp"
#include "glicci/random.hpp"
#include "glicci/unipoly.hpp"

namespace glicci {

constexpr unsigned kMatrixRetries = 32;
constexpr unsigned kProjectionRetries = 16;

/// Skew-symmetric matrix of homogeneous forms stored by its strict upper
/// triangle in row-major order.
class SkewPolyMatrix {
public:
    SkewPolyMatrix() = default;
    SkewPolyMatrix(PrimeField field, std::size_t n) : field_(field), n_(n), upper_(n * (n - 1) / 2, MultiPoly(field)) {}

    std::size_t size() const { return n_; }
    const PrimeField& field() const { return field_; }

    MultiPoly entry(std::size_t i, std::size_t j) const {
        if (i == j) return MultiPoly(field_);
        if (i < j) return upper_[index(i, j)];
        return upper_[index(j, i)].scaled(field_.neg(1));
    }
    void set(std::size_t i, std::size_t j, MultiPoly f) {
        if (i >= j) throw InvalidInput("set only the strict upper triangle");
        upper_[index(i, j)] = std::move(f);
    }
    const std::vector<MultiPoly>& upper() const { return upper_; }

    /// Size line followed by one upper entry per line, row-major.
    std::string serialize() const {
        std::string s = std::to_string(n_) + '\n';
        for (const auto& f : upper_) s += f.to_string() + '\n';
        return s;
    }

private:
    std::size_t index(std::size_t i, std::size_t j) const { return i * n_ - i * (i + 1) / 2 + (j - i - 1); }

    PrimeField field_;
    std::size_t n_ = 0;
    std::vector<MultiPoly> upper_;
};

namespace detail {

/// Pfaffian of the principal submatrix on the index set `mask`, expanding
/// along its smallest index.
template <class Ring>
class PfaffianMemo {
public:
    using Value = typename Ring::Value;
    explicit PfaffianMemo(const Ring& ring) : ring_(ring) {}

    Value operator()(std::uint32_t mask) {
        if (mask == 0) return ring_.one();
        if (std::popcount(mask) % 2) return ring_.zero();
        if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
        const int a = std::countr_zero(mask);
        const std::uint32_t rest = mask & ~(1u << a);
        Value acc = ring_.zero();
        int k = 0;
        for (std::uint32_t m = rest; m; m &= m - 1) {
            ++k;
            const int b = std::countr_zero(m);
            if (ring_.is_zero_entry(a, b)) continue;
            const Value sub = (*this)(rest & ~(1u << b));
            // Position of b in the sorted index set is k, so the sign is (-1)^(k+1).
            acc = ring_.add_product(acc, ring_.entry(a, b), sub, k % 2 == 1);
        }
        memo_.emplace(mask, acc);
        return acc;
    }

private:
    const Ring& ring_;
    std::unordered_map<std::uint32_t, Value> memo_;
};

struct PolyRing {
    using Value = MultiPoly;
    const SkewPolyMatrix& m;
    Value one() const { return MultiPoly::constant(m.field(), 1); }
    Value zero() const { return MultiPoly(m.field()); }
    bool is_zero_entry(int a, int b) const { return m.entry(a, b).is_zero(); }
    Value entry(int a, int b) const { return m.entry(a, b); }
    Value add_product(const Value& acc, const Value& x, const Value& y, bool plus) const {
        const MultiPoly prod = x * y;
        return plus ? acc + prod : acc - prod;
    }
};

struct NumericRing {
    using Value = Residue;
    const FpMatrix& m;
    Value one() const { return 1; }
    Value zero() const { return 0; }
    bool is_zero_entry(int a, int b) const { return m(a, b) == 0; }
    Value entry(int a, int b) const { return m(a, b); }
    Value add_product(Value acc, Value x, Value y, bool plus) const {
        const auto& f = m.field();
        const Residue prod = f.mul(x, y);
        return plus ? f.add(acc, prod) : f.sub(acc, prod);
    }
};

}  // namespace detail

/// Pfaffian of a numeric skew-symmetric matrix of even size.
inline Residue pfaffian(const FpMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("Pfaffian of a non-square matrix");
    if (m.rows() > 24) throw InvalidInput("Pfaffian size limit exceeded");
    if (m.rows() % 2) return 0;
    detail::NumericRing ring{m};
    detail::PfaffianMemo<detail::NumericRing> pf(ring);
    return pf((1u << m.rows()) - 1);
}

/// The 2r+1 Pfaffians of the matrix with row and column i deleted, with
/// sign (-1)^i, so that M times the vector is zero.
inline std::vector<MultiPoly> submaximal_pfaffians(const SkewPolyMatrix& m) {
    const std::size_t n = m.size();
    if (n % 2 == 0 || n == 0) throw InvalidInput("submaximal Pfaffians need an odd-size matrix");
    if (n > 24) throw InvalidInput("matrix too large");
    detail::PolyRing ring{m};
    detail::PfaffianMemo<detail::PolyRing> pf(ring);
    const std::uint32_t full = (1u << n) - 1;
    std::vector<MultiPoly> out;
    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly p = pf(full & ~(1u << i));
        out.push_back(i % 2 ? p.scaled(m.field().neg(1)) : p);
    }
    return out;
}

inline MultiPoly random_form(PrimeField field, unsigned degree, SeededStream& rng) {
    std::vector<Term> terms;
    for (Monomial mono : monomials_of_degree(degree))
        terms.push_back({mono, static_cast<Residue>(rng.below(field.modulus()))});
    return MultiPoly::from_terms(field, std::move(terms));
}

inline MultiPoly random_linear_form(PrimeField field, SeededStream& rng) { return random_form(field, 1, rng); }

/// Skew matrix with a random form of degree sigma - g_i - g_j in each
/// positive-degree entry and zero elsewhere.
inline SkewPolyMatrix random_skew_matrix(PrimeField field, const DegreeMatrix& dm, SeededStream& rng) {
    SkewPolyMatrix m(field, dm.size());
    for (std::size_t i = 0; i < dm.size(); ++i)
        for (std::size_t j = i + 1; j < dm.size(); ++j) {
            const int deg = dm.entry_degree(i, j);
            if (deg > 0) m.set(i, j, random_form(field, static_cast<unsigned>(deg), rng));
        }
    return m;
}

struct GorensteinScheme {
    SkewPolyMatrix matrix;
    DegreeMatrix degrees;
    GroebnerBasis ideal;
    unsigned draw = 0;  // which retry produced it
};

inline GroebnerBasis pfaffian_ideal(const SkewPolyMatrix& m) { return groebner(m.field(), submaximal_pfaffians(m)); }

/// Random arithmetically Gorenstein scheme with h-vector h. Draw k uses the
/// stream rng.split(k); draws whose ideal has the wrong h-vector are retried.
inline GorensteinScheme random_gorenstein(const HVector& h, PrimeField field, const SeededStream& rng,
                                          unsigned retries = kMatrixRetries) {
    const DegreeMatrix dm = generic_degree_matrix(h);
    for (unsigned k = 0; k < retries; ++k) {
        SeededStream draw = rng.split(k);
        SkewPolyMatrix m = random_skew_matrix(field, dm, draw);
        GroebnerBasis g = pfaffian_ideal(m);
        try {
            if (h_vector(g) == h) return {std::move(m), dm, std::move(g), k};
        } catch (const DimensionMismatch&) {
        }
    }
    throw DegeneracyError("no matrix draw produced h-vector " + h.to_string());
}

inline GorensteinScheme random_gorenstein(const HVector& h, std::uint32_t p, std::uint64_t seed) {
    return random_gorenstein(h, PrimeField(p), SeededStream(seed));
}

namespace detail {

struct ProjectionMaps {
    FpMatrix to_next_by_xh;
    FpMatrix to_next_by_ell;
};

/// Operator of multiplication by ell/xh on (S/I)_t, or nothing if xh is a
/// zero divisor there.
inline std::optional<FpMatrix> projection_operator(const GroebnerBasis& ig, const MultiPoly& ell, const MultiPoly& xh,
                                                   unsigned t) {
    const StandardBasis src(ig, t), dst(ig, t + 1);
    if (src.size() != dst.size()) throw DimensionMismatch("Hilbert function has not stabilized at degree " + std::to_string(t));
    const FpMatrix x = multiplication_matrix(ig, xh, src, dst);
    const FpMatrix l = multiplication_matrix(ig, ell, src, dst);
    FpMatrix xinv(ig.field(), x.rows(), x.cols());
    if (!x.try_inverse(xinv)) return std::nullopt;
    return xinv * l;
}

/// A degree where the Hilbert function equals the degree of the scheme.
inline unsigned stable_degree(const GroebnerBasis& ig) {
    const HVector h = h_vector(ig);
    return h.empty() ? 0 : static_cast<unsigned>(h.length() - 1);
}

}  // namespace detail

/// Characteristic polynomial of multiplication by ell/xh on the coordinate
/// ring of the scheme, or nothing when xh vanishes at a point of it.
inline std::optional<UniPoly> char_poly_for(const GroebnerBasis& ig, const MultiPoly& ell, const MultiPoly& xh) {
    const auto op = detail::projection_operator(ig, ell, xh, detail::stable_degree(ig));
    if (!op) return std::nullopt;
    return UniPoly(ig.field(), op->characteristic_polynomial());
}

struct Projection {
    MultiPoly ell;
    MultiPoly xh;
    UniPoly charpoly;
};

/// Random projection to a line: draws xh until it is a nonzero divisor, and a
/// random ell.
inline Projection char_poly_of_projection(const GroebnerBasis& ig, SeededStream& rng) {
    const auto& field = ig.field();
    for (unsigned k = 0; k < kProjectionRetries; ++k) {
        MultiPoly xh = random_linear_form(field, rng);
        MultiPoly ell = random_linear_form(field, rng);
        if (xh.is_zero()) continue;
        if (auto f = char_poly_for(ig, ell, xh)) return {std::move(ell), std::move(xh), std::move(*f)};
    }
    throw BadPosition("no dehomogenizing linear form avoids the scheme");
}

/// Subscheme cut out by f_d(ell/xh): I_X = (I_G + F_d) : xh^infinity,
/// computed degree by degree through the coordinate ring of G.
inline GroebnerBasis extract_subscheme(const GroebnerBasis& ig, const MultiPoly& ell, const MultiPoly& xh,
                                       const UniPoly& fd) {
    const auto& field = ig.field();
    if (fd.is_zero()) throw InvalidInput("zero factor");
    if (fd.degree() == 0) return unit_ideal(field);
    const HVector hg = h_vector(ig);
    const unsigned top = static_cast<unsigned>(hg.length());
    const auto op = detail::projection_operator(ig, ell, xh, top);
    if (!op) throw BadPosition("dehomogenizing form vanishes on the scheme");
    const std::size_t n = op->rows();

    // P = fd(T) by Horner; the ideal of X in degree top is the image of P.
    FpMatrix p(field, n, n);
    for (long i = fd.degree(); i >= 0; --i) {
        p = p * *op;
        for (std::size_t r = 0; r < n; ++r) p(r, r) = field.add(p(r, r), fd.coefficients()[static_cast<std::size_t>(i)]);
    }
    // Rows of q span the functionals vanishing on the image of P.
    FpMatrix pt(field, n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) pt(r, c) = p(c, r);
    const auto left = pt.kernel_basis();
    if (left.size() != static_cast<std::size_t>(fd.degree()))
        throw ExtractionError("factor does not cut out a subscheme of degree " + std::to_string(fd.degree()));
    FpMatrix q(field, left.size(), n);
    for (std::size_t r = 0; r < left.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) q(r, c) = left[r][c];

    // embed[t]: (S/I_G)_t -> (S/I_G)_top, multiplication by xh^(top - t), composed with q.
    std::vector<FpMatrix> embed(top + 1, FpMatrix(field, 0, 0));
    embed[top] = q;
    for (unsigned t = top; t-- > 0;) {
        const StandardBasis src(ig, t), dst(ig, t + 1);
        embed[t] = embed[t + 1] * multiplication_matrix(ig, xh, src, dst);
    }
    GroebnerBasis ix = ideal_from_graded_pieces(ig, top, [&](unsigned t, const StandardBasis& src) {
        if (src.size() == 0) return std::vector<std::vector<Residue>>{};
        return embed[t].kernel_basis();
    });
    if (scheme_degree(ix) != static_cast<unsigned>(fd.degree()))
        throw ExtractionError("extracted scheme has the wrong degree");
    return ix;
}

/// I_Y = I_G : I_X.
inline GroebnerBasis residual(const GroebnerBasis& ig, const GroebnerBasis& ix) { return quotient_of_saturated(ig, ix); }

struct SplitWitness {
    MultiPoly ell;
    MultiPoly xh;
    UniPoly charpoly;
    UniPoly factor;
    unsigned projection = 0;  // which projection attempt succeeded
};

/// Tries random projections until one has a square-free characteristic
/// polynomial (so G is reduced), then looks for a degree-d factor. The factor
/// degrees of a square-free projection are the Frobenius orbit sizes of the
/// points, so a missing degree-d factor ends the search.
inline std::optional<SplitWitness> is_reduced_and_split(const GroebnerBasis& ig, unsigned d, SeededStream& rng,
                                                        unsigned retries = kProjectionRetries) {
    for (unsigned k = 0; k < retries; ++k) {
        std::optional<Projection> proj;
        try {
            proj = char_poly_of_projection(ig, rng);
        } catch (const BadPosition&) {
            return std::nullopt;
        }
        if (!is_squarefree(proj->charpoly)) continue;
        SeededStream factor_rng = rng.split(k);
        auto fd = find_factor_of_degree(proj->charpoly, d, factor_rng);
        if (!fd) return std::nullopt;
        return SplitWitness{std::move(proj->ell), std::move(proj->xh), std::move(proj->charpoly), std::move(*fd), k};
    }
    return std::nullopt;
}

}  // namespace glicci

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glicci/errors.hpp"
#include "glicci/gorenstein.hpp"
#include "glicci/groebner.hpp"
#include "glicci/hvector.hpp"
#include "glicci/prime_field.hpp"
#include "glicci/random.hpp"
#include "glicci/unipoly.hpp"

namespace glicci {

constexpr unsigned kDefaultMaxAttempts = 50;

enum class PieceTag { QuotientRing, IdealModulo };

/// Basis of a graded piece, as normal forms modulo the ambient ideal.
struct GradedPieceBasis {
    unsigned degree = 0;
    std::vector<MultiPoly> basis;
    PieceTag tag = PieceTag::QuotientRing;
    std::size_t dimension() const { return basis.size(); }
};

/// (I_num / I_den)_t as the kernel of (S/I_den)_t -> (S/I_num)_t.
inline GradedPieceBasis graded_piece(const GroebnerBasis& num, const GroebnerBasis& den, unsigned t) {
    if (!is_subideal(den, num)) throw InvalidInput("graded_piece needs I_den inside I_num");
    const StandardBasis src(den, t), dst(num, t);
    FpMatrix m(den.field(), dst.size(), src.size());
    for (std::size_t k = 0; k < src.size(); ++k) {
        const auto col = dst.coordinates(normal_form(MultiPoly::term(den.field(), src.monomials()[k], 1), num));
        for (std::size_t r = 0; r < col.size(); ++r) m(r, k) = col[r];
    }
    GradedPieceBasis out{t, {}, PieceTag::IdealModulo};
    for (const auto& v : m.kernel_basis()) out.basis.push_back(src.polynomial(v));
    return out;
}

/// Standard-monomial basis of (S/I)_t.
inline GradedPieceBasis quotient_piece(const GroebnerBasis& i, unsigned t) {
    GradedPieceBasis out{t, {}, PieceTag::QuotientRing};
    if (i.is_unit()) return out;
    for (Monomial m : standard_monomials(i, t)) out.basis.push_back(MultiPoly::term(i.field(), m, 1));
    return out;
}

/// Graded module T that is either S/I or I_num/I, both inside S/I.
struct HomTarget {
    GroebnerBasis ambient;
    std::optional<GroebnerBasis> numerator;

    static HomTarget quotient(GroebnerBasis i) { return {std::move(i), std::nullopt}; }
    static HomTarget ideal_modulo(GroebnerBasis num, GroebnerBasis den) { return {std::move(den), std::move(num)}; }

    GradedPieceBasis piece(unsigned t) const {
        return numerator ? graded_piece(*numerator, ambient, t) : quotient_piece(ambient, t);
    }
};

/// dim Hom_S(I_G, T)_0 from the presentation M: a homomorphism is a choice of
/// phi_j in T_{g_j} with sum_j M_kj phi_j = 0 for every row k.
inline std::size_t hom_dim_zero(const SkewPolyMatrix& m, const DegreeMatrix& dm, const HomTarget& target) {
    const auto& amb = target.ambient;
    const auto& field = amb.field();
    const std::size_t n = m.size();
    if (dm.size() != n) throw DimensionMismatch("degree matrix does not match the skew matrix");

    std::vector<GradedPieceBasis> unknowns;
    std::vector<std::size_t> col_offset{0};
    for (std::size_t j = 0; j < n; ++j) {
        unknowns.push_back(target.piece(dm.generators[j]));
        col_offset.push_back(col_offset.back() + unknowns.back().dimension());
    }
    std::vector<StandardBasis> row_bases;
    std::vector<std::size_t> row_offset{0};
    for (std::size_t k = 0; k < n; ++k) {
        const int deg = static_cast<int>(dm.sigma) - static_cast<int>(dm.generators[k]);
        row_bases.emplace_back(amb, static_cast<unsigned>(std::max(deg, 0)));
        row_offset.push_back(row_offset.back() + row_bases.back().size());
    }
    FpMatrix a(field, row_offset.back(), col_offset.back());
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            const MultiPoly mkj = m.entry(k, j);
            if (mkj.is_zero()) continue;
            for (std::size_t b = 0; b < unknowns[j].dimension(); ++b) {
                const auto col = row_bases[k].coordinates(normal_form(mkj * unknowns[j].basis[b], amb));
                for (std::size_t r = 0; r < col.size(); ++r) a(row_offset[k] + r, col_offset[j] + b) = col[r];
            }
        }
    return a.cols() - a.rank();
}

/// HF(S/I_X, t) = min(C(t+3,3), d) up to one degree past stabilization.
inline bool generic_hilbert_function_test(const GroebnerBasis& ix, unsigned d) {
    bool reached = false;
    for (unsigned t = 0;; ++t) {
        const unsigned long full = static_cast<unsigned long>(t + 3) * (t + 2) * (t + 1) / 6;
        const unsigned expected = static_cast<unsigned>(std::min<unsigned long>(full, d));
        if (hilbert_function(ix, t) != expected) return false;
        if (expected == d) {
            if (reached) return true;
            reached = true;
        }
    }
}

enum class Verdict { Verified, Refuted, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "verified";
        case Verdict::Refuted: return "refuted";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct LinkWitness {
    MultiPoly ell;
    MultiPoly xh;
    UniPoly factor;
};

struct EdgeDims {
    std::size_t hom_ix = 0;
    std::size_t hom_iy = 0;
    std::size_t hom_sg = 0;
    HVector h_x;
    HVector h_y;
    friend bool operator==(const EdgeDims&, const EdgeDims&) = default;
};

struct EdgeTests {
    bool reduced = false;
    bool generic_x = false;
    bool generic_y = false;
    bool involution = false;
    friend bool operator==(const EdgeTests&, const EdgeTests&) = default;
};

/// Witness and outcome of one verification of the link d -- e through h.
struct EdgeCertificate {
    HVector h;
    unsigned d = 0;
    unsigned e = 0;
    std::uint32_t p = 0;
    std::uint64_t seed = 0;
    SkewPolyMatrix matrix;
    std::optional<LinkWitness> witness;
    EdgeDims dims;
    unsigned gdim = 0;
    EdgeTests tests;
    Verdict verdict = Verdict::Inconclusive;
    unsigned attempts = 0;  // attempts used; the witness comes from the last one
};

/// Runs every test of one split (G, X) and fills dims, tests and verdict.
/// Throws ExtractionError if the factor does not cut out a linked pair.
inline void evaluate_split(EdgeCertificate& cert, const GroebnerBasis& ig, const DegreeMatrix& dm) {
    const auto& w = *cert.witness;
    const auto f = char_poly_for(ig, w.ell, w.xh);
    if (!f) throw BadPosition("dehomogenizing form vanishes on the scheme");
    cert.tests.reduced = is_squarefree(*f) && (*f % w.factor).is_zero() && w.factor.degree() == static_cast<long>(cert.d);

    const GroebnerBasis ix = extract_subscheme(ig, w.ell, w.xh, w.factor);
    const GroebnerBasis iy = residual(ig, ix);
    cert.tests.involution = residual(ig, iy) == ix;
    if (!cert.tests.involution) throw ExtractionError("I_G : (I_G : I_X) differs from I_X");

    cert.dims.h_x = h_vector(ix);
    cert.dims.h_y = h_vector(iy);
    cert.tests.generic_x = generic_hilbert_function_test(ix, cert.d);
    cert.tests.generic_y = generic_hilbert_function_test(iy, cert.e);
    cert.dims.hom_ix = hom_dim_zero(cert.matrix, dm, HomTarget::ideal_modulo(ix, ig));
    cert.dims.hom_iy = hom_dim_zero(cert.matrix, dm, HomTarget::ideal_modulo(iy, ig));
    cert.dims.hom_sg = hom_dim_zero(cert.matrix, dm, HomTarget::quotient(ig));

    const long g = cert.gdim;
    const bool dims_ok = static_cast<long>(cert.dims.hom_ix) == g - 3L * cert.d &&
                         static_cast<long>(cert.dims.hom_iy) == g - 3L * cert.e;
    cert.verdict = cert.tests.reduced && cert.tests.generic_x && cert.tests.generic_y && dims_ok ? Verdict::Verified
                                                                                                 : Verdict::Refuted;
}

/// Attempt k draws G from SeededStream(seed).split(k). The first attempt that
/// yields a reduced G with a degree-d factor decides verified or refuted;
/// exhausting max_attempts gives an inconclusive certificate.
inline EdgeCertificate verify_edge(const HVector& h, unsigned d, std::uint32_t p, std::uint64_t seed,
                                   unsigned max_attempts = kDefaultMaxAttempts) {
    if (d > h.degree()) throw InvalidInput("d exceeds the degree of h");
    const PrimeField field(p);
    EdgeCertificate cert;
    cert.h = h;
    cert.d = d;
    cert.e = h.degree() - d;
    cert.p = p;
    cert.seed = seed;
    cert.gdim = gorenstein_family_dim(h);
    const SeededStream root(seed);
    for (unsigned k = 0; k < max_attempts; ++k) {
        cert.attempts = k + 1;
        const SeededStream stream = root.split(k);
        std::optional<GorensteinScheme> g;
        try {
            g = random_gorenstein(h, field, stream.split(0));
        } catch (const DegeneracyError&) {
            continue;
        }
        SeededStream proj_rng = stream.split(1);
        auto split = is_reduced_and_split(g->ideal, d, proj_rng);
        if (!split) continue;
        EdgeCertificate trial = cert;
        trial.matrix = g->matrix;
        trial.witness = LinkWitness{split->ell, split->xh, split->factor};
        try {
            evaluate_split(trial, g->ideal, g->degrees);
        } catch (const ExtractionError&) {
            continue;
        } catch (const BadPosition&) {
            continue;
        }
        return trial;
    }
    cert.verdict = Verdict::Inconclusive;
    return cert;
}

}  // namespace glicci

#pragma once

// Brute-force reference implementations. Each one avoids the library routine
// it checks: polynomials are enumerated, factors found by trial division and
// ideal membership decided by plain linear algebra in one degree.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "glicci/groebner.hpp"
#include "glicci/multipoly.hpp"
#include "glicci/prime_field.hpp"
#include "glicci/unipoly.hpp"

namespace oracle {

using namespace glicci;

/// All monic polynomials of degree n over GF(q), ascending coefficients.
inline std::vector<UniPoly> monic_polynomials(PrimeField field, unsigned n) {
    const std::uint32_t q = field.modulus();
    std::vector<UniPoly> out;
    std::vector<Residue> c(n + 1, 0);
    c[n] = 1;
    while (true) {
        out.emplace_back(field, c);
        unsigned i = 0;
        while (i < n && ++c[i] == q) c[i++] = 0;
        if (i == n) break;
    }
    return out;
}

/// Monic irreducibles of degree n, by trial division with every monic
/// polynomial of degree 1..n/2. Memoized per (q, n).
inline const std::vector<UniPoly>& irreducibles(PrimeField field, unsigned n) {
    static std::map<std::pair<std::uint32_t, unsigned>, std::vector<UniPoly>> memo;
    const auto key = std::make_pair(field.modulus(), n);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<UniPoly> out;
    for (const auto& f : monic_polynomials(field, n)) {
        bool irreducible = true;
        for (unsigned k = 1; 2 * k <= n && irreducible; ++k)
            for (const auto& g : irreducibles(field, k))
                if ((f % g).is_zero()) {
                    irreducible = false;
                    break;
                }
        if (irreducible) out.push_back(f);
    }
    return memo[key] = std::move(out);
}

/// Degrees of the irreducible factors of f with multiplicity, ascending, by
/// repeated trial division. Once 2k exceeds the remaining degree the
/// remainder is irreducible.
inline std::vector<unsigned> factor_degrees(const UniPoly& f) {
    std::vector<unsigned> out;
    UniPoly rest = f.monic();
    for (unsigned k = 1; 2 * static_cast<long>(k) <= rest.degree(); ++k)
        for (const auto& g : irreducibles(f.field(), k))
            while ((rest % g).is_zero()) {
                rest = UniPoly::divmod(rest, g).first;
                out.push_back(k);
            }
    if (rest.degree() > 0) out.push_back(static_cast<unsigned>(rest.degree()));
    std::sort(out.begin(), out.end());
    return out;
}

inline bool squarefree_by_division(const UniPoly& f) {
    for (unsigned k = 1; 2 * static_cast<long>(k) <= f.degree(); ++k)
        for (const auto& g : irreducibles(f.field(), k))
            if ((f % (g * g)).is_zero()) return false;
    return true;
}

inline bool subset_sums_to(const std::vector<unsigned>& parts, unsigned k) {
    std::vector<char> can(k + 1, 0);
    can[0] = 1;
    for (unsigned p : parts)
        for (unsigned s = k; s >= p && s > 0; --s)
            if (can[s - p]) can[s] = 1;
    return can[k];
}

/// Number of monic square-free degree-n polynomials over GF(q) with a factor
/// of degree k.
inline std::uint64_t count_split(PrimeField field, unsigned n, unsigned k) {
    std::uint64_t count = 0;
    for (const auto& f : monic_polynomials(field, n))
        if (squarefree_by_division(f) && subset_sums_to(factor_degrees(f), k)) ++count;
    return count;
}

/// Spanning set of I_t: every monomial multiple of a generator landing in
/// degree t, written in the monomial basis of S_t.
inline FpMatrix degree_span(PrimeField field, const std::vector<MultiPoly>& gens, unsigned t) {
    const auto basis = monomials_of_degree(t);
    std::map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i].bits()] = i;
    std::vector<std::vector<Residue>> rows;
    for (const auto& g : gens) {
        if (g.is_zero() || g.degree() > t) continue;
        for (Monomial m : monomials_of_degree(t - g.degree())) {
            std::vector<Residue> row(basis.size(), 0);
            for (const auto& term : g.terms()) row[index.at((term.m * m).bits())] = term.c;
            rows.push_back(std::move(row));
        }
    }
    FpMatrix a(field, rows.size(), basis.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < basis.size(); ++c) a(r, c) = rows[r][c];
    return a;
}

/// dim (S/I)_t from generators, no Groebner basis involved.
inline unsigned hilbert_function(PrimeField field, const std::vector<MultiPoly>& gens, unsigned t) {
    const unsigned full = static_cast<unsigned>(monomials_of_degree(t).size());
    return full - static_cast<unsigned>(degree_span(field, gens, t).rank());
}

/// Homogeneous f lies in the ideal generated by gens.
inline bool member(PrimeField field, const std::vector<MultiPoly>& gens, const MultiPoly& f) {
    if (f.is_zero()) return true;
    const unsigned t = f.degree();
    FpMatrix a = degree_span(field, gens, t);
    const std::size_t before = a.rank();
    const auto basis = monomials_of_degree(t);
    FpMatrix b(field, a.rows() + 1, a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) b(r, c) = a(r, c);
    for (const auto& term : f.terms()) {
        const auto it = std::find(basis.begin(), basis.end(), term.m);
        b(a.rows(), static_cast<std::size_t>(it - basis.begin())) = term.c;
    }
    return b.rank() == before;
}

using Point = std::array<Residue, kVariables>;

/// Ideal of a finite set of rational points: in each degree the kernel of
/// evaluation, up to one degree past the point where all points separate.
inline GroebnerBasis point_ideal(PrimeField field, const std::vector<Point>& pts) {
    std::vector<MultiPoly> gens;
    bool separated = false;
    for (unsigned t = 1;; ++t) {
        const auto mons = monomials_of_degree(t);
        FpMatrix ev(field, pts.size(), mons.size());
        for (std::size_t r = 0; r < pts.size(); ++r)
            for (std::size_t c = 0; c < mons.size(); ++c) {
                Residue v = 1;
                for (int i = 0; i < kVariables; ++i) v = field.mul(v, field.pow(pts[r][i], mons[c].exponent(i)));
                ev(r, c) = v;
            }
        for (const auto& k : ev.kernel_basis()) {
            std::vector<Term> terms;
            for (std::size_t c = 0; c < mons.size(); ++c)
                if (k[c]) terms.push_back({mons[c], k[c]});
            gens.push_back(MultiPoly::from_terms(field, std::move(terms)));
        }
        if (separated) break;
        separated = ev.rank() == pts.size();
    }
    return groebner(field, gens);
}

/// Pfaffian by the perfect-matching sum, for small even sizes.
inline Residue pfaffian_by_matchings(const FpMatrix& m) {
    const std::size_t n = m.rows();
    const PrimeField& f = m.field();
    if (n % 2) return 0;
    Residue total = 0;
    std::vector<std::size_t> open(n);
    for (std::size_t i = 0; i < n; ++i) open[i] = i;
    auto rec = [&](auto&& self, std::vector<std::size_t> left, Residue acc) -> void {
        if (left.empty()) {
            total = f.add(total, acc);
            return;
        }
        const std::size_t a = left[0];
        for (std::size_t k = 1; k < left.size(); ++k) {
            std::vector<std::size_t> rest;
            for (std::size_t r = 1; r < left.size(); ++r)
                if (r != k) rest.push_back(left[r]);
            Residue term = f.mul(acc, m(a, left[k]));
            if (k % 2 == 0) term = f.neg(term);
            self(self, rest, term);
        }
    };
    rec(rec, open, 1);
    return total;
}

}  // namespace oracle

#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "glicci/errors.hpp"
#include "glicci/hvector.hpp"
#include "glicci/multipoly.hpp"
#include "glicci/prime_field.hpp"

namespace glicci {

/// Reduced Groebner basis: monic generators sorted by ascending leading
/// monomial. A truncated basis is only valid in degrees up to its bound.
class GroebnerBasis {
public:
    GroebnerBasis() = default;
    GroebnerBasis(PrimeField field, std::vector<MultiPoly> generators, std::optional<unsigned> truncation = {})
        : field_(field), generators_(std::move(generators)), truncation_(truncation) {
        std::sort(generators_.begin(), generators_.end(),
                  [](const MultiPoly& a, const MultiPoly& b) { return a.lead_monomial() < b.lead_monomial(); });
        leads_.reserve(generators_.size());
        for (const auto& g : generators_) leads_.push_back(g.lead_monomial());
    }

    const PrimeField& field() const { return field_; }
    const std::vector<MultiPoly>& generators() const { return generators_; }
    const std::vector<Monomial>& lead_monomials() const { return leads_; }
    std::size_t size() const { return generators_.size(); }
    std::optional<unsigned> truncation() const { return truncation_; }
    bool is_unit() const { return generators_.size() == 1 && generators_[0].is_constant(); }
    bool is_zero_ideal() const { return generators_.empty(); }
    unsigned max_degree() const {
        unsigned d = 0;
        for (const auto& g : generators_) d = std::max(d, g.degree());
        return d;
    }

    /// Index of a generator whose leading monomial divides m, or npos.
    std::size_t find_reducer(Monomial m) const {
        for (std::size_t i = 0; i < leads_.size(); ++i)
            if (leads_[i].degree() <= m.degree() && leads_[i].divides(m)) return i;
        return npos;
    }
    bool is_standard(Monomial m) const { return find_reducer(m) == npos; }

    std::string to_string() const {
        std::string s;
        for (const auto& g : generators_) s += g.to_string() + '\n';
        return s;
    }

    friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) { return a.generators_ == b.generators_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    PrimeField field_;
    std::vector<MultiPoly> generators_;
    std::vector<Monomial> leads_;
    std::optional<unsigned> truncation_;
};

namespace detail {

inline std::size_t find_reducer(const std::vector<Monomial>& leads, const std::vector<char>* live, Monomial m) {
    for (std::size_t i = 0; i < leads.size(); ++i) {
        if (live && !(*live)[i]) continue;
        if (leads[i].degree() <= m.degree() && leads[i].divides(m)) return i;
    }
    return static_cast<std::size_t>(-1);
}

/// Reduces f by monic polynomials. With tail = false only the leading term is
/// reduced until it is standard.
inline MultiPoly reduce(const MultiPoly& f, const std::vector<MultiPoly>& basis, const std::vector<Monomial>& leads,
                        const std::vector<char>* live, bool tail) {
    const auto& field = f.field();
    std::vector<Term> cur = f.terms();
    std::vector<Term> done;
    std::size_t pos = 0;
    while (pos < cur.size()) {
        const Term t = cur[pos];
        const std::size_t r = find_reducer(leads, live, t.m);
        if (r != static_cast<std::size_t>(-1)) {
            cur = MultiPoly::merge_scaled(cur, pos + 1, basis[r].terms(), 1, t.m / leads[r], field.neg(t.c), field);
            pos = 0;
            continue;
        }
        if (!tail) {
            done.insert(done.end(), cur.begin() + static_cast<std::ptrdiff_t>(pos), cur.end());
            break;
        }
        done.push_back(t);
        ++pos;
    }
    return MultiPoly::from_sorted_terms(field, std::move(done));
}

inline void require_homogeneous(const MultiPoly& f) {
    if (!f.is_homogeneous()) throw InvalidInput("polynomial is not homogeneous: " + f.to_string());
}

class Buchberger {
public:
    Buchberger(PrimeField field, std::optional<unsigned> max_degree) : field_(field), max_degree_(max_degree) {}

    void add_input(const MultiPoly& f) {
        if (f.is_zero()) return;
        require_homogeneous(f);
        inputs_.push_back(f);
    }

    GroebnerBasis run() {
        // Process inputs degree by degree so that lower degrees reduce higher ones.
        std::stable_sort(inputs_.begin(), inputs_.end(), [](const MultiPoly& a, const MultiPoly& b) {
            if (a.degree() != b.degree()) return a.degree() < b.degree();
            return a.lead_monomial() < b.lead_monomial();
        });
        std::size_t next_input = 0;
        while (next_input < inputs_.size() || !pairs_.empty()) {
            // Take whichever is of lower degree: the next input or the next pair.
            const bool take_input =
                next_input < inputs_.size() &&
                (pairs_.empty() || inputs_[next_input].degree() <= std::get<0>(*pairs_.begin()));
            MultiPoly h(field_);
            if (take_input) {
                h = inputs_[next_input++];
            } else {
                const auto [deg, key, i, j] = *pairs_.begin();
                pairs_.erase(pairs_.begin());
                h = s_polynomial(i, j);
            }
            h = reduce(h, basis_, leads_, &live_, false);
            if (h.is_zero()) continue;
            if (h.is_constant()) return GroebnerBasis(field_, {MultiPoly::constant(field_, 1)}, max_degree_);
            insert(h.monic());
        }
        return finish();
    }

private:
    MultiPoly s_polynomial(std::size_t i, std::size_t j) const {
        const Monomial l = leads_[i].lcm(leads_[j]);
        return basis_[i].times_term(l / leads_[i], 1).add_scaled(basis_[j], l / leads_[j], field_.neg(1));
    }

    void push_pair(std::size_t i, std::size_t j) {
        const Monomial l = leads_[i].lcm(leads_[j]);
        if (max_degree_ && l.degree() > *max_degree_) return;
        pairs_.insert({l.degree(), l.order_key(), std::min(i, j), std::max(i, j)});
    }

    // Gebauer-Moeller update.
    void insert(MultiPoly h) {
        const std::size_t hi = basis_.size();
        const Monomial lh = h.lead_monomial();
        basis_.push_back(std::move(h));
        leads_.push_back(lh);
        live_.push_back(1);

        std::vector<std::size_t> c;
        for (std::size_t g = 0; g < hi; ++g)
            if (live_[g]) c.push_back(g);
        std::vector<std::size_t> d;
        for (std::size_t k = 0; k < c.size(); ++k) {
            const std::size_t g1 = c[k];
            const Monomial l1 = lh.lcm(leads_[g1]);
            bool keep = lh.coprime(leads_[g1]);
            if (!keep) {
                keep = true;
                for (std::size_t k2 = k + 1; k2 < c.size() && keep; ++k2)
                    if (lh.lcm(leads_[c[k2]]).divides(l1)) keep = false;
                for (std::size_t g2 : d)
                    if (keep && lh.lcm(leads_[g2]).divides(l1)) keep = false;
            }
            if (keep) d.push_back(g1);
        }

        // Old pairs made redundant by h.
        for (auto it = pairs_.begin(); it != pairs_.end();) {
            const auto [deg, key, i, j] = *it;
            const Monomial lij = leads_[i].lcm(leads_[j]);
            if (lh.divides(lij) && !(leads_[i].lcm(lh) == lij) && !(lh.lcm(leads_[j]) == lij))
                it = pairs_.erase(it);
            else
                ++it;
        }
        for (std::size_t g : d)
            if (!lh.coprime(leads_[g])) push_pair(g, hi);

        for (std::size_t g = 0; g < hi; ++g)
            if (live_[g] && lh.divides(leads_[g])) live_[g] = 0;
    }

    GroebnerBasis finish() const {
        std::vector<MultiPoly> kept;
        std::vector<Monomial> kept_leads;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (live_[i]) {
                kept.push_back(basis_[i]);
                kept_leads.push_back(leads_[i]);
            }
        std::vector<MultiPoly> reduced;
        reduced.reserve(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) {
            std::vector<char> others(kept.size(), 1);
            others[i] = 0;
            const MultiPoly tail_part = MultiPoly::from_sorted_terms(
                field_, std::vector<Term>(kept[i].terms().begin() + 1, kept[i].terms().end()));
            MultiPoly r = reduce(tail_part, kept, kept_leads, &others, true);
            reduced.push_back(MultiPoly::term(field_, kept_leads[i], 1) + r);
        }
        return GroebnerBasis(field_, std::move(reduced), max_degree_);
    }

    PrimeField field_;
    std::optional<unsigned> max_degree_;
    std::vector<MultiPoly> inputs_;
    std::vector<MultiPoly> basis_;
    std::vector<Monomial> leads_;
    std::vector<char> live_;
    std::set<std::tuple<unsigned, std::uint64_t, std::size_t, std::size_t>> pairs_;
};

}  // namespace detail

/// Reduced Groebner basis of homogeneous generators. With max_degree set,
/// S-pairs above that degree are skipped and the result is exact only in
/// degrees up to the bound.
inline GroebnerBasis groebner(PrimeField field, const std::vector<MultiPoly>& gens,
                              std::optional<unsigned> max_degree = {}) {
    detail::Buchberger b(field, max_degree);
    for (const auto& g : gens) b.add_input(g);
    return b.run();
}

inline GroebnerBasis groebner(const std::vector<MultiPoly>& gens, std::optional<unsigned> max_degree = {}) {
    if (gens.empty()) throw InvalidInput("groebner needs at least one generator to know the field");
    return groebner(gens.front().field(), gens, max_degree);
}

inline MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& g) {
    return detail::reduce(f, g.generators(), g.lead_monomials(), nullptr, true);
}

inline bool contains(const GroebnerBasis& g, const MultiPoly& f) { return normal_form(f, g).is_zero(); }

/// True when every generator of `small` lies in `big`.
inline bool is_subideal(const GroebnerBasis& small, const GroebnerBasis& big) {
    for (const auto& f : small.generators())
        if (!contains(big, f)) return false;
    return true;
}

inline std::vector<Monomial> standard_monomials(const GroebnerBasis& g, unsigned t) {
    std::vector<Monomial> out;
    for (Monomial m : monomials_of_degree(t))
        if (g.is_standard(m)) out.push_back(m);
    return out;
}

inline unsigned hilbert_function(const GroebnerBasis& g, unsigned t) {
    if (g.is_unit()) return 0;
    unsigned count = 0;
    for (Monomial m : monomials_of_degree(t))
        if (g.is_standard(m)) ++count;
    return count;
}

/// First difference of the Hilbert function of a one-dimensional cone.
inline HVector h_vector(const GroebnerBasis& g) {
    if (g.is_unit()) return HVector();
    const unsigned top = g.max_degree();
    std::vector<unsigned> hf;
    constexpr unsigned kSlack = 64;
    for (unsigned t = 0;; ++t) {
        hf.push_back(hilbert_function(g, t));
        if (t > top && hf[t] == hf[t - 1]) break;
        if (t > top + kSlack) throw DimensionMismatch("Hilbert function does not stabilize");
    }
    if (hf.back() == 0) throw DimensionMismatch("ideal defines the empty scheme but is not the unit ideal");
    std::vector<unsigned> h;
    for (std::size_t t = 0; t < hf.size(); ++t) {
        const long diff = static_cast<long>(hf[t]) - (t ? static_cast<long>(hf[t - 1]) : 0L);
        if (diff < 0) throw DimensionMismatch("negative h-vector entry; ideal is not Cohen-Macaulay");
        h.push_back(static_cast<unsigned>(diff));
    }
    while (!h.empty() && h.back() == 0) h.pop_back();
    for (unsigned v : h)
        if (v == 0) throw DimensionMismatch("zero inside h-vector; ideal is not Cohen-Macaulay");
    return HVector(std::move(h));
}

/// Stabilized value of the Hilbert function (the degree of the scheme).
inline unsigned scheme_degree(const GroebnerBasis& g) { return g.is_unit() ? 0 : h_vector(g).degree(); }

inline GroebnerBasis unit_ideal(PrimeField field) { return GroebnerBasis(field, {MultiPoly::constant(field, 1)}); }

/// Exact quotient h / f; throws if f does not divide h.
inline MultiPoly exact_divide(const MultiPoly& h, const MultiPoly& f) {
    const auto& field = h.field();
    if (f.is_zero()) throw DivisionByZero();
    std::vector<Term> q;
    MultiPoly r = h;
    const Residue inv = field.inv(f.lead_coefficient());
    while (!r.is_zero()) {
        if (!f.lead_monomial().divides(r.lead_monomial())) throw InvalidInput("polynomial division is not exact");
        const Monomial m = r.lead_monomial() / f.lead_monomial();
        const Residue c = field.mul(r.lead_coefficient(), inv);
        q.push_back({m, c});
        r = r.add_scaled(f, m, field.neg(c));
    }
    return MultiPoly::from_sorted_terms(field, std::move(q));
}

/// I ∩ J by eliminating t from t*I + (1-t)*J.
inline GroebnerBasis intersect(const GroebnerBasis& i, const GroebnerBasis& j) {
    const auto& field = i.field();
    if (i.is_zero_ideal() || j.is_zero_ideal()) return GroebnerBasis(field, {});
    if (i.is_unit()) return j;
    if (j.is_unit()) return i;
    if (is_subideal(i, j)) return i;
    if (is_subideal(j, i)) return j;
    const Monomial t = Monomial::aux_variable();
    std::vector<MultiPoly> gens;
    for (const auto& f : i.generators()) gens.push_back(f.times_term(t, 1));
    for (const auto& g : j.generators()) gens.push_back(g.add_scaled(g, t, field.neg(1)));
    const GroebnerBasis full = groebner(field, gens);
    std::vector<MultiPoly> kept;
    for (const auto& f : full.generators())
        if (f.lead_monomial().aux() == 0) kept.push_back(f);
    return GroebnerBasis(field, std::move(kept));
}

/// I : (f)
inline GroebnerBasis quotient_by(const GroebnerBasis& i, const MultiPoly& f) {
    const auto& field = i.field();
    if (f.is_zero()) throw InvalidInput("quotient by the zero polynomial");
    detail::require_homogeneous(f);
    if (contains(i, f)) return unit_ideal(field);
    if (f.is_constant()) return i;
    const GroebnerBasis principal(field, {f.monic()});
    const GroebnerBasis k = intersect(i, principal);
    std::vector<MultiPoly> q;
    for (const auto& g : k.generators()) q.push_back(exact_divide(g, f));
    return groebner(field, q);
}

/// I : J, intersecting I : (g) over the generators g of J.
inline GroebnerBasis ideal_quotient(const GroebnerBasis& i, const GroebnerBasis& j) {
    const auto& field = i.field();
    if (j.is_zero_ideal()) throw InvalidInput("quotient by the zero ideal");
    std::optional<GroebnerBasis> acc;
    for (const auto& g : j.generators()) {
        const GroebnerBasis q = quotient_by(i, g);
        if (q.is_unit()) continue;
        acc = acc ? intersect(*acc, q) : q;
    }
    return acc ? *acc : unit_ideal(field);
}

namespace detail {

inline LinearSubstitution to_substitution(const FpMatrix& m) {
    LinearSubstitution s{};
    for (int i = 0; i < kVariables; ++i)
        for (int k = 0; k < kVariables; ++k) s[i][k] = m(i, k);
    return s;
}

/// Change of coordinates y = C x with y3 = the given linear form. Returns
/// (substitution x -> B y, substitution y -> C x).
inline std::pair<LinearSubstitution, LinearSubstitution> coordinates_with_last(const MultiPoly& linear) {
    const auto& field = linear.field();
    const auto a = linear.linear_coefficients();
    int pivot = -1;
    for (int i = kVariables - 1; i >= 0 && pivot < 0; --i)
        if (a[i]) pivot = i;
    if (pivot < 0) throw InvalidInput("zero linear form");
    FpMatrix c(field, kVariables, kVariables);
    int row = 0;
    for (int i = 0; i < kVariables; ++i)
        if (i != pivot) c(row++, i) = 1;
    for (int i = 0; i < kVariables; ++i) c(kVariables - 1, i) = a[i];
    FpMatrix b(field, kVariables, kVariables);
    if (!c.try_inverse(b)) throw DegeneracyError("coordinate change is singular");
    return {to_substitution(b), to_substitution(c)};
}

/// Saturation by the last variable (Bayer-Stillman): strip x3 powers from a
/// grevlex basis.
inline GroebnerBasis saturate_last_variable(const GroebnerBasis& g) {
    std::vector<MultiPoly> out;
    for (const auto& f : g.generators()) {
        unsigned k = 255;
        for (const auto& t : f.terms()) k = std::min(k, t.m.exponent(3));
        if (k == 0) {
            out.push_back(f);
            continue;
        }
        std::vector<Term> terms;
        const Monomial x3k = Monomial::from({0, 0, 0, k});
        for (const auto& t : f.terms()) terms.push_back({t.m / x3k, t.c});
        out.push_back(MultiPoly::from_sorted_terms(f.field(), std::move(terms)));
    }
    return groebner(g.field(), out);
}

}  // namespace detail

/// Rewrites every generator under a linear substitution and recomputes the basis.
inline GroebnerBasis substitute(const GroebnerBasis& g, const LinearSubstitution& s) {
    std::vector<MultiPoly> out;
    for (const auto& f : g.generators()) out.push_back(substitute_linear(f, s));
    return groebner(g.field(), out);
}

/// I : f^infinity. Linear forms use a coordinate change plus Bayer-Stillman;
/// other forms iterate quotients until they stabilize.
inline GroebnerBasis saturate(const GroebnerBasis& i, const MultiPoly& f) {
    if (f.is_zero()) throw InvalidInput("saturation by the zero polynomial");
    detail::require_homogeneous(f);
    if (f.is_constant() || i.is_unit() || i.is_zero_ideal()) return i;
    if (f.degree() == 1) {
        const auto [to_y, to_x] = detail::coordinates_with_last(f);
        const GroebnerBasis in_y = substitute(i, to_y);
        return substitute(detail::saturate_last_variable(in_y), to_x);
    }
    GroebnerBasis cur = i;
    for (;;) {
        GroebnerBasis next = quotient_by(cur, f);
        if (next == cur) return cur;
        cur = std::move(next);
    }
}

/// Standard-monomial basis of (S/I)_t with coordinate access.
class StandardBasis {
public:
    StandardBasis(const GroebnerBasis& g, unsigned t) : field_(g.field()), degree_(t) {
        if (!g.is_unit()) monomials_ = standard_monomials(g, t);
        for (std::size_t k = 0; k < monomials_.size(); ++k) index_.emplace(monomials_[k].bits(), k);
    }
    unsigned degree() const { return degree_; }
    std::size_t size() const { return monomials_.size(); }
    const std::vector<Monomial>& monomials() const { return monomials_; }

    /// Coordinates of a polynomial already in normal form and of degree t.
    std::vector<Residue> coordinates(const MultiPoly& nf) const {
        std::vector<Residue> v(monomials_.size(), 0);
        for (const auto& t : nf.terms()) {
            const auto it = index_.find(t.m.bits());
            if (it == index_.end()) throw InvalidInput("polynomial is not a normal form of degree " + std::to_string(degree_));
            v[it->second] = t.c;
        }
        return v;
    }
    MultiPoly polynomial(const std::vector<Residue>& v) const {
        std::vector<Term> terms;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k]) terms.push_back({monomials_[k], v[k]});
        return MultiPoly::from_sorted_terms(field_, std::move(terms));
    }

private:
    PrimeField field_;
    unsigned degree_;
    std::vector<Monomial> monomials_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Matrix (columns = standard monomials of degree t) of the map
/// (S/I)_t -> (S/I)_{t + deg f}, v -> NF(f v).
inline FpMatrix multiplication_matrix(const GroebnerBasis& g, const MultiPoly& f, const StandardBasis& src,
                                      const StandardBasis& dst) {
    FpMatrix m(g.field(), dst.size(), src.size());
    for (std::size_t k = 0; k < src.size(); ++k) {
        const auto col = dst.coordinates(normal_form(f.times_term(src.monomials()[k], 1), g));
        for (std::size_t r = 0; r < col.size(); ++r) m(r, k) = col[r];
    }
    return m;
}

/// Ideal I + J where the pieces (J/I)_t are supplied for t <= top as vectors
/// in standard coordinates of I. Only generators not already implied by
/// lower degrees are added.
template <class PieceFn>
GroebnerBasis ideal_from_graded_pieces(const GroebnerBasis& i, unsigned top, PieceFn piece) {
    const auto& field = i.field();
    std::vector<MultiPoly> gens = i.generators();
    GroebnerBasis current = i;
    for (unsigned t = 0; t <= top; ++t) {
        const StandardBasis base(i, t);
        const auto vecs = piece(t, base);
        if (vecs.empty()) continue;
        const GroebnerBasis trunc = groebner(field, gens, t);
        if (trunc.is_unit()) break;
        const StandardBasis reduced_base(trunc, t);
        FpMatrix rows(field, vecs.size(), reduced_base.size());
        for (std::size_t r = 0; r < vecs.size(); ++r) {
            const auto c = reduced_base.coordinates(normal_form(base.polynomial(vecs[r]), trunc));
            for (std::size_t k = 0; k < c.size(); ++k) rows(r, k) = c[k];
        }
        const std::size_t rank = rows.rref().size();
        for (std::size_t r = 0; r < rank; ++r) {
            std::vector<Residue> v(rows.cols());
            for (std::size_t k = 0; k < rows.cols(); ++k) v[k] = rows(r, k);
            gens.push_back(reduced_base.polynomial(v));
        }
    }
    return groebner(field, gens);
}

/// I : J for a saturated one-dimensional Cohen-Macaulay ideal I, by linear
/// algebra on graded pieces. Generators of the result have degree at most
/// the length of the h-vector of I.
inline GroebnerBasis quotient_of_saturated(const GroebnerBasis& i, const GroebnerBasis& j) {
    if (j.is_zero_ideal()) throw InvalidInput("quotient by the zero ideal");
    if (i.is_unit()) return i;
    const unsigned top = static_cast<unsigned>(h_vector(i).length());
    return ideal_from_graded_pieces(i, top, [&](unsigned t, const StandardBasis& src) {
        std::vector<std::vector<Residue>> out;
        if (src.size() == 0) return out;
        std::vector<FpMatrix> blocks;
        std::size_t rows = 0;
        for (const auto& g : j.generators()) {
            const StandardBasis dst(i, t + g.degree());
            blocks.push_back(multiplication_matrix(i, g, src, dst));
            rows += dst.size();
        }
        FpMatrix stacked(i.field(), rows, src.size());
        std::size_t r0 = 0;
        for (const auto& b : blocks) {
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t k = 0; k < b.cols(); ++k) stacked(r0 + r, k) = b(r, k);
            r0 += b.rows();
        }
        return stacked.kernel_basis();
    });
}

}  // namespace glicci

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "glicci/errors.hpp"
#include "glicci/prime_field.hpp"

namespace glicci {

constexpr int kVariables = 4;

/// Monomial in x0..x3 plus one auxiliary elimination variable. Exponents are
/// packed one per byte (e0, e1, e2, e3, aux, x-degree) so that products are
/// integer additions. Every exponent must stay below 128.
///
/// Order: larger aux exponent first (elimination block), then graded reverse
/// lexicographic on x0 > x1 > x2 > x3. With aux = 0 this is plain grevlex.
class Monomial {
public:
    constexpr Monomial() = default;

    static Monomial from(const std::array<unsigned, kVariables>& e, unsigned aux = 0) {
        std::uint64_t bits = 0;
        unsigned deg = 0;
        for (int i = 0; i < kVariables; ++i) {
            if (e[i] >= 128) throw InvalidInput("monomial exponent too large");
            bits |= static_cast<std::uint64_t>(e[i]) << (8 * i);
            deg += e[i];
        }
        if (aux >= 128 || deg >= 128) throw InvalidInput("monomial degree too large");
        bits |= static_cast<std::uint64_t>(aux) << 32;
        bits |= static_cast<std::uint64_t>(deg) << 40;
        return Monomial(bits);
    }
    static Monomial variable(int i) {
        std::array<unsigned, kVariables> e{};
        e[i] = 1;
        return from(e);
    }
    static Monomial aux_variable() { return from({0, 0, 0, 0}, 1); }

    unsigned exponent(int i) const { return static_cast<unsigned>((bits_ >> (8 * i)) & 0xff); }
    unsigned aux() const { return static_cast<unsigned>((bits_ >> 32) & 0xff); }
    /// Degree in x0..x3 (the auxiliary variable has weight zero).
    unsigned degree() const { return static_cast<unsigned>((bits_ >> 40) & 0xff); }
    bool is_one() const { return bits_ == 0; }
    std::uint64_t bits() const { return bits_; }

    std::uint64_t order_key() const {
        return (static_cast<std::uint64_t>(aux()) << 40) | (static_cast<std::uint64_t>(degree()) << 32) |
               (static_cast<std::uint64_t>(255 - exponent(3)) << 24) |
               (static_cast<std::uint64_t>(255 - exponent(2)) << 16) |
               (static_cast<std::uint64_t>(255 - exponent(1)) << 8) | (255 - exponent(0));
    }

    friend Monomial operator*(Monomial a, Monomial b) { return Monomial(a.bits_ + b.bits_); }
    /// Exact quotient; requires b | a.
    friend Monomial operator/(Monomial a, Monomial b) { return Monomial(a.bits_ - b.bits_); }

    bool divides(Monomial o) const {
        constexpr std::uint64_t kHigh = 0x8080808080ULL;
        return ((((o.bits_ & kExpMask) | kHigh) - (bits_ & kExpMask)) & kHigh) == kHigh;
    }

    Monomial lcm(Monomial o) const {
        std::uint64_t bits = 0;
        unsigned deg = 0;
        for (int i = 0; i < 5; ++i) {
            const std::uint64_t a = (bits_ >> (8 * i)) & 0xff;
            const std::uint64_t b = (o.bits_ >> (8 * i)) & 0xff;
            const std::uint64_t m = std::max(a, b);
            bits |= m << (8 * i);
            if (i < kVariables) deg += static_cast<unsigned>(m);
        }
        return Monomial(bits | (static_cast<std::uint64_t>(deg) << 40));
    }

    bool coprime(Monomial o) const {
        for (int i = 0; i < 5; ++i)
            if (((bits_ >> (8 * i)) & 0xff) && ((o.bits_ >> (8 * i)) & 0xff)) return false;
        return true;
    }

    friend bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }
    friend bool operator<(Monomial a, Monomial b) { return a.order_key() < b.order_key(); }
    friend bool operator>(Monomial a, Monomial b) { return b < a; }

    /// "x0^2*x1", "1" for the unit monomial; the auxiliary variable prints as "t".
    std::string to_string() const {
        std::string s;
        for (int i = 0; i < kVariables; ++i) {
            const unsigned e = exponent(i);
            if (!e) continue;
            if (!s.empty()) s += '*';
            s += 'x' + std::to_string(i);
            if (e > 1) s += '^' + std::to_string(e);
        }
        if (aux()) {
            if (!s.empty()) s += '*';
            s += 't';
            if (aux() > 1) s += '^' + std::to_string(aux());
        }
        return s.empty() ? "1" : s;
    }

private:
    static constexpr std::uint64_t kExpMask = 0xffffffffffULL;
    explicit constexpr Monomial(std::uint64_t bits) : bits_(bits) {}
    std::uint64_t bits_ = 0;
};

/// All monomials of x-degree d in x0..x3, in descending grevlex order.
inline std::vector<Monomial> monomials_of_degree(unsigned d) {
    std::vector<Monomial> out;
    for (unsigned a = 0; a <= d; ++a)
        for (unsigned b = 0; a + b <= d; ++b)
            for (unsigned c = 0; a + b + c <= d; ++c) out.push_back(Monomial::from({a, b, c, d - a - b - c}));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

struct Term {
    Monomial m;
    Residue c;
};

/// Sparse polynomial over GF(p) in x0..x3 (plus the internal elimination
/// variable). Terms are kept in strictly descending monomial order with
/// nonzero coefficients.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(PrimeField field) : field_(field) {}

    /// Builds a polynomial from unordered terms; like terms are combined.
    static MultiPoly from_terms(PrimeField field, std::vector<Term> terms) {
        MultiPoly p(field);
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
        for (auto& t : terms) {
            const Residue c = field.reduce(t.c);
            if (!p.terms_.empty() && p.terms_.back().m == t.m) {
                p.terms_.back().c = field.add(p.terms_.back().c, c);
                if (p.terms_.back().c == 0) p.terms_.pop_back();
            } else if (c != 0) {
                p.terms_.push_back({t.m, c});
            }
        }
        return p;
    }
    static MultiPoly constant(PrimeField field, Residue c) {
        MultiPoly p(field);
        c = field.reduce(c);
        if (c) p.terms_.push_back({Monomial(), c});
        return p;
    }
    static MultiPoly variable(PrimeField field, int i) {
        MultiPoly p(field);
        p.terms_.push_back({Monomial::variable(i), 1});
        return p;
    }
    static MultiPoly term(PrimeField field, Monomial m, Residue c) {
        MultiPoly p(field);
        c = field.reduce(c);
        if (c) p.terms_.push_back({m, c});
        return p;
    }
    /// Linear form sum coeffs[i] * x_i.
    static MultiPoly linear_form(PrimeField field, const std::array<Residue, kVariables>& coeffs) {
        std::vector<Term> t;
        for (int i = 0; i < kVariables; ++i) t.push_back({Monomial::variable(i), coeffs[i]});
        return from_terms(field, std::move(t));
    }

    const PrimeField& field() const { return field_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    const Term& lead() const { return terms_.front(); }
    Monomial lead_monomial() const { return terms_.front().m; }
    Residue lead_coefficient() const { return terms_.front().c; }
    /// x-degree of the leading term (the degree, for homogeneous polynomials).
    unsigned degree() const { return terms_.empty() ? 0 : terms_.front().m.degree(); }

    bool is_homogeneous() const {
        for (const auto& t : terms_)
            if (t.m.degree() != terms_.front().m.degree()) return false;
        return true;
    }
    bool has_aux() const {
        for (const auto& t : terms_)
            if (t.m.aux()) return true;
        return false;
    }

    /// Coefficient of x_i for a linear form.
    std::array<Residue, kVariables> linear_coefficients() const {
        std::array<Residue, kVariables> a{};
        for (const auto& t : terms_) {
            if (t.m.degree() != 1 || t.m.aux()) throw InvalidInput("not a linear form");
            for (int i = 0; i < kVariables; ++i)
                if (t.m.exponent(i)) a[i] = t.c;
        }
        return a;
    }

    MultiPoly monic() const {
        if (is_zero()) return *this;
        return scaled(field_.inv(lead_coefficient()));
    }

    MultiPoly scaled(Residue s) const {
        MultiPoly r(field_);
        if (s == 0) return r;
        r.terms_ = terms_;
        for (auto& t : r.terms_) t.c = field_.mul(t.c, s);
        return r;
    }

    /// s * m * this
    MultiPoly times_term(Monomial m, Residue s) const {
        MultiPoly r(field_);
        if (s == 0) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.m * m, field_.mul(t.c, s)});
        return r;
    }

    /// this + s * m * other, merging in one pass.
    MultiPoly add_scaled(const MultiPoly& other, Monomial m, Residue s) const {
        MultiPoly r(field_);
        r.terms_ = merge_scaled(terms_, 0, other.terms_, 0, m, s, field_);
        return r;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return a.add_scaled(b, Monomial(), 1); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        return a.add_scaled(b, Monomial(), a.field_.neg(1));
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        if (a.is_zero() || b.is_zero()) return MultiPoly(a.field_);
        if (a.size() == 1) return b.times_term(a.lead().m, a.lead().c);
        if (b.size() == 1) return a.times_term(b.lead().m, b.lead().c);
        std::unordered_map<std::uint64_t, std::uint64_t> acc;
        acc.reserve(a.size() * b.size());
        const std::uint64_t p = a.field_.modulus();
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) {
                auto& v = acc[(s.m * t.m).bits()];
                v = (v + static_cast<std::uint64_t>(s.c) * t.c) % p;
            }
        std::vector<Term> terms;
        terms.reserve(acc.size());
        for (const auto& [bits, c] : acc)
            if (c) terms.push_back({from_bits(bits), static_cast<Residue>(c)});
        MultiPoly r(a.field_);
        std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.m > y.m; });
        r.terms_ = std::move(terms);
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
        return true;
    }

    /// Canonical text: descending grevlex, "c*x0^2*x1 + c*x3", coefficients in [0, p).
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += " + ";
            s += std::to_string(t.c);
            if (!t.m.is_one()) s += '*' + t.m.to_string();
        }
        return s;
    }

    /// Inverse of to_string. Also accepts omitted coefficients, "-" between
    /// terms and a leading sign, e.g. "x0^2 - 3*x1*x2".
    static MultiPoly parse(PrimeField field, std::string_view text) {
        std::vector<Term> terms;
        std::size_t pos = 0;
        auto skip_spaces = [&] {
            while (pos < text.size() && text[pos] == ' ') ++pos;
        };
        skip_spaces();
        if (text.substr(pos) == "0") return MultiPoly(field);
        bool negative = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
        while (true) {
            skip_spaces();
            std::size_t stop = pos;
            while (stop < text.size() && text[stop] != '+' && text[stop] != '-') ++stop;
            std::string_view term = text.substr(pos, stop - pos);
            while (!term.empty() && term.back() == ' ') term.remove_suffix(1);
            if (term.empty()) throw InvalidInput("malformed polynomial text");
            std::array<unsigned, kVariables> e{};
            std::int64_t coef = 1;
            std::size_t at = 0;
            while (at <= term.size()) {
                const auto star = term.find('*', at);
                const std::string_view tok = term.substr(at, star == std::string_view::npos ? term.npos : star - at);
                if (!tok.empty() && tok[0] >= '0' && tok[0] <= '9') {
                    coef = field.reduce(coef * field.reduce(parse_int(tok)));
                } else {
                    if (tok.size() < 2 || tok[0] != 'x') throw InvalidInput("malformed polynomial term");
                    const auto caret = tok.find('^');
                    const int var = static_cast<int>(parse_int(tok.substr(1, caret == tok.npos ? tok.npos : caret - 1)));
                    if (var < 0 || var >= kVariables) throw InvalidInput("unknown variable in polynomial text");
                    e[var] += caret == tok.npos ? 1u : static_cast<unsigned>(parse_int(tok.substr(caret + 1)));
                }
                if (star == std::string_view::npos) break;
                at = star + 1;
            }
            terms.push_back({Monomial::from(e), negative ? field.neg(field.reduce(coef)) : field.reduce(coef)});
            if (stop == text.size()) break;
            negative = text[stop] == '-';
            pos = stop + 1;
        }
        return from_terms(field, std::move(terms));
    }

    // Used by the reduction loops in groebner.hpp.
    static std::vector<Term> merge_scaled(const std::vector<Term>& a, std::size_t a_from, const std::vector<Term>& b,
                                          std::size_t b_from, Monomial m, Residue s, const PrimeField& field) {
        std::vector<Term> out;
        out.reserve(a.size() - a_from + b.size() - b_from);
        std::size_t i = a_from, j = b_from;
        while (i < a.size() || j < b.size()) {
            if (j == b.size()) {
                out.push_back(a[i++]);
                continue;
            }
            const Monomial bm = b[j].m * m;
            if (i == a.size() || a[i].m < bm) {
                out.push_back({bm, field.mul(b[j].c, s)});
                ++j;
            } else if (bm < a[i].m) {
                out.push_back(a[i++]);
            } else {
                const Residue c = field.mul_add(a[i].c, s, b[j].c);
                if (c) out.push_back({bm, c});
                ++i;
                ++j;
            }
        }
        return out;
    }

    static MultiPoly from_sorted_terms(PrimeField field, std::vector<Term> terms) {
        MultiPoly p(field);
        p.terms_ = std::move(terms);
        return p;
    }

private:
    static Monomial from_bits(std::uint64_t bits) {
        return Monomial::from({static_cast<unsigned>(bits & 0xff), static_cast<unsigned>((bits >> 8) & 0xff),
                               static_cast<unsigned>((bits >> 16) & 0xff), static_cast<unsigned>((bits >> 24) & 0xff)},
                              static_cast<unsigned>((bits >> 32) & 0xff));
    }
    static std::int64_t parse_int(std::string_view v) {
        if (v.empty()) throw InvalidInput("empty integer in polynomial text");
        std::int64_t r = 0;
        for (char ch : v) {
            if (ch < '0' || ch > '9') throw InvalidInput("malformed integer in polynomial text");
            r = r * 10 + (ch - '0');
        }
        return r;
    }

    PrimeField field_;
    std::vector<Term> terms_;
};

/// 4x4 matrix acting on variables: x_i -> sum_k a[i][k] x_k.
using LinearSubstitution = std::array<std::array<Residue, kVariables>, kVariables>;

/// Applies a linear change of variables to an aux-free polynomial.
inline MultiPoly substitute_linear(const MultiPoly& f, const LinearSubstitution& a) {
    const auto& field = f.field();
    if (f.is_zero()) return f;
    unsigned maxe = 0;
    for (const auto& t : f.terms())
        for (int i = 0; i < kVariables; ++i) maxe = std::max(maxe, t.m.exponent(i));
    // powers[i][e] = (image of x_i)^e
    std::array<std::vector<MultiPoly>, kVariables> powers;
    for (int i = 0; i < kVariables; ++i) {
        std::array<Residue, kVariables> row = a[i];
        const MultiPoly image = MultiPoly::linear_form(field, row);
        powers[i].push_back(MultiPoly::constant(field, 1));
        for (unsigned e = 1; e <= maxe; ++e) powers[i].push_back(powers[i].back() * image);
    }
    std::unordered_map<std::uint64_t, std::uint64_t> acc;
    const std::uint64_t p = field.modulus();
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
        if (t.m.aux()) throw InvalidInput("linear substitution of the elimination variable");
        MultiPoly prod = MultiPoly::constant(field, t.c);
        for (int i = 0; i < kVariables; ++i)
            if (t.m.exponent(i)) prod = prod * powers[i][t.m.exponent(i)];
        for (const auto& s : prod.terms()) terms.push_back(s);
    }
    (void)acc;
    (void)p;
    return MultiPoly::from_terms(field, std::move(terms));
}

}  // namespace glicci

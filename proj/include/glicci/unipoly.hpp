#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glicci/errors.hpp"
#include "glicci/prime_field.hpp"
#include "glicci/random.hpp"

namespace glicci {

/// Dense univariate polynomial over GF(p), ascending coefficients, no
/// trailing zeros. The zero polynomial has an empty coefficient vector.
class UniPoly {
public:
    explicit UniPoly(PrimeField field) : field_(field) {}
    UniPoly(PrimeField field, std::vector<Residue> coeffs) : field_(field), c_(std::move(coeffs)) {
        for (auto& v : c_) v = field_.reduce(v);
        trim();
    }

    static UniPoly constant(PrimeField f, Residue v) { return UniPoly(f, {v}); }
    static UniPoly x(PrimeField f) { return UniPoly(f, {0, 1}); }
    static UniPoly monomial(PrimeField f, std::size_t deg, Residue coef = 1) {
        std::vector<Residue> c(deg + 1, 0);
        c[deg] = coef;
        return UniPoly(f, std::move(c));
    }

    const PrimeField& field() const { return field_; }
    const std::vector<Residue>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    Residue leading() const { return c_.empty() ? 0 : c_.back(); }
    Residue operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

    UniPoly monic() const {
        if (is_zero()) return *this;
        const Residue inv = field_.inv(leading());
        UniPoly r = *this;
        for (auto& v : r.c_) v = field_.mul(v, inv);
        return r;
    }

    UniPoly derivative() const {
        std::vector<Residue> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(field_.mul(c_[i], field_.reduce(static_cast<std::int64_t>(i))));
        return UniPoly(field_, std::move(d));
    }

    Residue evaluate(Residue x) const {
        Residue acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_.mul_add(*it, acc, x);
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Residue> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.field_.add(a[i], b[i]);
        return UniPoly(a.field_, std::move(c));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Residue> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.field_.sub(a[i], b[i]);
        return UniPoly(a.field_, std::move(c));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly(a.field_);
        const auto& f = a.field_;
        std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
        const std::uint64_t p = f.modulus();
        const std::uint64_t pp = p * p;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                acc[i + j] += static_cast<std::uint64_t>(a.c_[i]) * b.c_[j];
                if (acc[i + j] >= pp * 8) acc[i + j] %= p;
            }
        }
        std::vector<Residue> c(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) c[i] = static_cast<Residue>(acc[i] % p);
        return UniPoly(f, std::move(c));
    }

    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw DivisionByZero();
        const auto& f = a.field_;
        if (a.degree() < b.degree()) return {UniPoly(f), a};
        std::vector<Residue> r = a.c_;
        std::vector<Residue> q(a.c_.size() - b.c_.size() + 1, 0);
        const Residue inv = f.inv(b.leading());
        const std::size_t db = b.c_.size() - 1;
        for (std::size_t k = q.size(); k-- > 0;) {
            const Residue coef = f.mul(r[k + db], inv);
            q[k] = coef;
            if (coef == 0) continue;
            const Residue nc = f.neg(coef);
            for (std::size_t j = 0; j <= db; ++j) r[k + j] = f.mul_add(r[k + j], nc, b.c_[j]);
        }
        r.resize(db);
        return {UniPoly(f, std::move(q)), UniPoly(f, std::move(r))};
    }

    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }
    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

    /// Canonical order: by degree, then lexicographically on ascending coefficients.
    friend bool canonical_less(const UniPoly& a, const UniPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.c_ < b.c_;
    }

    /// Descending powers of t, e.g. "1*t^2 + 3*t + 5"; the zero polynomial is "0".
    std::string to_string(char var = 't') const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += std::to_string(c_[i]);
            if (i >= 1) {
                s += '*';
                s += var;
                if (i > 1) s += '^' + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    PrimeField field_;
    std::vector<Residue> c_;
};

inline UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m) { return (a * b) % m; }

inline UniPoly powmod(UniPoly base, std::uint64_t e, const UniPoly& m) {
    UniPoly result = UniPoly::constant(m.field(), 1) % m;
    base = base % m;
    while (e) {
        if (e & 1) result = mulmod(result, base, m);
        e >>= 1;
        if (e) base = mulmod(base, base, m);
    }
    return result;
}

inline bool is_squarefree(const UniPoly& f) {
    if (f.is_zero()) throw InvalidInput("square-free test of the zero polynomial");
    if (f.degree() <= 0) return true;
    return gcd(f, f.derivative()).degree() == 0;
}

struct Factor {
    UniPoly poly;
    unsigned multiplicity;
};

namespace detail {

/// Frobenius map g -> g^p on GF(p)[x]/(m) as a matrix acting on coefficient vectors.
class Frobenius {
public:
    explicit Frobenius(const UniPoly& m) : modulus_(m), n_(static_cast<std::size_t>(m.degree())) {
        const auto& f = m.field();
        const UniPoly xp = powmod(UniPoly::x(f), f.modulus(), m);
        cols_.reserve(n_);
        UniPoly cur = UniPoly::constant(f, 1);
        for (std::size_t i = 0; i < n_; ++i) {
            cols_.push_back(cur);
            cur = mulmod(cur, xp, m);
        }
    }

    UniPoly apply(const UniPoly& g) const {
        const auto& f = modulus_.field();
        std::vector<std::uint64_t> acc(n_, 0);
        const std::uint64_t p = f.modulus();
        for (std::size_t i = 0; i < n_; ++i) {
            const Residue gi = g[i];
            if (gi == 0) continue;
            const auto& col = cols_[i].coefficients();
            for (std::size_t j = 0; j < col.size(); ++j) acc[j] = (acc[j] + static_cast<std::uint64_t>(gi) * col[j]) % p;
        }
        std::vector<Residue> c(n_);
        for (std::size_t j = 0; j < n_; ++j) c[j] = static_cast<Residue>(acc[j]);
        return UniPoly(f, std::move(c));
    }

private:
    UniPoly modulus_;
    std::size_t n_;
    std::vector<UniPoly> cols_;
};

inline UniPoly pth_root(const UniPoly& f) {
    const std::size_t p = f.field().modulus();
    std::vector<Residue> c;
    for (std::size_t i = 0; i < f.coefficients().size(); i += p) c.push_back(f.coefficients()[i]);
    return UniPoly(f.field(), std::move(c));
}

}  // namespace detail

/// Square-free decomposition of a monic polynomial: pairs (g_i, i) with
/// f = prod g_i^i and each g_i square-free (possibly several with the same i
/// after p-th root extraction).
inline std::vector<Factor> squarefree_decomposition(const UniPoly& f) {
    std::vector<Factor> out;
    if (f.degree() <= 0) return out;
    const auto& field = f.field();
    UniPoly c = gcd(f, f.derivative());
    UniPoly w = f / c;
    unsigned i = 1;
    while (w.degree() > 0) {
        UniPoly y = gcd(w, c);
        UniPoly fac = w / y;
        if (fac.degree() > 0) out.push_back({fac.monic(), i});
        w = std::move(y);
        c = c / w;
        ++i;
    }
    if (c.degree() > 0) {
        for (auto& [g, m] : squarefree_decomposition(detail::pth_root(c).monic()))
            out.push_back({g, m * field.modulus()});
    }
    return out;
}

/// Distinct-degree factorization of a monic square-free polynomial:
/// pairs (product of all irreducible factors of degree d, d).
inline std::vector<std::pair<UniPoly, unsigned>> distinct_degree_factorization(const UniPoly& f) {
    std::vector<std::pair<UniPoly, unsigned>> out;
    UniPoly rest = f.monic();
    if (rest.degree() <= 0) return out;
    const auto& field = f.field();
    const detail::Frobenius frob(rest);
    UniPoly h = UniPoly::x(field) % rest;
    const UniPoly x = UniPoly::x(field);
    for (unsigned d = 1; 2 * static_cast<long>(d) <= rest.degree(); ++d) {
        h = frob.apply(h);
        UniPoly g = gcd(rest, h - x);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            rest = rest / g;
            if (rest.degree() <= 0) break;
            // keep h reduced modulo the shrinking modulus; frob stays valid on the original ring
            // because rest divides the original polynomial.
        }
        h = h % rest;
        if (rest.degree() > 0 && 2 * static_cast<long>(d + 1) > rest.degree()) break;
    }
    if (rest.degree() > 0) out.emplace_back(rest, static_cast<unsigned>(rest.degree()));
    return out;
}

/// Equal-degree splitting (Cantor-Zassenhaus) of a monic square-free product of
/// irreducibles of degree d.
inline std::vector<UniPoly> equal_degree_split(const UniPoly& g, unsigned d, SeededStream& rng) {
    const auto& field = g.field();
    if (g.degree() == static_cast<long>(d)) return {g};
    const std::uint32_t p = field.modulus();
    constexpr int kRetries = 64;
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        std::vector<Residue> coeffs(static_cast<std::size_t>(g.degree()));
        for (auto& c : coeffs) c = static_cast<Residue>(rng.below(p));
        UniPoly a(field, coeffs);
        if (a.degree() <= 0) continue;
        UniPoly b(field);
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1))
            UniPoly t = a;
            b = a;
            for (unsigned i = 1; i < d; ++i) {
                t = mulmod(t, t, g);
                b = b + t;
            }
        } else {
            // (p^d - 1) / 2 as repeated p-powering, exponent can exceed 64 bits
            UniPoly t = a;
            UniPoly acc = UniPoly::constant(field, 1);
            // a^((p^d-1)/2) = prod_{i<d} (a^(p^i))^((p-1)/2) * ... use identity
            // (p^d - 1)/2 = (p-1)/2 * (1 + p + ... + p^(d-1))
            for (unsigned i = 0; i < d; ++i) {
                acc = mulmod(acc, t, g);
                if (i + 1 < d) t = powmod(t, p, g);
            }
            b = powmod(acc, (p - 1) / 2, g) - UniPoly::constant(field, 1);
        }
        UniPoly h = gcd(g, b);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            auto left = equal_degree_split(h, d, rng);
            auto right = equal_degree_split(g / h, d, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
    throw FactorizationError("equal-degree splitting exceeded its retry budget");
}

/// Complete factorization of a monic polynomial of degree >= 1 into monic
/// irreducibles with multiplicities, sorted canonically.
inline std::vector<Factor> factor(const UniPoly& f, SeededStream& rng) {
    if (f.degree() < 1 || f.leading() != 1) throw InvalidInput("factor expects a monic polynomial of degree >= 1");
    std::vector<Factor> out;
    for (const auto& [sqf, mult] : squarefree_decomposition(f))
        for (const auto& [g, d] : distinct_degree_factorization(sqf))
            for (auto& irr : equal_degree_split(g, d, rng)) out.push_back({irr.monic(), mult});
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (!(a.poly == b.poly)) return canonical_less(a.poly, b.poly);
        return a.multiplicity < b.multiplicity;
    });
    // merge equal irreducibles arising from different square-free layers
    std::vector<Factor> merged;
    for (auto& fac : out) {
        if (!merged.empty() && merged.back().poly == fac.poly)
            merged.back().multiplicity += fac.multiplicity;
        else
            merged.push_back(fac);
    }
    return merged;
}

inline std::vector<Factor> factor(const UniPoly& f) {
    SeededStream rng(0);
    return factor(f, rng);
}

/// Degrees of the irreducible factors of a monic square-free polynomial,
/// obtained from distinct-degree factorization alone.
inline std::vector<unsigned> factor_degree_pattern(const UniPoly& f) {
    std::vector<unsigned> degs;
    for (const auto& [g, d] : distinct_degree_factorization(f))
        for (long k = 0; k < g.degree() / static_cast<long>(d); ++k) degs.push_back(d);
    std::sort(degs.begin(), degs.end());
    return degs;
}

/// Subset-sum over a multiset of positive parts.
inline bool has_subset_sum(const std::vector<unsigned>& parts, unsigned target) {
    std::vector<bool> reach(target + 1, false);
    reach[0] = true;
    for (unsigned p : parts)
        for (unsigned s = target; s >= p && s <= target; --s)
            if (reach[s - p]) reach[s] = true;
    return reach[target];
}

/// Product of the lexicographically first sub-multiset of irreducible factors
/// (canonical factor order) whose degrees sum to d, or nullopt.
inline std::optional<UniPoly> find_factor_of_degree(const UniPoly& f, unsigned d, SeededStream& rng) {
    if (!is_squarefree(f)) throw InvalidInput("find_factor_of_degree expects a square-free polynomial");
    const auto& field = f.field();
    if (d == 0) return UniPoly::constant(field, 1);
    if (static_cast<long>(d) > f.degree()) return std::nullopt;
    const auto factors = factor(f.monic(), rng);
    const std::size_t n = factors.size();
    // suffix[i][s]: some subset of factors i..n-1 has degree sum s
    std::vector<std::vector<bool>> suffix(n + 1, std::vector<bool>(d + 1, false));
    suffix[n][0] = true;
    for (std::size_t i = n; i-- > 0;) {
        const auto deg = static_cast<unsigned>(factors[i].poly.degree());
        for (unsigned s = 0; s <= d; ++s) suffix[i][s] = suffix[i + 1][s] || (s >= deg && suffix[i + 1][s - deg]);
    }
    if (!suffix[0][d]) return std::nullopt;
    UniPoly product = UniPoly::constant(field, 1);
    unsigned remaining = d;
    for (std::size_t i = 0; i < n && remaining > 0; ++i) {
        const auto deg = static_cast<unsigned>(factors[i].poly.degree());
        if (deg <= remaining && suffix[i + 1][remaining - deg]) {
            product = product * factors[i].poly;
            remaining -= deg;
        }
    }
    return product;
}

inline std::optional<UniPoly> find_factor_of_degree(const UniPoly& f, unsigned d) {
    SeededStream rng(0);
    return find_factor_of_degree(f, d, rng);
}

}  // namespace glicci

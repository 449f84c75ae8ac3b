#pragma once

// Counting square-free polynomials over GF(q) that split off a factor of a
// prescribed degree, as exact polynomials in q, their q -> infinity limits
// (conjugacy-class fractions of the symmetric group), and a seeded Monte
// Carlo estimate over a concrete prime field.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "glicci/errors.hpp"
#include "glicci/prime_field.hpp"
#include "glicci/random.hpp"
#include "glicci/unipoly.hpp"

namespace glicci {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer partition, parts in descending order.
struct Partition {
    std::vector<unsigned> parts;

    unsigned size() const {
        unsigned s = 0;
        for (auto p : parts) s += p;
        return s;
    }

    /// (part, multiplicity) pairs, parts descending.
    std::vector<std::pair<unsigned, unsigned>> multiplicities() const {
        std::vector<std::pair<unsigned, unsigned>> out;
        for (auto p : parts) {
            if (!out.empty() && out.back().first == p)
                ++out.back().second;
            else
                out.emplace_back(p, 1);
        }
        return out;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
};

constexpr unsigned kMaxPartitionSize = 60;
constexpr unsigned kMaxExactCountDegree = 40;

/// Calls `visit(const std::vector<unsigned>&)` on every partition of n, parts
/// descending, in reverse lexicographic order starting from (n).
template <class Visit>
void for_each_partition(unsigned n, Visit&& visit) {
    if (n == 0) return;
    std::vector<unsigned> parts{n};
    while (true) {
        visit(static_cast<const std::vector<unsigned>&>(parts));
        // next partition in reverse lexicographic order
        unsigned ones = 0;
        while (!parts.empty() && parts.back() == 1) {
            parts.pop_back();
            ++ones;
        }
        if (parts.empty()) return;
        const unsigned k = parts.back() - 1;
        parts.back() = k;
        unsigned rem = ones + 1;
        while (rem > k) {
            parts.push_back(k);
            rem -= k;
        }
        if (rem > 0) parts.push_back(rem);
    }
}

inline std::vector<Partition> enumerate_partitions(unsigned n) {
    if (n < 1 || n > kMaxPartitionSize) throw InvalidInput("partition size must be in 1..60");
    std::vector<Partition> out;
    for_each_partition(n, [&](const std::vector<unsigned>& p) { out.push_back({p}); });
    return out;
}

inline bool has_subpartition_of_size(const Partition& lambda, unsigned k) { return has_subset_sum(lambda.parts, k); }

/// Polynomial in the field size q with exact rational coefficients.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    static RationalPolynomial monomial(unsigned exp, Rational coef = 1) {
        RationalPolynomial r;
        if (coef != 0) r.c_[exp] = coef;
        return r;
    }

    const std::map<unsigned, Rational>& coefficients() const { return c_; }
    Rational coefficient(unsigned exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? Rational(0) : it->second;
    }
    bool is_zero() const { return c_.empty(); }
    unsigned degree() const { return c_.empty() ? 0 : c_.rbegin()->first; }
    Rational leading_coefficient() const { return c_.empty() ? Rational(0) : c_.rbegin()->second; }

    Rational evaluate(const Rational& q) const {
        Rational acc = 0;
        unsigned prev = degree();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            for (unsigned e = prev; e > it->first; --e) acc *= q;
            acc += it->second;
            prev = it->first;
        }
        for (unsigned e = prev; e > 0; --e) acc *= q;
        return acc;
    }

    RationalPolynomial& operator+=(const RationalPolynomial& o) {
        for (const auto& [e, v] : o.c_) add_term(e, v);
        return *this;
    }
    friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
    friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) {
        for (const auto& [e, v] : b.c_) a.add_term(e, -v);
        return a;
    }
    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
        RationalPolynomial r;
        for (const auto& [ea, va] : a.c_)
            for (const auto& [eb, vb] : b.c_) r.add_term(ea + eb, va * vb);
        return r;
    }
    friend RationalPolynomial operator*(RationalPolynomial a, const Rational& s) {
        if (s == 0) return {};
        for (auto& [e, v] : a.c_) v *= s;
        return a;
    }
    friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

    /// Descending powers, e.g. "(29/80)*q^6 - (11/16)*q^5 + 3*q - 1".
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            Rational v = it->second;
            if (first) {
                if (v < 0) os << "-";
            } else {
                os << (v < 0 ? " - " : " + ");
            }
            if (v < 0) v = -v;
            const BigInt num = boost::multiprecision::numerator(v);
            const BigInt den = boost::multiprecision::denominator(v);
            const unsigned e = it->first;
            if (den == 1) {
                if (num != 1 || e == 0) os << num;
                if (num != 1 && e > 0) os << "*";
            } else {
                os << "(" << num << "/" << den << ")";
                if (e > 0) os << "*";
            }
            if (e > 0) os << "q";
            if (e > 1) os << "^" << e;
            first = false;
        }
        return os.str();
    }

private:
    void add_term(unsigned e, const Rational& v) {
        if (v == 0) return;
        auto [it, inserted] = c_.try_emplace(e, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0) c_.erase(it);
        }
    }

    std::map<unsigned, Rational> c_;
};

inline int mobius(unsigned n) {
    int mu = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

namespace detail {

/// Integer polynomial in q, ascending coefficients.
using IntPoly = std::vector<BigInt>;

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
    IntPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

/// l * N(l, q) as an integer polynomial.
inline IntPoly scaled_irreducible_count(unsigned l) {
    IntPoly r(l + 1, 0);
    for (unsigned d = 1; d <= l; ++d)
        if (l % d == 0) r[d] += mobius(l / d);
    return r;
}

/// prod_{j<t} (l*N(l,q) - j*l) = l^t t! * binom(N(l,q), t).
inline IntPoly scaled_binomial(unsigned l, unsigned t) {
    const IntPoly base = scaled_irreducible_count(l);
    IntPoly r{1};
    for (unsigned j = 0; j < t; ++j) {
        IntPoly term = base;
        term[0] -= BigInt(j) * l;
        r = mul(r, term);
    }
    return r;
}

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Centralizer order z_lambda = prod t_i! * l_i^t_i; n!/z_lambda = |C_lambda|.
inline BigInt centralizer_order(const Partition& lambda) {
    BigInt z = 1;
    for (auto [l, t] : lambda.multiplicities()) {
        z *= factorial(t);
        for (unsigned i = 0; i < t; ++i) z *= l;
    }
    return z;
}

}  // namespace detail

/// Number N(l, q) of monic irreducible polynomials of degree l over GF(q).
inline RationalPolynomial count_irreducible(unsigned l) {
    if (l == 0) throw InvalidInput("irreducible count needs degree >= 1");
    RationalPolynomial r;
    const auto scaled = detail::scaled_irreducible_count(l);
    for (unsigned d = 0; d < scaled.size(); ++d)
        if (scaled[d] != 0) r += RationalPolynomial::monomial(d, Rational(scaled[d], l));
    return r;
}

/// Number A(n, k, q) of monic square-free degree-n polynomials with a degree-k
/// factor: sum over partitions of n admitting a part-subset of size k of
/// prod binom(N(l_i, q), t_i).
inline RationalPolynomial count_squarefree_with_factor(unsigned n, unsigned k) {
    if (k > n) throw InvalidInput("factor degree exceeds polynomial degree");
    if (n == 0) return RationalPolynomial::monomial(0, 1);
    if (n > kMaxExactCountDegree) throw InvalidInput("exact count supports n <= 40");
    // Each partition term equals (scaled product) / z_lambda; accumulate
    // (n!/z_lambda) * scaled product over the integers and divide once.
    std::map<std::pair<unsigned, unsigned>, detail::IntPoly> cache;
    detail::IntPoly total(n + 1, 0);
    const BigInt nfact = detail::factorial(n);
    for_each_partition(n, [&](const std::vector<unsigned>& parts) {
        if (!has_subset_sum(parts, k)) return;
        const Partition lambda{parts};
        detail::IntPoly prod{1};
        for (auto [l, t] : lambda.multiplicities()) {
            auto key = std::make_pair(l, t);
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, detail::scaled_binomial(l, t)).first;
            prod = detail::mul(prod, it->second);
        }
        const BigInt weight = nfact / detail::centralizer_order(lambda);
        for (std::size_t i = 0; i < prod.size(); ++i) total[i] += weight * prod[i];
    });
    RationalPolynomial r;
    for (unsigned d = 0; d <= n; ++d)
        if (total[d] != 0) r += RationalPolynomial::monomial(d, Rational(total[d], nfact));
    return r;
}

/// |C_lambda| / n! = 1 / prod t_i! l_i^t_i.
inline Rational conjugacy_fraction(const Partition& lambda) { return Rational(1) / Rational(detail::centralizer_order(lambda)); }

/// p(n, k): q -> infinity limit of A(n, k, q) / q^n.
inline Rational limit_fraction(unsigned n, unsigned k) {
    if (k > n || n > kMaxPartitionSize) throw InvalidInput("limit_fraction needs 0 <= k <= n <= 60");
    if (n == 0) return 1;
    const BigInt nfact = detail::factorial(n);
    BigInt acc = 0;
    for_each_partition(n, [&](const std::vector<unsigned>& parts) {
        if (has_subset_sum(parts, k)) acc += nfact / detail::centralizer_order(Partition{parts});
    });
    return Rational(acc, nfact);
}

struct MonteCarloResult {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    Rational fraction() const { return trials == 0 ? Rational(0) : Rational(successes, trials); }
};

/// True when a monic polynomial is square-free and has a factor of degree k.
inline bool splits_off_degree(const UniPoly& f, unsigned k) {
    if (!is_squarefree(f)) return false;
    if (k == 0) return true;
    return has_subset_sum(factor_degree_pattern(f), k);
}

/// Uniformly random monic degree-n polynomials over GF(q); trial i draws from
/// stream `split(i)` of the seed, so the count does not depend on `workers`.
inline MonteCarloResult montecarlo_split_fraction(unsigned n, unsigned k, std::uint32_t q, std::uint64_t trials,
                                                  std::uint64_t seed, unsigned workers = 0) {
    if (k > n || n == 0) throw InvalidInput("montecarlo needs 0 <= k <= n, n >= 1");
    const PrimeField field(q);
    const SeededStream root(seed);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(trials, 1)));
    std::vector<std::uint64_t> counts(workers, 0);
    auto run = [&](unsigned w) {
        for (std::uint64_t i = w; i < trials; i += workers) {
            SeededStream rng = root.split(i);
            std::vector<Residue> c(n + 1);
            for (unsigned j = 0; j < n; ++j) c[j] = static_cast<Residue>(rng.below(q));
            c[n] = 1;
            if (splits_off_degree(UniPoly(field, std::move(c)), k)) ++counts[w];
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    MonteCarloResult r;
    r.trials = trials;
    for (auto c : counts) r.successes += c;
    return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace glicci

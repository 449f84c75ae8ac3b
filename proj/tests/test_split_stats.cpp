#include <catch_amalgamated.hpp>

#include <cmath>

#include "glicci/split_stats.hpp"
#include "oracles.hpp"

using namespace glicci;

namespace {

RationalPolynomial q_power_minus_previous(unsigned n) {
    return RationalPolynomial::monomial(n) - RationalPolynomial::monomial(n - 1);
}

}  // namespace

TEST_CASE("irreducible count examples") {
    CHECK(count_irreducible(1) == RationalPolynomial::monomial(1));
    CHECK(count_irreducible(2) ==
          RationalPolynomial::monomial(2, Rational(1, 2)) - RationalPolynomial::monomial(1, Rational(1, 2)));
    CHECK(count_irreducible(6).evaluate(2) == 9);
    CHECK_THROWS_AS(count_irreducible(0), InvalidInput);
}

TEST_CASE("partition enumeration") {
    CHECK(enumerate_partitions(1).size() == 1);
    CHECK(enumerate_partitions(5).size() == 7);
    CHECK(enumerate_partitions(30).size() == 5604);
    for (const auto& p : enumerate_partitions(12)) {
        REQUIRE(p.size() == 12);
        REQUIRE(std::is_sorted(p.parts.rbegin(), p.parts.rend()));
        unsigned regrouped = 0;
        for (auto [part, t] : p.multiplicities()) regrouped += part * t;
        REQUIRE(regrouped == 12);
    }
    const auto all = enumerate_partitions(10);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) REQUIRE_FALSE(all[i] == all[j]);
}

TEST_CASE("subpartition examples") {
    CHECK(has_subpartition_of_size({{3, 2, 1}}, 3));
    CHECK_FALSE(has_subpartition_of_size({{2, 2, 2}}, 3));
    CHECK(has_subpartition_of_size({{2, 2, 2}}, 4));
}

TEST_CASE("A(6,3,q) exact") {
    CHECK(count_squarefree_with_factor(6, 3).to_string() ==
          "(29/80)*q^6 - (11/16)*q^5 + (5/16)*q^4 - (5/16)*q^3 + (13/40)*q^2");
    CHECK(count_squarefree_with_factor(2, 1).evaluate(2) == 1);
    CHECK_THROWS_AS(count_squarefree_with_factor(3, 4), InvalidInput);
}

TEST_CASE("k = 0 counts all square-free polynomials") {
    for (unsigned n = 2; n <= 8; ++n) REQUIRE(count_squarefree_with_factor(n, 0) == q_power_minus_previous(n));
    // q^n - q^(n-1) fails at n = 1, where every monic linear polynomial counts
    CHECK(count_squarefree_with_factor(1, 0) == RationalPolynomial::monomial(1));
}

TEST_CASE("square-free counts match enumeration for n <= 8") {
    for (std::uint32_t q : {2u, 3u, 5u})
        for (unsigned n = 2; n <= 8; ++n) {
            if (q == 5 && n > 5) continue;  // 5^n enumeration with trial division gets slow
            const PrimeField f(q);
            std::uint64_t count = 0;
            for (const auto& g : oracle::monic_polynomials(f, n)) count += is_squarefree(g);
            REQUIRE(count_squarefree_with_factor(n, 0).evaluate(q) == count);
            if (n <= 6) REQUIRE(oracle::count_split(f, n, 0) == count);
        }
}

TEST_CASE("A(n,k,q) matches brute force for n <= 6, q in {2,3}") {
    for (std::uint32_t q : {2u, 3u})
        for (unsigned n = 1; n <= 6; ++n)
            for (unsigned k = 0; k <= n; ++k) REQUIRE(count_squarefree_with_factor(n, k).evaluate(q) == oracle::count_split(PrimeField(q), n, k));
}

TEST_CASE("leading coefficient is the limit fraction") {
    for (unsigned n = 1; n <= 12; ++n)
        for (unsigned k = 0; k <= n; ++k) {
            const auto a = count_squarefree_with_factor(n, k);
            REQUIRE(a.degree() == n);
            REQUIRE(a.leading_coefficient() == limit_fraction(n, k));
        }
}

TEST_CASE("conjugacy fractions") {
    CHECK(conjugacy_fraction({{7}}) == Rational(1, 7));
    CHECK(conjugacy_fraction({{1, 1}}) == Rational(1, 2));
    for (unsigned n = 1; n <= 30; ++n) {
        Rational total = 0;
        for (const auto& p : enumerate_partitions(n)) total += conjugacy_fraction(p);
        REQUIRE(total == 1);
    }
}

TEST_CASE("limit fraction examples") {
    CHECK(limit_fraction(2, 1) == Rational(1, 2));
    CHECK(std::abs(to_double(limit_fraction(30, 1)) - (1.0 - std::exp(-1.0))) < 1e-6);
    CHECK(std::abs(to_double(limit_fraction(30, 20)) - 0.385481) < 1e-5);
}

TEST_CASE("A(30,20,q) expansion") {
    const auto a = count_squarefree_with_factor(30, 20);
    const Rational q = 10007;
    Rational q30 = 1;
    for (int i = 0; i < 30; ++i) q30 *= q;
    CHECK(std::abs(to_double(a.evaluate(q) / q30) - 0.385426) < 1e-5);
    CHECK(std::abs(to_double(a.coefficient(29)) + 0.550631) < 1e-5);
}

TEST_CASE("Monte Carlo examples") {
    CHECK(montecarlo_split_fraction(1, 1, 101, 100, 1).successes == 100);
    // over GF(2) the only qualifying monic quadratic is x^2 + x
    const auto r = montecarlo_split_fraction(2, 1, 2, 4000, 3);
    CHECK(std::abs(to_double(r.fraction()) - 0.25) < 0.03);
}

TEST_CASE("Monte Carlo is deterministic and independent of worker count") {
    const auto a = montecarlo_split_fraction(8, 3, 101, 2000, 99, 1);
    const auto b = montecarlo_split_fraction(8, 3, 101, 2000, 99, 4);
    CHECK(a.successes == b.successes);
    CHECK(montecarlo_split_fraction(8, 3, 101, 2000, 100, 2).successes != a.successes);
}

TEST_CASE("Monte Carlo tracks the exact proportion") {
    const auto r = montecarlo_split_fraction(6, 3, 101, 20000, 5);
    Rational q6 = 1;
    for (int i = 0; i < 6; ++i) q6 *= 101;
    const double exact = to_double(count_squarefree_with_factor(6, 3).evaluate(101) / q6);
    const double sigma = std::sqrt(exact * (1 - exact) / 20000);
    CHECK(std::abs(to_double(r.fraction()) - exact) < 4 * sigma);
}

#include <catch_amalgamated.hpp>

#include "glicci/errors.hpp"
#include "glicci/prime_field.hpp"
#include "glicci/random.hpp"

using namespace glicci;

namespace {

FpMatrix random_matrix(PrimeField f, std::size_t r, std::size_t c, SeededStream& rng, unsigned sparsity = 1) {
    FpMatrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (rng.below(sparsity) == 0) m(i, j) = static_cast<Residue>(rng.below(f.modulus()));
    return m;
}

}  // namespace

TEST_CASE("field inverse examples") {
    CHECK(PrimeField(7).inv(1) == 1);
    CHECK(PrimeField(7).inv(3) == 5);
    CHECK(PrimeField(10007).inv(2) == 5004);
    CHECK(field_inverse(PrimeFieldElement(PrimeField(7), 3)).residue() == 5);
    CHECK_THROWS_AS(PrimeField(7).inv(0), DivisionByZero);
    CHECK_THROWS_AS(PrimeField(9), InvalidInput);
}

TEST_CASE("residues stay canonical") {
    const PrimeField f(10007);
    CHECK(f.reduce(-1) == 10006);
    CHECK(f.reduce(20014) == 0);
    CHECK(f.neg(0) == 0);
    const PrimeField big(2147483647);
    CHECK(big.mul(2147483646, 2147483646) == 1);
}

TEST_CASE("inverse times element is one for every residue") {
    for (std::uint32_t p : {2u, 3u, 5u, 101u, 10007u}) {
        const PrimeField f(p);
        for (Residue a = 1; a < p; ++a) REQUIRE(f.mul(a, f.inv(a)) == 1);
    }
}

TEST_CASE("ring axioms on random triples") {
    SeededStream rng(11);
    for (std::uint32_t p : {3u, 10007u, 2147483647u}) {
        const PrimeField f(p);
        for (int i = 0; i < 2000; ++i) {
            const auto a = static_cast<Residue>(rng.below(p)), b = static_cast<Residue>(rng.below(p)),
                       c = static_cast<Residue>(rng.below(p));
            REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            REQUIRE(f.add(a, f.neg(a)) == 0);
            REQUIRE(f.sub(a, b) == f.add(a, f.neg(b)));
            REQUIRE(f.mul_add(a, b, c) == f.add(a, f.mul(b, c)));
        }
        REQUIRE(f.pow(2, p - 1) == 1);  // Fermat
    }
}

TEST_CASE("kernel examples") {
    const PrimeField f(7);
    CHECK(FpMatrix::identity(f, 2).kernel_basis().empty());
    CHECK(FpMatrix(f, 2, 3).kernel_basis().size() == 3);
    FpMatrix m(f, 2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 4;
    const auto k = m.kernel_basis();
    REQUIRE(k.size() == 1);
    // proportional to (2, -1)
    CHECK(f.mul(k[0][0], f.neg(1)) == f.mul(k[0][1], 2));
}

TEST_CASE("rank-nullity and kernel vectors for sizes up to 50") {
    SeededStream rng(5);
    for (std::uint32_t p : {2u, 3u, 10007u})
        for (std::size_t n = 1; n <= 50; n += 7)
            for (unsigned sparsity : {1u, 3u, 10u}) {
                const PrimeField f(p);
                const FpMatrix m = random_matrix(f, n, n + n % 3, rng, sparsity);
                const auto k = m.kernel_basis();
                REQUIRE(m.rank() + k.size() == m.cols());
                REQUIRE(m.rank() <= std::min(m.rows(), m.cols()));
                for (const auto& v : k)
                    for (Residue x : m.apply(v)) REQUIRE(x == 0);
                FpMatrix basis(f, k.size(), m.cols());
                for (std::size_t r = 0; r < k.size(); ++r)
                    for (std::size_t c = 0; c < m.cols(); ++c) basis(r, c) = k[r][c];
                REQUIRE(basis.rank() == k.size());
            }
}

TEST_CASE("kernel basis is deterministic") {
    SeededStream a(9), b(9);
    const PrimeField f(101);
    CHECK(random_matrix(f, 6, 9, a).kernel_basis() == random_matrix(f, 6, 9, b).kernel_basis());
}

TEST_CASE("inverse, determinant and characteristic polynomial") {
    SeededStream rng(3);
    const PrimeField f(10007);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng.below(9);
        const FpMatrix a = random_matrix(f, n, n, rng), b = random_matrix(f, n, n, rng);
        REQUIRE((a * b).determinant() == f.mul(a.determinant(), b.determinant()));
        FpMatrix inv(f, 0, 0);
        if (a.try_inverse(inv)) REQUIRE(a * inv == FpMatrix::identity(f, n));
        else REQUIRE(a.determinant() == 0);

        // Cayley-Hamilton: chi(A) = 0
        const auto chi = a.characteristic_polynomial();
        REQUIRE(chi.size() == n + 1);
        REQUIRE(chi.back() == 1);
        FpMatrix acc(f, n, n);
        for (std::size_t i = chi.size(); i-- > 0;) {
            acc = acc * a;
            for (std::size_t r = 0; r < n; ++r) acc(r, r) = f.add(acc(r, r), chi[i]);
        }
        REQUIRE(acc == FpMatrix(f, n, n));
        // constant term is (-1)^n det
        const Residue det = a.determinant();
        REQUIRE(chi[0] == (n % 2 ? f.neg(det) : det));
    }
}

TEST_CASE("seeded streams are reproducible and split independently") {
    SeededStream a(42), b(42);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
    const SeededStream root(42);
    CHECK(root.split(0).next() != root.split(1).next());
    CHECK(root.split(5).seed() == 42);  // children report the root seed
    SeededStream s1 = root.split(3), s2 = root.split(3);
    CHECK(s1.next() == s2.next());
    for (int i = 0; i < 1000; ++i) REQUIRE(s1.below(17) < 17);
}

#include <catch_amalgamated.hpp>

#include "glicci/tangent.hpp"
#include "oracles.hpp"

using namespace glicci;

namespace {

const PrimeField F101(101);

MultiPoly x(int i) { return MultiPoly::variable(F101, i); }

const HVector kTwentyThirty{1, 3, 6, 10, 6, 3, 1};

/// HF(S/I, t) summed from the h-vector.
unsigned hf_from_h(const HVector& h, unsigned t) {
    unsigned s = 0;
    for (std::size_t i = 0; i <= t && i < h.length(); ++i) s += h[i];
    return s;
}

}  // namespace

TEST_CASE("graded piece examples") {
    const auto a = groebner(F101, {x(0)});
    const auto a2 = groebner(F101, {x(0) * x(0)});
    const auto piece = graded_piece(a, a2, 1);
    REQUIRE(piece.basis.size() == 1);
    CHECK(piece.basis[0] == x(0));
    CHECK(graded_piece(a, a2, 2).basis.size() == 3);
    CHECK(graded_piece(a, a, 3).basis.empty());
    CHECK_THROWS_AS(graded_piece(a2, a, 1), InvalidInput);
    CHECK(quotient_piece(a, 2).basis.size() == 6);
    CHECK(quotient_piece(unit_ideal(F101), 2).basis.empty());
}

TEST_CASE("graded piece dimension is a Hilbert function difference") {
    const std::vector<oracle::Point> pts = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}, {1, 2, 3, 4}};
    const auto big = oracle::point_ideal(F101, pts);
    const auto small = oracle::point_ideal(F101, {pts[0], pts[3], pts[5]});
    for (unsigned t = 0; t <= 4; ++t) {
        const auto piece = graded_piece(small, big, t);
        REQUIRE(piece.basis.size() == hilbert_function(big, t) - hilbert_function(small, t));
        for (const auto& f : piece.basis) {
            REQUIRE(contains(small, f));
            REQUIRE_FALSE(contains(big, f));
        }
    }
}

TEST_CASE("Hom into S_G for three quadrics") {
    // the syzygy coefficients lie in I_G, so every choice of images is allowed
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto g = random_gorenstein({1, 3, 3, 1}, 101, seed);
        CHECK(hom_dim_zero(g.matrix, g.degrees, HomTarget::quotient(g.ideal)) == 21);
        CHECK(hom_dim_zero(g.matrix, g.degrees, HomTarget::ideal_modulo(g.ideal, g.ideal)) == 0);
        const auto wrong = generic_degree_matrix({1, 3, 6, 10, 6, 3, 1});
        CHECK_THROWS_AS(hom_dim_zero(g.matrix, wrong, HomTarget::quotient(g.ideal)), DimensionMismatch);
    }
}

TEST_CASE("generic Hilbert function test") {
    CHECK(generic_hilbert_function_test(oracle::point_ideal(F101, {{1, 0, 0, 0}}), 1));
    CHECK(generic_hilbert_function_test(
        oracle::point_ideal(F101, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}), 4));
    // four points on the plane x3 = 0
    CHECK_FALSE(generic_hilbert_function_test(
        oracle::point_ideal(F101, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 1, 0}}), 4));
    // three collinear points
    CHECK_FALSE(generic_hilbert_function_test(oracle::point_ideal(F101, {{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}}), 3));
}

TEST_CASE("small link verifies") {
    bool verified = false;
    for (std::uint64_t seed = 1; seed <= 5 && !verified; ++seed) {
        const auto cert = verify_edge({1, 3, 3, 1}, 7, 101, seed);
        REQUIRE(cert.verdict != Verdict::Refuted);
        if (cert.verdict == Verdict::Verified) {
            CHECK(cert.dims.hom_ix == 0);
            CHECK(cert.dims.hom_iy == 18);
            verified = true;
        }
    }
    CHECK(verified);
}

TEST_CASE("the 20 -- 10 and 21 -- 9 links") {
    const auto a = verify_edge(kTwentyThirty, 20, 10007, 1);
    REQUIRE(a.verdict == Verdict::Verified);
    CHECK(a.dims.hom_ix == 3);
    CHECK(a.dims.hom_iy == 33);
    CHECK(a.dims.hom_sg == 63);
    CHECK(a.dims.h_x == HVector{1, 3, 6, 10});
    CHECK(a.dims.h_y == HVector{1, 3, 6});

    const auto b = verify_edge(kTwentyThirty, 21, 10007, 1);
    REQUIRE(b.verdict == Verdict::Verified);
    CHECK(b.dims.hom_ix == 0);
    CHECK(b.dims.hom_iy == 36);
}

TEST_CASE("graded piece of the 20-in-30 configuration") {
    const auto cert = verify_edge(kTwentyThirty, 20, 10007, 1);
    REQUIRE(cert.verdict == Verdict::Verified);
    const auto g = random_gorenstein(kTwentyThirty, PrimeField(10007), SeededStream(1).split(cert.attempts - 1).split(0));
    const auto& w = *cert.witness;
    const auto ix = extract_subscheme(g.ideal, w.ell, w.xh, w.factor);
    CHECK(graded_piece(ix, g.ideal, 4).basis.size() == 6);
    CHECK(hf_from_h(kTwentyThirty, 4) == 26);
}

TEST_CASE("excluded configuration never verifies") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) CHECK(verify_edge({1, 3, 3, 3, 1}, 7, 10007, seed).verdict != Verdict::Verified);
}

TEST_CASE("exchanging d and e keeps the verdict") {
    struct Case {
        HVector h;
        unsigned d;
        std::uint32_t p;
    };
    for (const auto& c : {Case{{1, 3, 3, 1}, 5, 101}, Case{{1, 3, 3, 1}, 4, 101}, Case{kTwentyThirty, 20, 10007},
                          Case{kTwentyThirty, 21, 10007}}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const auto a = verify_edge(c.h, c.d, c.p, seed);
            const auto b = verify_edge(c.h, c.h.degree() - c.d, c.p, seed);
            INFO(c.h.to_string() << " d=" << c.d << " seed=" << seed);
            REQUIRE(a.verdict == b.verdict);
            REQUIRE(a.attempts == b.attempts);
            REQUIRE(a.matrix.serialize() == b.matrix.serialize());
            if (a.verdict == Verdict::Verified) {
                REQUIRE(a.dims.hom_ix == b.dims.hom_iy);
                REQUIRE(a.dims.hom_iy == b.dims.hom_ix);
            }
        }
    }
}

TEST_CASE("Hom dimensions on verified certificates") {
    std::size_t verified = 0;
    for (const auto& c : enumerate_candidates(3)) {
        if (c.status == CandidateStatus::ExcludedAcm) continue;
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const auto cert = verify_edge(c.h, c.d, 10007, seed);
            INFO(c.to_string() << " seed=" << seed);
            if (!cert.witness) continue;
            // exact-sequence bound
            REQUIRE(cert.dims.hom_sg <= cert.dims.hom_ix + 3 * cert.d);
            REQUIRE(cert.dims.h_x.degree() + cert.dims.h_y.degree() == c.h.degree());
            REQUIRE(cert.tests.involution);
            if (cert.verdict != Verdict::Verified) continue;
            REQUIRE(cert.dims.hom_sg == cert.gdim);
            REQUIRE(cert.dims.hom_sg == cert.dims.hom_ix + 3 * cert.d);
            REQUIRE(cert.dims.h_x == generic_hvector(cert.d));
            REQUIRE(cert.dims.h_y == generic_hvector(cert.e));
            // h_X plus the shifted reverse of h_Y recovers h_G
            const auto dec = decompose(c.h, c.d);
            REQUIRE(dec);
            std::vector<unsigned> sum(c.h.length(), 0);
            for (std::size_t i = 0; i < cert.dims.h_x.length(); ++i) sum[i] += cert.dims.h_x[i];
            const HVector rev = cert.dims.h_y.reversed();
            for (std::size_t i = 0; i < rev.length(); ++i) sum[dec->shift + i] += rev[i];
            REQUIRE(HVector(sum) == c.h);
            ++verified;
        }
    }
    CHECK(verified >= 5);
}

TEST_CASE("verification is deterministic and input-checked") {
    const auto a = verify_edge({1, 3, 3, 1}, 7, 101, 3);
    const auto b = verify_edge({1, 3, 3, 1}, 7, 101, 3);
    CHECK(a.verdict == b.verdict);
    CHECK(a.dims == b.dims);
    CHECK(a.matrix.serialize() == b.matrix.serialize());
    CHECK_THROWS_AS(verify_edge({1, 3, 3, 1}, 9, 101, 1), InvalidInput);
    const auto none = verify_edge({1, 3, 3, 1}, 7, 101, 3, 0);
    CHECK(none.verdict == Verdict::Inconclusive);
    CHECK_FALSE(none.witness);
}

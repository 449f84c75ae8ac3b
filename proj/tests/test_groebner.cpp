#include <catch_amalgamated.hpp>

#include <algorithm>

#include "glicci/gorenstein.hpp"
#include "glicci/groebner.hpp"
#include "oracles.hpp"

using namespace glicci;

namespace {

const PrimeField F(10007);

MultiPoly P(std::string_view s) { return MultiPoly::parse(F, s); }

GroebnerBasis ideal(std::initializer_list<const char*> gens) {
    std::vector<MultiPoly> v;
    for (const char* g : gens) v.push_back(P(g));
    return groebner(F, v);
}

std::vector<MultiPoly> random_forms(const std::vector<unsigned>& degrees, SeededStream& rng) {
    std::vector<MultiPoly> out;
    for (unsigned d : degrees) out.push_back(random_form(F, d, rng));
    return out;
}

std::vector<oracle::Point> random_points(std::size_t n, SeededStream& rng) {
    std::vector<oracle::Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
        oracle::Point p{1, 0, 0, 0};
        for (int k = 1; k < kVariables; ++k) p[k] = static_cast<Residue>(rng.below(F.modulus()));
        pts.push_back(p);
    }
    return pts;
}

/// Reduced: leading coefficients one and no term of any element divisible by
/// another element's leading monomial.
bool is_reduced(const GroebnerBasis& g) {
    const auto& gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].lead_coefficient() != 1) return false;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (i == j) continue;
            for (const auto& t : gens[i].terms())
                if (gens[j].lead_monomial().divides(t.m)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("monomial order and text") {
    const Monomial a = Monomial::from({2, 1, 0, 0}), b = Monomial::from({1, 0, 2, 0});
    CHECK(a > b);  // grevlex: the smaller last exponent wins
    CHECK(Monomial::from({0, 0, 0, 1}) < Monomial::from({1, 0, 0, 0}));
    CHECK(Monomial::from({0, 0, 0, 0}) < Monomial::from({0, 0, 0, 1}));
    CHECK(a.to_string() == "x0^2*x1");
    CHECK(Monomial::from({0, 0, 0, 0}).to_string() == "1");
    CHECK(Monomial::from({1, 0, 0, 0}).divides(a));
    CHECK_FALSE(a.divides(b));
    CHECK(a.lcm(b) == Monomial::from({2, 1, 2, 0}));
    const auto deg3 = monomials_of_degree(3);
    CHECK(deg3.size() == 20);
    CHECK(std::is_sorted(deg3.rbegin(), deg3.rend()));
}

TEST_CASE("polynomial text round trip") {
    const MultiPoly f = P("3*x0^2*x1 + x2^3 - 2*x3^3");
    CHECK(f.to_string() == "3*x0^2*x1 + 1*x2^3 + 10005*x3^3");
    CHECK(P(f.to_string()) == f);
    CHECK(P("0").is_zero());
    CHECK(P("x0*x1 - x1*x0").is_zero());
    CHECK_THROWS_AS(P("x7"), InvalidInput);
}

TEST_CASE("polynomial ring axioms") {
    SeededStream rng(1);
    for (int i = 0; i < 30; ++i) {
        const auto a = random_form(F, 1 + rng.below(3), rng), b = random_form(F, 2, rng), c = random_form(F, 2, rng);
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * b == b * a);
        REQUIRE((b - b).is_zero());
        REQUIRE(exact_divide(a * b, b) == a);
    }
}

TEST_CASE("groebner examples") {
    CHECK(ideal({"x0", "x1"}).to_string() == GroebnerBasis(F, {P("x1"), P("x0")}).to_string());
    CHECK(ideal({"x0", "x1"}).size() == 2);
    CHECK(ideal({"x0*x1", "x0*x2"}).size() == 2);

    // The reduced basis of (x0^2, x0*x1 + x2^2) is {x0^2, x0*x1 + x2^2, x0*x2^2, x2^4};
    // x1*x2^2 is not in the ideal at all.
    const GroebnerBasis g = ideal({"x0^2", "x0*x1 + x2^2"});
    REQUIRE(g.size() == 4);
    CHECK(contains(g, P("x0*x2^2")));
    CHECK(contains(g, P("x2^4")));
    CHECK_FALSE(contains(g, P("x1*x2^2")));
    CHECK_FALSE(oracle::member(F, {P("x0^2"), P("x0*x1 + x2^2")}, P("x1*x2^2")));
    CHECK(oracle::member(F, {P("x0^2"), P("x0*x1 + x2^2")}, P("x2^4")));
}

TEST_CASE("normal form examples") {
    CHECK(normal_form(P("x0^2"), ideal({"x0"})).is_zero());
    CHECK(normal_form(P("x1"), ideal({"x0"})) == P("x1"));
    CHECK(normal_form(P("x0*x1 + x1^2"), ideal({"x0 - x1"})) == P("2*x1^2"));
}

TEST_CASE("groebner basis properties on random ideals") {
    SeededStream rng(21);
    for (int trial = 0; trial < 12; ++trial) {
        const std::vector<unsigned> degs{2, 2, 2 + static_cast<unsigned>(trial % 2), 3};
        auto gens = random_forms(degs, rng);
        if (trial % 3 == 0) gens.push_back(gens[0] * P("x1") + gens[1] * P("x3"));  // redundant generator
        const GroebnerBasis g = groebner(F, gens);
        REQUIRE(is_reduced(g));
        // same ideal in both directions
        for (const auto& f : gens) REQUIRE(contains(g, f));
        for (const auto& b : g.generators()) REQUIRE(oracle::member(F, gens, b));

        auto shuffled = gens;
        std::reverse(shuffled.begin(), shuffled.end());
        std::rotate(shuffled.begin(), shuffled.begin() + 1, shuffled.end());
        REQUIRE(groebner(F, shuffled) == g);

        for (int k = 0; k < 5; ++k) {
            const MultiPoly f = random_form(F, 3 + rng.below(3), rng);
            const MultiPoly nf = normal_form(f, g);
            REQUIRE(normal_form(nf, g) == nf);
            for (const auto& t : nf.terms()) REQUIRE(g.is_standard(t.m));
            REQUIRE(oracle::member(F, gens, f - nf));
        }
        for (unsigned t = 0; t <= 6; ++t) REQUIRE(hilbert_function(g, t) == oracle::hilbert_function(F, gens, t));
    }
}

TEST_CASE("hilbert function examples") {
    const GroebnerBasis zero(F, {});
    CHECK(hilbert_function(zero, 3) == 20);
    const GroebnerBasis line = ideal({"x0", "x1", "x2"});
    for (unsigned t = 0; t < 6; ++t) CHECK(hilbert_function(line, t) == 1);
    CHECK(h_vector(line) == HVector{1});
    CHECK_THROWS_AS(h_vector(ideal({"x0", "x1"})), DimensionMismatch);
    CHECK(h_vector(unit_ideal(F)).empty());
}

TEST_CASE("complete intersections match the product formula") {
    SeededStream rng(4);
    for (unsigned a = 1; a <= 3; ++a)
        for (unsigned b = a; b <= 3; ++b)
            for (unsigned c = b; c <= 3; ++c) {
                const GroebnerBasis g = groebner(F, random_forms({a, b, c}, rng));
                // (1 + ... + t^(a-1))(1 + ... + t^(b-1))(1 + ... + t^(c-1))
                std::vector<unsigned> h(a + b + c - 2, 0);
                for (unsigned i = 0; i < a; ++i)
                    for (unsigned j = 0; j < b; ++j)
                        for (unsigned k = 0; k < c; ++k) ++h[i + j + k];
                REQUIRE(h_vector(g) == HVector(h));
                REQUIRE(scheme_degree(g) == a * b * c);
            }
    CHECK(h_vector(groebner(F, random_forms({2, 2, 3}, rng))) == HVector{1, 3, 4, 3, 1});
}

TEST_CASE("general points have the generic h-vector") {
    SeededStream rng(17);
    const GroebnerBasis g = oracle::point_ideal(F, random_points(21, rng));
    CHECK(h_vector(g) == HVector{1, 3, 6, 10, 1});
    CHECK(h_vector(oracle::point_ideal(F, random_points(9, rng))) == HVector{1, 3, 5});
}

TEST_CASE("ideal quotient examples") {
    CHECK(ideal_quotient(ideal({"x0*x1"}), ideal({"x0"})) == ideal({"x1"}));
    const GroebnerBasis i = ideal({"x0^2", "x0*x1", "x2^3"});
    CHECK(ideal_quotient(i, unit_ideal(F)) == i);
    CHECK(ideal_quotient(ideal({"x0^2", "x0*x1"}), ideal({"x0"})) == ideal({"x0", "x1"}));
    CHECK_THROWS_AS(ideal_quotient(i, GroebnerBasis(F, {})), InvalidInput);
}

TEST_CASE("intersection agrees with the membership oracle") {
    const GroebnerBasis a = ideal({"x0", "x1"}), b = ideal({"x1", "x2"});
    const GroebnerBasis c = intersect(a, b);
    CHECK(c == ideal({"x1", "x0*x2"}));
}

TEST_CASE("quotient left inverse (I:J)J inside I") {
    SeededStream rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        const auto pts = random_points(6 + trial, rng);
        const std::vector<oracle::Point> half(pts.begin(), pts.begin() + 3);
        const GroebnerBasis i = oracle::point_ideal(F, pts), j = oracle::point_ideal(F, half);
        const GroebnerBasis q = ideal_quotient(i, j);
        for (const auto& a : q.generators())
            for (const auto& b : j.generators()) REQUIRE(contains(i, a * b));
        // the quotient is the ideal of the remaining points
        const std::vector<oracle::Point> rest(pts.begin() + 3, pts.end());
        REQUIRE(q == oracle::point_ideal(F, rest));
        REQUIRE(quotient_of_saturated(i, j) == q);
    }
}

TEST_CASE("elimination quotient agrees with the linear-algebra quotient on Gorenstein ideals") {
    SeededStream rng(6);
    const auto g = random_gorenstein(HVector{1, 3, 3, 1}, F, SeededStream(6));
    const auto pts = random_points(2, rng);
    const GroebnerBasis j = oracle::point_ideal(F, pts);
    REQUIRE(ideal_quotient(g.ideal, j) == quotient_of_saturated(g.ideal, j));
    REQUIRE(ideal_quotient(g.ideal, g.ideal) == unit_ideal(F));
    REQUIRE(quotient_of_saturated(g.ideal, g.ideal) == unit_ideal(F));
}

TEST_CASE("saturation examples") {
    CHECK(saturate(ideal({"x0*x1"}), P("x0")) == ideal({"x1"}));
    CHECK(saturate(ideal({"x0"}), P("x1")) == ideal({"x0"}));
    // (x0^2, x0*x1) : x0 = (x0, x1), and one more step gives the unit ideal
    CHECK(saturate(ideal({"x0^2", "x0*x1"}), P("x0")).is_unit());
    CHECK(quotient_by(ideal({"x0", "x1"}), P("x0")).is_unit());
    // brute force: x0 * x0^t and x0 * x1 * x0^t lie in the ideal, so 1 and x1 saturate in
    for (unsigned t = 0; t <= 3; ++t) {
        const MultiPoly power = MultiPoly::term(F, Monomial::from({t + 1, 0, 0, 0}), 1);
        CHECK(oracle::member(F, {P("x0^2"), P("x0*x1")}, power * P("x0")));
    }
}

TEST_CASE("saturation by a general linear form removes embedded components") {
    SeededStream rng(12);
    const auto pts = random_points(5, rng);
    const GroebnerBasis i = oracle::point_ideal(F, pts);
    // multiply in the irrelevant ideal squared: same points, not saturated
    std::vector<MultiPoly> gens;
    for (const auto& f : i.generators())
        for (const char* m : {"x0^2", "x1^2", "x2^2", "x3^2", "x0*x1"}) gens.push_back(f * P(m));
    const GroebnerBasis junk = groebner(F, gens);
    REQUIRE_FALSE(junk == i);
    const MultiPoly ell = random_linear_form(F, rng);
    CHECK(saturate(junk, ell) == i);
    CHECK(saturate(junk, ell * ell) == i);  // quadratic form: iterated quotients
}

TEST_CASE("truncated bases agree below the bound") {
    SeededStream rng(2);
    const auto gens = random_forms({2, 3, 3, 4}, rng);
    const GroebnerBasis full = groebner(F, gens), cut = groebner(F, gens, 4u);
    for (unsigned t = 0; t <= 4; ++t) REQUIRE(hilbert_function(full, t) == hilbert_function(cut, t));
}

TEST_CASE("non-homogeneous input is rejected") {
    CHECK_THROWS_AS(groebner(F, {P("x0^2 + x1")}), InvalidInput);
}

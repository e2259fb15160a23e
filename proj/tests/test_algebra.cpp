#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopf/algebra.hpp"
#include "hopf/rng.hpp"

using namespace hopf;

namespace {

Element rand_elem(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Element e(n);
    for (int i = 0; i < n; ++i) e[i] = dist(rng);
    return e;
}

// e_mu (1-based imaginary unit index).
Element em(int n, int mu) { return Element::unit(n, mu); }

} // namespace

TEST_CASE("structure table dimensions and entries") {
    CHECK_THROWS_AS(structure_table(3), DimensionError);
    CHECK_THROWS_AS(structure_table(0), DimensionError);

    for (int n : {1, 2}) {
        const StructureTable& C = structure_table(n);
        for (int a = 0; a < n - 1; ++a)
            for (int b = 0; b < n - 1; ++b)
                for (int c = 0; c < n - 1; ++c) CHECK(C(a, b, c) == 0.0);
    }

    const StructureTable& C4 = structure_table(4);
    CHECK(C4(0, 1, 2) == 1.0); // (1,2,3) -> +1
    CHECK(C4(1, 0, 2) == -1.0);
    CHECK(C4(0, 0, 2) == 0.0);

    const StructureTable& C8 = structure_table(8);
    CHECK(C8(0, 1, 2) == 1.0);  // C_123
    CHECK(C8(1, 0, 2) == -1.0); // (2,1,3) -> -1
    CHECK(C8(0, 3, 6) == 1.0);  // C_147
    CHECK(C8(0, 5, 4) == 1.0);  // C_165
    CHECK(C8(1, 3, 5) == 1.0);  // C_246
    CHECK(C8(1, 4, 6) == 1.0);  // C_257
    CHECK(C8(2, 4, 3) == 1.0);  // C_354
    CHECK(C8(2, 5, 6) == 1.0);  // C_367
    CHECK(C8(0, 1, 3) == 0.0);
    // Full antisymmetry over all index pairs.
    for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b)
            for (int c = 0; c < 7; ++c) {
                CHECK(C8(a, b, c) == -C8(b, a, c));
                CHECK(C8(a, b, c) == -C8(a, c, b));
            }
}

TEST_CASE("multiply: defining relations and table entries") {
    CHECK(norm(multiply(em(2, 1), em(2, 1)) + Element::one(2)) == 0.0); // e1 e1 = -1
    CHECK(norm(multiply(em(8, 1), em(8, 2)) - em(8, 3)) == 0.0);        // e1 e2 = e3
    CHECK(norm(multiply(em(8, 2), em(8, 5)) - em(8, 7)) == 0.0);        // e2 e5 = e7

    std::mt19937_64 rng = trial_rng(kDefaultSeed, 1);
    for (int n : {1, 2, 4, 8}) {
        const Element x = rand_elem(rng, n);
        CHECK(norm(multiply(Element::one(n), x) - x) == 0.0);
        CHECK(norm(multiply(x, Element::one(n)) - x) == 0.0);
    }
    CHECK_THROWS_AS(multiply(Element::one(2), Element::one(4)), DimensionError);
}

TEST_CASE("conjugate and norm") {
    Element x = Element::one(2) + em(2, 1);
    Element c = conjugate(x);
    CHECK(c.re() == 1.0);
    CHECK(c[0] == -1.0);

    Element y(8);
    y[7] = 3.0;
    y[0] = 4.0;
    CHECK(norm(y) == doctest::Approx(5.0).epsilon(1e-15));

    std::mt19937_64 rng = trial_rng(kDefaultSeed, 2);
    for (int n : {1, 2, 4, 8}) {
        const Element a = rand_elem(rng, n), b = rand_elem(rng, n);
        const Element prod = multiply(a, conjugate(a));
        for (int i = 0; i < n - 1; ++i) CHECK(std::abs(prod[i]) < 1e-12);
        CHECK(prod.re() == doctest::Approx(norm(a) * norm(a)).epsilon(1e-12));
        CHECK(norm(conjugate(conjugate(a)) - a) == 0.0);
        // conjugate(xy) = conjugate(y) conjugate(x)
        CHECK(norm(conjugate(multiply(a, b)) - multiply(conjugate(b), conjugate(a))) <
              1e-12);
    }
}

TEST_CASE("divide") {
    std::mt19937_64 rng = trial_rng(kDefaultSeed, 3);
    for (int n : {1, 2, 4, 8}) {
        Element x = rand_elem(rng, n);
        CHECK(norm(divide(x, x) - Element::one(n)) < 1e-12);
    }
    CHECK(norm(divide(em(8, 3), em(8, 2)) - em(8, 1)) < 1e-15);
    // n=4: (1+e1)/e2 = (1+e1)(-e2)
    const Element lhs = divide(Element::one(4) + em(4, 1), em(4, 2));
    const Element rhs = multiply(Element::one(4) + em(4, 1), -em(4, 2));
    CHECK(norm(lhs - rhs) < 1e-15);

    Element zero(4);
    CHECK_THROWS_AS(divide(Element::one(4), zero), DivisionByZero);

    // multiply(divide(x,y), y) = x for random pairs, all n.
    for (int n : {1, 2, 4, 8})
        for (int t = 0; t < 50; ++t) {
            std::mt19937_64 r2 = trial_rng(kDefaultSeed, 100 + t);
            const Element x = rand_elem(r2, n);
            Element y = rand_elem(r2, n);
            while (norm(y) < 0.1) y = rand_elem(r2, n);
            CHECK(norm(multiply(divide(x, y), y) - x) < 1e-12 * std::max(norm(x), 1.0));
        }
}

TEST_CASE("associator and alternativity") {
    std::mt19937_64 rng = trial_rng(kDefaultSeed, 4);
    for (int n : {1, 2, 4}) {
        const Element a = rand_elem(rng, n), b = rand_elem(rng, n), c = rand_elem(rng, n);
        CHECK(norm(associator(a, b, c)) < 1e-12);
    }
    // Witness: [e1, e2, e4] = -2 e5, exact in the float table.
    CHECK(norm(associator(em(8, 1), em(8, 2), em(8, 4)) + em(8, 5) * 2.0) == 0.0);
    for (int t = 0; t < 100; ++t) {
        std::mt19937_64 r2 = trial_rng(kDefaultSeed, 200 + t);
        const Element x = rand_elem(r2, 8), y = rand_elem(r2, 8);
        CHECK(norm(associator(x, x, y)) < 1e-12);
        CHECK(norm(associator(x, y, y)) < 1e-12);
        CHECK(norm(associator(x, y, x)) < 1e-12);
    }
}

TEST_CASE("commutativity only for n <= 2, norm composition") {
    std::mt19937_64 rng = trial_rng(kDefaultSeed, 5);
    for (int n : {1, 2}) {
        const Element a = rand_elem(rng, n), b = rand_elem(rng, n);
        CHECK(norm(multiply(a, b) - multiply(b, a)) < 1e-15);
    }
    CHECK(norm(multiply(em(4, 1), em(4, 2)) - multiply(em(4, 2), em(4, 1))) > 1.0);

    for (int n : {1, 2, 4, 8})
        for (int t = 0; t < 100; ++t) {
            std::mt19937_64 r2 = trial_rng(kDefaultSeed, 300 + t);
            const Element x = rand_elem(r2, n), y = rand_elem(r2, n);
            CHECK(std::abs(norm(multiply(x, y)) - norm(x) * norm(y)) <=
                  1e-12 * std::max(norm(x) * norm(y), 1e-12));
        }
}

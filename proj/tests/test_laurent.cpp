#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "canbase/laurent.hpp"
#include "canbase/ratfunc.hpp"

using namespace canbase;

namespace {

LaurentPoly q(int e = 1) { return LaurentPoly::q(e); }

LaurentPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(0, 5), exp(-5, 5), coeff(-9, 9);
    LaurentPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) p.add_term(exp(rng), coeff(rng));
    return p;
}

}  // namespace

TEST_CASE("bar negates exponents") {
    CHECK(bar(q()) == q(-1));
    CHECK(bar(LaurentPoly()) == LaurentPoly());
    LaurentPoly p = LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(3, 2);
    LaurentPoly expected = LaurentPoly::monomial(2, 1) + LaurentPoly::monomial(3, -2);
    CHECK(bar(p) == expected);
    CHECK(bar(bar(p)) == p);
}

TEST_CASE("solve_skew returns the positive part") {
    CHECK(solve_skew(q() - q(-1)) == q());
    CHECK(solve_skew(LaurentPoly()) == LaurentPoly());
    CHECK(solve_skew(LaurentPoly::monomial(2, 3) - LaurentPoly::monomial(2, -3)) ==
          LaurentPoly::monomial(2, 3));
}

TEST_CASE("solve_skew rejects bad input") {
    CHECK_THROWS_AS(solve_skew(q()), SkewViolation);
    CHECK_THROWS_AS(solve_skew(q() + q(-1)), SkewViolation);
    CHECK_THROWS_AS(solve_skew(LaurentPoly(1) + q() - q(-1)), ConstantTermObstruction);
}

TEST_CASE("is_nonneg tests membership in N[q]") {
    CHECK(is_nonneg(q() + 1));
    CHECK_FALSE(is_nonneg(q(-1)));
    CHECK_FALSE(is_nonneg(q() - q(2)));
    CHECK(is_nonneg(LaurentPoly()));
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(20240ul);
    for (int trial = 0; trial < 200; ++trial) {
        LaurentPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("bar is a ring automorphism") {
    std::mt19937 rng(4321ul);
    for (int trial = 0; trial < 200; ++trial) {
        LaurentPoly a = random_poly(rng), b = random_poly(rng);
        CHECK(bar(a * b) == bar(a) * bar(b));
        CHECK(bar(a + b) == bar(a) + bar(b));
    }
}

TEST_CASE("solve_skew inverts p - bar(p) on qZ[q]") {
    std::mt19937 rng(99ul);
    std::uniform_int_distribution<int> nterms(0, 5), exp(1, 6), coeff(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        LaurentPoly p;
        int n = nterms(rng);
        for (int i = 0; i < n; ++i) p.add_term(exp(rng), coeff(rng));
        CHECK(solve_skew(p - bar(p)) == p);
    }
}

TEST_CASE("canonical text form") {
    LaurentPoly p = LaurentPoly::monomial(2, -1) + LaurentPoly(3) + q(2);
    CHECK(p.to_string() == "2q^-1 + 3 + q^2");
    CHECK(LaurentPoly().to_string() == "0");
    CHECK((q() - q(3)).to_string() == "q - q^3");
    CHECK((-q() + 1).to_string() == "1 - q");
    CHECK(LaurentPoly::parse("2q^-1 + 3 + q^2") == p);
    CHECK(LaurentPoly::parse("0") == LaurentPoly());
    CHECK(LaurentPoly::parse("-q + 1") == LaurentPoly(1) - q());
    std::mt19937 rng(7ul);
    for (int trial = 0; trial < 100; ++trial) {
        LaurentPoly a = random_poly(rng);
        CHECK(LaurentPoly::parse(a.to_string()) == a);
    }
}

TEST_CASE("exact Laurent division") {
    LaurentPoly a = (q() + 1) * (q(-2) - LaurentPoly(3));
    auto d = try_divide_exact(a, q() + 1);
    REQUIRE(d.has_value());
    CHECK(*d == q(-2) - LaurentPoly(3));
    CHECK_FALSE(try_divide_exact(q() + 1, q() + 2).has_value());
    CHECK_FALSE(try_divide_exact(q(), LaurentPoly(2)).has_value());
    CHECK(try_divide_exact(LaurentPoly(), q() + 1).has_value());
}

TEST_CASE("RatFunc equality by cross multiplication") {
    RatFunc half(q() + 1, (q() + 1) * (q() + 1));
    RatFunc direct(LaurentPoly(1), q() + 1);
    CHECK(half == direct);
    CHECK(RatFunc(q()) != RatFunc(q(-1)));
    RatFunc x(q() * (q() + 1), q() + 1);
    CHECK(x.is_laurent());
    CHECK(x.to_laurent() == q());
}

TEST_CASE("RatFunc field arithmetic") {
    std::mt19937 rng(11ul);
    for (int trial = 0; trial < 50; ++trial) {
        LaurentPoly na = random_poly(rng), nb = random_poly(rng);
        LaurentPoly da = random_poly(rng), db = random_poly(rng);
        if (da.is_zero()) da = q() + 1;
        if (db.is_zero()) db = q(-1) + 2;
        RatFunc a(na, da), b(nb, db);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == RatFunc());
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
    RatFunc f(q() - q(-1), q() + q(-1));
    CHECK(f.inverse() * f == RatFunc(1));
    CHECK_THROWS_AS(RatFunc(q(), LaurentPoly()), Error);
    CHECK_THROWS_AS(RatFunc(LaurentPoly(1), q() + 1).to_laurent(), NonLaurentCoefficient);
}

TEST_CASE("linear solve over the fraction field") {
    // [ q 1 ] [x]   [ 1 ]
    // [ 1 1 ] [y] = [ 0 ]
    RatMatrix a = {{RatFunc(q()), RatFunc(1)}, {RatFunc(1), RatFunc(1)}};
    auto x = solve_linear(a, {RatFunc(1), RatFunc(0)});
    REQUIRE(x.has_value());
    RatFunc det(q() - LaurentPoly(1));
    CHECK((*x)[0] == RatFunc(LaurentPoly(1), q() - LaurentPoly(1)));
    CHECK((*x)[1] == -(*x)[0]);
    // inconsistent
    RatMatrix b = {{RatFunc(1), RatFunc(1)}, {RatFunc(1), RatFunc(1)}};
    CHECK_FALSE(solve_linear(b, {RatFunc(1), RatFunc(0)}).has_value());
    // underdetermined
    RatMatrix c = {{RatFunc(1), RatFunc(1)}};
    CHECK_THROWS_AS(solve_linear(c, {RatFunc(1)}), NonUniqueSolution);
}

TEST_CASE("row span tracks membership") {
    RowSpan span(3);
    CHECK(span.insert({RatFunc(1), RatFunc(q()), RatFunc(0)}));
    CHECK(span.insert({RatFunc(0), RatFunc(1), RatFunc(1)}));
    CHECK_FALSE(span.insert({RatFunc(2), RatFunc(q() * LaurentPoly(2) + 2), RatFunc(2)}));
    CHECK(span.dim() == 2);
    CHECK(span.contains({RatFunc(1), RatFunc(q() + 1), RatFunc(1)}));
    CHECK_FALSE(span.contains({RatFunc(0), RatFunc(0), RatFunc(1)}));
}

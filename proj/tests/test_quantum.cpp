#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fanoqc/errors.hpp"
#include "fanoqc/quantum.hpp"

#include <map>

using namespace fanoqc;

namespace {

// {(j, d) -> coeff} with every unlisted slot zero
void check_product(QuantumRing& ring, int a, int b,
                   const std::map<std::pair<int, int>, Rational>& expect) {
    const auto& prod = ring.product(a, b);
    const int r = ring.target().r;
    const int dm = ring.target().d_max;
    for (int j = 0; j <= r; ++j)
        for (int d = 0; d <= dm; ++d) {
            auto it = expect.find({j, d});
            Rational want = it == expect.end() ? Rational(0) : it->second;
            INFO("H^", a, " * H^", b, " at H^", j, " q^", d);
            CHECK(prod[static_cast<std::size_t>(j)][d] == want);
        }
}

} // namespace

TEST_CASE("q-series arithmetic") {
    QSeries a(3, Rational(1));
    a[1] = 2;
    QSeries b(3);
    b[1] = 3;
    QSeries p = a * b;
    CHECK(p[0] == 0);
    CHECK(p[1] == 3);
    CHECK(p[2] == 6);
    CHECK(p[3] == 0);
    CHECK((a + b)[1] == 5);
    CHECK((a - b)[1] == -1);
    CHECK_THROWS_AS(a + QSeries(2), QueryError);

    // the window really truncates: q^2 * q^2 drops off the end of d_max 3
    QSeries q2(3);
    q2[2] = 1;
    CHECK((q2 * q2).is_zero());
}

TEST_CASE("quintic quantum multiplication table") {
    OnePointTable one(validate_target(6, {5}));
    TwoPointTable two(one);
    QuantumRing ring(two);

    check_product(ring, 1, 0, {{{1, 0}, 1}});
    check_product(ring, 1, 1, {{{2, 0}, 1}, {{0, 1}, 120}});
    check_product(ring, 1, 2, {{{3, 0}, 1}, {{1, 1}, 770}});
    check_product(ring, 1, 3, {{{4, 0}, 1}, {{2, 1}, 1345}, {{0, 2}, 211200}});
    check_product(ring, 1, 4, {{{5, 0}, 1}, {{3, 1}, 770}, {{1, 2}, 692500}});
    check_product(ring, 1, 5, {{{4, 1}, 120}, {{2, 2}, 211200}, {{0, 3}, 31320000}});

    // forced by associativity: H^2*H^2 = H*(H*H^2) - 120q H^2
    check_product(ring, 2, 2, {{{4, 0}, 1}, {{2, 1}, 1995}, {{0, 2}, 303600}});

    // the multiplication matrix exposes the same numbers directly
    const QuantumMatrix& m = ring.mult_by_H();
    CHECK(m.e[2][1][0] == 1);
    CHECK(m.e[0][1][1] == 120);
    CHECK(m.e[1][4][2] == 692500);
    CHECK(m.e[0][5][3] == 31320000);
}

TEST_CASE("projective space is the clock ring Q[H,q]/(H^{n+1} - q)") {
    for (int n = 2; n <= 6; ++n) {
        Target t = validate_target(n, {});
        OnePointTable one(t);
        TwoPointTable two(one);
        QuantumRing ring(two);
        REQUIRE(t.d_max == 1);
        for (int a = 0; a <= n; ++a)
            for (int b = 0; b <= n; ++b) {
                std::map<std::pair<int, int>, Rational> expect;
                if (a + b <= n)
                    expect[{a + b, 0}] = 1;
                else
                    expect[{a + b - n - 1, 1}] = 1;
                INFO("P^", n);
                check_product(ring, a, b, expect);
            }
    }
}

TEST_CASE("commutativity, associativity and Frobenius pairing on the quintic") {
    Target t = validate_target(6, {5});
    OnePointTable one(t);
    TwoPointTable two(one);
    QuantumRing ring(two);
    const int r = t.r;

    // z * H^c for a coefficient vector z in the classical basis
    auto mult_basis = [&](const std::vector<QSeries>& z, int c) {
        std::vector<QSeries> acc(static_cast<std::size_t>(r) + 1, QSeries(t.d_max));
        for (int j = 0; j <= r; ++j) {
            const auto& pj = ring.product(j, c);
            for (int i = 0; i <= r; ++i)
                acc[static_cast<std::size_t>(i)] +=
                    pj[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(j)];
        }
        return acc;
    };

    for (int a = 0; a <= r; ++a)
        for (int b = a; b <= r; ++b) CHECK(ring.product(a, b) == ring.product(b, a));

    for (auto [a, b, c] : {std::tuple<int, int, int>{1, 2, 3}, {2, 2, 2}, {3, 4, 5}}) {
        INFO("(", a, ", ", b, ", ", c, ")");
        CHECK(mult_basis(ring.product(a, b), c) == mult_basis(ring.product(b, c), a));
    }

    // Frobenius: the H^{r-c} coefficient of H^a*H^b is symmetric under
    // rotating (a, b, c), because both compute <H^a, H^b, H^c> / L
    for (int a = 0; a <= r; ++a)
        for (int b = 0; b <= r; ++b)
            for (int c = 0; c <= r; ++c)
                CHECK(ring.product(a, b)[static_cast<std::size_t>(r - c)] ==
                      ring.product(b, c)[static_cast<std::size_t>(r - a)]);
}

TEST_CASE("curves through two generic points") {
    OnePointTable one(validate_target(6, {5}));
    TwoPointTable two(one);
    QuantumRing ring(two);
    CHECK(ring.two_point_count(3) == 2088000); // twisted cubics on the quintic
    CHECK_THROWS_AS(ring.two_point_count(1), QueryError);
    CHECK_THROWS_AS(ring.two_point_count(2), QueryError);

    OnePointTable p4(validate_target(4, {}));
    TwoPointTable p4two(p4);
    QuantumRing p4ring(p4two);
    CHECK(p4ring.two_point_count(1) == 1);
}

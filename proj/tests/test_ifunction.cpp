#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fanoqc/errors.hpp"
#include "fanoqc/ifunction.hpp"
#include "fanoqc/target.hpp"

#include <vector>

using namespace fanoqc;

namespace {

Rational rq(const char* s) { return rational_from_string(s); }

std::vector<Rational> rv(std::initializer_list<const char*> parts) {
    std::vector<Rational> out;
    for (const char* p : parts) out.push_back(rq(p));
    return out;
}

} // namespace

/* Expected vectors frozen from scripts/i_function_expansion.py, which expands
 * the same hypergeometric product with Python fractions and no shared code.
 * Run `python3 scripts/i_function_expansion.py --check` to re-derive them. */
TEST_CASE("i-function expansion matches the independent script") {
    Target quintic = validate_target(6, {5});
    CHECK(i_function_vector(quintic, 1) ==
          rv({"120", "530", "-605", "-470", "2620", "-5240"}));
    CHECK(i_function_vector(quintic, 2) ==
          rv({"28350", "470025/4", "-2906325/16", "-1370125/16", "5592425/8",
              "-11564525/8"}));
    CHECK(i_function_vector(quintic, 3) ==
          rv({"14014000/3", "473957750/27", "-3000931250/81", "-1851649375/1944",
              "1379243086375/11664", "-9946229433875/34992"}));

    CHECK(i_function_vector(validate_target(2, {}), 1) == rv({"1", "-3", "6"}));
    CHECK(i_function_vector(validate_target(4, {}), 1) ==
          rv({"1", "-5", "15", "-35", "70"}));

    Target cubic = validate_target(5, {3});
    CHECK(i_function_vector(cubic, 1) == rv({"6", "-3", "-18", "60", "-120"}));
    CHECK(i_function_vector(cubic, 2) ==
          rv({"45/4", "-297/16", "-18", "567/4", "-378"}));

    CHECK(i_function_vector(validate_target(8, {2, 5}), 1) ==
          rv({"240", "1300", "-390", "-2970", "6330", "-6330", "0"}));
}

TEST_CASE("one-point invariants read off the vector at the forced dimension") {
    OnePointTable one(validate_target(6, {5}));
    // i + c = r + f d - 2 = 5 at d = 1
    CHECK(one.one_point(5, 0, 1) == 600);  // 5 * 120
    CHECK(one.one_point(4, 1, 1) == 2650); // 5 * 530
    CHECK(one.one_point(0, 5, 1) == Rational(-26200));
    // off the dimension the invariant vanishes
    CHECK(one.one_point(3, 1, 1) == 0);
    CHECK(one.one_point(5, 0, 2) == 0);
    // i + c = 5 + 2*2 - 2 = 7 at d = 2
    CHECK(one.one_point(5, 2, 2) == 5 * 28350);
    CHECK(one.one_point(3, 4, 2) == rq("-14531625/16")); // 5 * (-2906325/16)

    OnePointTable p4(validate_target(4, {}));
    CHECK(p4.one_point(4, 3, 1) == 1);
    CHECK(p4.one_point(3, 4, 1) == -5);
    CHECK(p4.one_point(2, 5, 1) == 15);

    CHECK_THROWS_AS(one.one_point(5, 0, 0), QueryError);
    CHECK_THROWS_AS(one.one_point(5, 0, -1), QueryError);
    CHECK_THROWS_AS(one.one_point(-1, 6, 1), QueryError);
    CHECK_THROWS_AS(one.one_point(6, -1, 1), QueryError);
}

TEST_CASE("a linear factor in the defining degrees is inert") {
    // X(1, 5) in P^7 is the quintic in P^6 cut differently; every vector and
    // every invariant must agree.
    OnePointTable a(validate_target(6, {5}));
    OnePointTable b(validate_target(7, {1, 5}));
    for (int d = 1; d <= 3; ++d) CHECK(a.v(d) == b.v(d));
    CHECK(a.one_point(5, 0, 1) == b.one_point(5, 0, 1));
    CHECK(a.one_point(3, 4, 2) == b.one_point(3, 4, 2));
}

TEST_CASE("memoized vectors are shared, snapshot reports what was computed") {
    OnePointTable one(validate_target(6, {5}));
    CHECK(one.snapshot().empty());
    one.v(2);
    one.v(1);
    auto snap = one.snapshot();
    CHECK(snap.size() == 2);
    CHECK(snap.at(1) == one.v(1));
    CHECK(snap.at(2) == one.v(2));
    CHECK(&one.v(1) == &one.v(1)); // stable reference, computed once
}

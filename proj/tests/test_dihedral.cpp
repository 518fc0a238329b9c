#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "dunkl/dihedral.hpp"

using namespace dunkl;

TEST_CASE("make_system derives the canonical fields") {
    const DihedralSystem s6 = make_system(6, 1.0, 1.0);
    CHECK(s6.p == 3);
    CHECK(s6.gamma == doctest::Approx(6.0));
    CHECK(s6.group_order == 12);
    CHECK(s6.chamber_angle == doctest::Approx(std::numbers::pi / 6.0));

    const DihedralSystem s5 = make_system(5, 0.7);
    CHECK(s5.p == 5);
    CHECK(s5.gamma == doctest::Approx(3.5));
    CHECK(s5.k1 == 0.0);
    CHECK(s5.l1 == doctest::Approx(-0.5));

    const DihedralSystem s4 = make_system(4, 0.0, 0.0);
    CHECK(s4.gamma == 0.0);

    CHECK_THROWS_AS(make_system(5, 0.7, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(make_system(4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_system(2, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_system(4, -0.1, 0.5), std::domain_error);
}

TEST_CASE("weight values at exact trigonometric points") {
    const DihedralSystem s5 = make_system(5, 1.0);
    // symmetry axis of the odd chamber: sin(n theta) = 1
    CHECK(weight(s5, {1.0, std::numbers::pi / 10.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(weight(s5, {1.0, 0.0}) == 0.0);

    const DihedralSystem s4 = make_system(4, 1.0, 1.0);
    CHECK(weight(s4, {1.0, std::numbers::pi / 8.0}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(weight(s4, {1.0, 1.0}), std::domain_error);
}

TEST_CASE("weight homogeneity of degree gamma") {
    const DihedralSystem s = make_system(6, 0.8, 1.3);
    for (double lam : {0.5, 2.0, 7.3}) {
        for (int i = 1; i < 6; ++i) {
            const double th = s.chamber_angle * i / 6.0;
            const double lhs = weight(s, {lam * 1.1, th});
            const double rhs = std::pow(lam, s.gamma) * weight(s, {1.1, th});
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
    // strictly positive inside the chamber when k0 + k1 > 0
    for (int i = 1; i < 8; ++i)
        CHECK(weight(s, {0.7, s.chamber_angle * i / 8.0}) > 0.0);
}

TEST_CASE("odd systems reduce to the even parameterization") {
    const DihedralSystem s5 = make_system(5, 0.7);
    // the weight must equal the even-form expression with (p, k0, k1) = (5, 0.7, 0)
    for (int i = 0; i <= 10; ++i) {
        const double th = s5.chamber_angle * i / 10.0;
        const double even_form =
            std::pow(1.3, 5.0 * 0.7) * std::pow(std::sin(5.0 * th), 0.7);
        CHECK(weight(s5, {1.3, th}) == doctest::Approx(even_form).epsilon(1e-13));
    }
}

TEST_CASE("JSON descriptor round-trip") {
    const DihedralSystem s = make_system(4, 1.0, 0.5);
    const DihedralSystem back = system_from_json(system_to_json(s));
    CHECK(back.n == s.n);
    CHECK(back.k0 == s.k0);
    CHECK(back.k1 == s.k1);
    const DihedralSystem odd = system_from_json("{\"n\":5,\"k0\":0.7}");
    CHECK(odd.p == 5);
    CHECK_THROWS(system_from_json("{\"n\":5,\"k0\":0.7,\"k1\":0.2}"));
}

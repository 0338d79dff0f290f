#include <random>

#include "doctest.h"
#include "iitaka/errors.hpp"
#include "iitaka/gallery.hpp"

using namespace iitaka;

TEST_CASE("double cover model geometry") {
    DoubleCoverModel dc;
    CurveModel line = CurveModel::projective_line();

    SUBCASE("sigma is symmetric under the factor swap") {
        std::mt19937_64 rng(71);
        std::uniform_int_distribution<long> c(-10, 10);
        for (int i = 0; i < 20; ++i) {
            CurvePoint a = CurvePoint::p1_affine(line, Rational(c(rng)));
            CurvePoint b = CurvePoint::p1_affine(line, Rational(c(rng)));
            CurvePoint x = CurvePoint::product(dc.source(), a, b);
            CurvePoint y = CurvePoint::product(dc.source(), b, a);
            CHECK(dc.sigma(x) == dc.sigma(y));
        }
    }
    SUBCASE("preimage counts: 2 off the conic, 1 on it, exactly") {
        std::mt19937_64 rng(73);
        std::uniform_int_distribution<long> c(-8, 8);
        int off = 0, on = 0;
        while (off < 20 || on < 20) {
            CurvePoint a = CurvePoint::p1_affine(line, Rational(c(rng)));
            CurvePoint b = CurvePoint::p1_affine(line, Rational(c(rng)));
            CurvePoint img = dc.sigma(CurvePoint::product(dc.source(), a, b));
            if (dc.on_branch_conic(img)) {
                CHECK(dc.preimage_count(img) == 1);
                ++on;
            } else {
                CHECK(dc.preimage_count(img) == 2);
                ++off;
            }
            // the diagonal always lands on the conic
            CurvePoint diag = dc.sigma(CurvePoint::product(dc.source(), a, a));
            CHECK(dc.on_branch_conic(diag));
        }
    }
    SUBCASE("the worked preimages of (1:5:6)") {
        CurvePoint t =
            CurvePoint::projective(dc.target(), {Rational(1), Rational(5), Rational(6)});
        auto pre = dc.rational_preimages(t);
        REQUIRE(pre.size() == 2);
        for (const auto& q : pre) CHECK(dc.sigma(q) == t);
        CHECK(pre[0].factor(0) == pre[1].factor(1));
        CHECK(pre[0].factor(1) == pre[1].factor(0));
    }
    SUBCASE("ramification point (1:2:1) has a double root") {
        CurvePoint t =
            CurvePoint::projective(dc.target(), {Rational(1), Rational(2), Rational(1)});
        CHECK(dc.on_branch_conic(t));
        auto pre = dc.rational_preimages(t);
        REQUIRE(pre.size() == 1);
        CHECK(pre[0].factor(0) == pre[0].factor(1));
    }
}

TEST_CASE("Euler quotient model") {
    CurveModel p2 = CurveModel::projective_space(2);
    SUBCASE("kernel codimension is m + 1 (exact rank computation)") {
        SampleGenerator gen(p2, 79);
        for (int m = 1; m <= 6; ++m) {
            EulerQuotientModel em(m);
            CurvePoint x = gen.next();
            CHECK(em.evaluation_codim(x) == m + 1);
        }
    }
    SUBCASE("kodaira points separate distinct points of P2") {
        EulerQuotientModel e1(1);
        SampleGenerator gen(p2, 83);
        for (int i = 0; i < 10; ++i) {
            CurvePoint a = gen.next(), b = gen.next();
            if (a == b) continue;
            CHECK_FALSE(e1.same_kodaira_point(a, b));
            CHECK(e1.same_kodaira_point(a, a));
        }
    }
}

TEST_CASE("torsion scenario") {
    SUBCASE("n = 2 passes every claim") {
        ScenarioVerdict v = run_torsion_example(2, 8);
        for (const auto& c : v.claims) {
            INFO(c.claim, ": expected ", c.expected, ", computed ", c.computed);
            CHECK(c.pass);
        }
        CHECK(v.all_pass());
    }
    SUBCASE("n = 3 on y^2 = x^3 + 1") {
        ScenarioVerdict v = run_torsion_example(3, 8);
        CHECK(v.all_pass());
    }
    SUBCASE("n = 6 saturates at m_max = 12 and honestly declines at 8") {
        CHECK(run_torsion_example(6, 12).all_pass());
        ScenarioVerdict tight = run_torsion_example(6, 8);
        CHECK_FALSE(tight.all_pass());
        for (const auto& c : tight.claims)
            if (!c.pass) CHECK(c.claim.find("stabilization certificate") != std::string::npos);
    }
    SUBCASE("n = 1 degenerate control is strongly semiample") {
        ScenarioVerdict v = run_torsion_example(1, 8);
        CHECK(v.all_pass());
    }
    SUBCASE("no catalogued curve") {
        CHECK_THROWS_AS(run_torsion_example(5, 8), std::invalid_argument);
    }
}

TEST_CASE("double cover scenario") {
    ScenarioVerdict v = run_double_cover_example(12, 5, 17);
    for (const auto& c : v.claims) {
        INFO(c.claim, ": expected ", c.expected, ", computed ", c.computed);
        CHECK(c.pass);
    }
    CHECK(v.all_pass());

    KodairaReport r = double_cover_kodaira_report(3, 5, 17);
    CHECK(r.k_xe == 2);
    CHECK(r.k_det == 2);
    CHECK(r.matches_det);
    REQUIRE(r.fi.has_value());
    CHECK(*r.fi == 2);
    for (const auto& rec : r.per_m) {
        CHECK(rec.image_dim == 2);
        REQUIRE(rec.fiber_deg.has_value());
        CHECK(*rec.fiber_deg == 2);
    }
}

TEST_CASE("euler scenario") {
    ScenarioVerdict v = run_euler_example(8, 17);
    for (const auto& c : v.claims) {
        INFO(c.claim, ": expected ", c.expected, ", computed ", c.computed);
        CHECK(c.pass);
    }
    CHECK(v.all_pass());
}

TEST_CASE("abelian criterion slice") {
    SUBCASE("elliptic cotangent is abelian-type at m = 1") {
        ScenarioVerdict v = abelian_check(CurveModel::elliptic(Rational(-1), Rational(0)), 4);
        CHECK(v.all_pass());
        bool found = false;
        for (const auto& c : v.claims)
            if (c.computed == "abelian-type (condition 4 holds)") found = true;
        CHECK(found);
    }
    SUBCASE("P1 cotangent fails with a named negative component") {
        ScenarioVerdict v = abelian_check(CurveModel::projective_line(), 4);
        CHECK(v.all_pass());
        bool named = false;
        for (const auto& c : v.claims)
            if (c.claim.find("certifying negative component") != std::string::npos &&
                c.computed == "named")
                named = true;
        CHECK(named);
    }
    SUBCASE("P1 x P1 cotangent fails for all m") {
        ScenarioVerdict v = abelian_check(CurveModel::product_p1p1(), 6);
        CHECK(v.all_pass());
        bool fails = false;
        for (const auto& c : v.claims)
            if (c.computed == "fails condition 4 within bound") fails = true;
        CHECK(fails);
    }
}

TEST_CASE("scenario verdicts are reproducible under a fixed seed") {
    ScenarioVerdict a = run_double_cover_example(6, 5, 99);
    ScenarioVerdict b = run_double_cover_example(6, 5, 99);
    REQUIRE(a.claims.size() == b.claims.size());
    for (std::size_t i = 0; i < a.claims.size(); ++i) {
        CHECK(a.claims[i].claim == b.claims[i].claim);
        CHECK(a.claims[i].computed == b.claims[i].computed);
    }
}

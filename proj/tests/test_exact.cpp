#include <random>

#include "doctest.h"
#include "iitaka/matrix.hpp"
#include "iitaka/polynomial.hpp"
#include "iitaka/power_series.hpp"
#include "iitaka/errors.hpp"
#include "iitaka/rational.hpp"

using namespace iitaka;

namespace {

Rational rnd_rational(std::mt19937_64& rng, long span = 9) {
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<long> den(1, span);
    return Rational(num(rng), den(rng));
}

Polynomial rnd_poly(std::mt19937_64& rng, int max_deg, long span = 5) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    int d = deg(rng);
    std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
    for (auto& x : c) x = rnd_rational(rng, span);
    if (c.back().is_zero()) c.back() = Rational(1);
    return Polynomial(std::move(c));
}

// independent determinant oracle: recursive cofactor expansion
Rational cofactor_det(const RationalMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    if (n == 1) return m.at(0, 0);
    Rational acc(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        RationalMatrix sub(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                sub.at(i - 1, cc++) = m.at(i, k);
            }
        }
        Rational term = m.at(0, j) * cofactor_det(sub);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

}  // namespace

TEST_CASE("rational arithmetic is exact") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        std::uniform_int_distribution<long> num(-50, 50);
        std::uniform_int_distribution<long> den(1, 50);
        long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
        Rational lhs = (Rational(a, b) + Rational(c, d)) * Rational(b * d);
        CHECK(lhs == Rational(a * d + c * b));
    }
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(3, -6).den() == 2);
    CHECK(Rational(3, -6).num() == -1);
    CHECK_THROWS_AS(Rational(1, 2).inverse() / Rational(0), std::invalid_argument);
}

TEST_CASE("poly_gcd matches hand-checked cases") {
    Polynomial t = Polynomial::x();
    SUBCASE("shared root") {
        Polynomial a{Rational(-1), Rational(0), Rational(1)};  // t^2 - 1
        Polynomial b{Rational(-1), Rational(1)};               // t - 1
        CHECK(poly_gcd(a, b) == b);
    }
    SUBCASE("gcd with zero") {
        CHECK(poly_gcd(t, Polynomial{}) == t);
        CHECK(poly_gcd(Polynomial{}, Polynomial{}) == Polynomial{});
    }
    SUBCASE("rational-root oracle") {
        // t^2-5t+6 has roots {2,3}, t^2-4t+4 has roots {2,2}: shared root 2
        Polynomial a{Rational(6), Rational(-5), Rational(1)};
        Polynomial b{Rational(4), Rational(-4), Rational(1)};
        auto ra = rational_roots(a);
        auto rb = rational_roots(b);
        REQUIRE(ra.size() == 2);
        REQUIRE(rb.size() == 1);
        CHECK(rb[0].first == Rational(2));
        CHECK(rb[0].second == 2);
        CHECK(poly_gcd(a, b) == Polynomial{Rational(-2), Rational(1)});
    }
}

TEST_CASE("squarefree_part counts distinct roots") {
    Polynomial lin{Rational(-1), Rational(1)};
    CHECK(squarefree_part(lin * lin) == lin);
    Polynomial a{Rational(6), Rational(-5), Rational(1)};
    CHECK(squarefree_part(a) == a);  // discriminant 1 != 0
    CHECK(squarefree_part(Polynomial::monomial(3)) == Polynomial::x());
    CHECK_THROWS_AS(squarefree_part(Polynomial{}), std::invalid_argument);
}

TEST_CASE("squarefree degree identity on random coprime pairs") {
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 30) {
        Polynomial p = rnd_poly(rng, 3), q = rnd_poly(rng, 3);
        if (p.degree() < 1 || q.degree() < 1) continue;
        if (poly_gcd(p, q).degree() != 0) continue;
        ++done;
        CHECK(squarefree_part(p * p * q).degree() == squarefree_part(p * q).degree());
    }
}

TEST_CASE("matrix_rank basics and transpose invariance") {
    CHECK(matrix_rank(RationalMatrix::identity(3)) == 3);
    CHECK(matrix_rank(RationalMatrix(2, 5)) == 0);
    RationalMatrix prop(3, 2, {Rational(1), Rational(2), Rational(2), Rational(4), Rational(3),
                               Rational(6)});
    CHECK(matrix_rank(prop) == 1);

    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> dim(1, 8);
    for (int i = 0; i < 40; ++i) {
        RationalMatrix m(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = rnd_rational(rng, 4);
        CHECK(matrix_rank(m) == matrix_rank(m.transpose()));
    }
}

TEST_CASE("maximal_minors against the cofactor oracle") {
    RationalMatrix a(1, 2, {Rational(3), Rational(4)});
    CHECK(maximal_minors(a) == std::vector<Rational>{Rational(3), Rational(4)});
    CHECK(maximal_minors(RationalMatrix::identity(2)) == std::vector<Rational>{Rational(1)});

    RationalMatrix b(2, 3, {Rational(1), Rational(0), Rational(1), Rational(0), Rational(1),
                            Rational(1)});
    CHECK(maximal_minors(b) == std::vector<Rational>{Rational(1), Rational(1), Rational(-1)});

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<std::size_t> rr(1, 3), cc(3, 5);
        std::size_t r = rr(rng), c = cc(rng);
        RationalMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rnd_rational(rng, 4);
        auto fast = maximal_minors(m);
        // oracle: enumerate subsets in the same lexicographic order
        std::vector<std::size_t> sel(r);
        for (std::size_t i = 0; i < r; ++i) sel[i] = i;
        std::size_t idx = 0;
        while (true) {
            CHECK(fast.at(idx) == cofactor_det(m.select_columns(sel)));
            ++idx;
            std::size_t i = r;
            while (i > 0 && sel[i - 1] == c - r + i - 1) --i;
            if (i == 0) break;
            ++sel[i - 1];
            for (std::size_t j = i; j < r; ++j) sel[j] = sel[j - 1] + 1;
        }
        CHECK(idx == fast.size());
    }
}

TEST_CASE("resultant detects common roots") {
    Polynomial tm1{Rational(-1), Rational(1)}, tp1{Rational(1), Rational(1)};
    Rational r = resultant(tm1, tp1);
    CHECK(!r.is_zero());
    CHECK(r.abs() == Rational(2));
    CHECK(resultant(tm1, tm1).is_zero());
    CHECK(resultant(Polynomial::monomial(2), Polynomial{Rational(3), Rational(1)}) == Rational(9));
    CHECK_THROWS_AS(resultant(Polynomial{}, tm1), std::invalid_argument);
}

TEST_CASE("resultant vanishes iff gcd is nonconstant (random degree <= 6)") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 60; ++i) {
        Polynomial a = rnd_poly(rng, 6), b = rnd_poly(rng, 6);
        if (a.is_zero() || b.is_zero()) continue;
        bool res_zero = resultant(a, b).is_zero();
        bool share = poly_gcd(a, b).degree() >= 1;
        CHECK(res_zero == share);
    }
    // engineered shared-root pairs to hit the vanishing branch
    for (int i = 0; i < 20; ++i) {
        Polynomial common{rnd_rational(rng, 3), Rational(1)};
        Polynomial a = common * rnd_poly(rng, 2);
        Polynomial b = common * rnd_poly(rng, 2);
        CHECK(resultant(a, b).is_zero());
    }
}

TEST_CASE("kernel and solve round trips") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        std::uniform_int_distribution<std::size_t> rr(1, 5), cc(1, 6);
        RationalMatrix m(rr(rng), cc(rng));
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = rnd_rational(rng, 3);
        RationalMatrix k = kernel_basis(m);
        CHECK(k.cols() == m.cols() - matrix_rank(m));
        CHECK((m * k).is_zero());
    }
}

TEST_CASE("power series inverse, sqrt, and polynomial evaluation") {
    PowerSeries u = PowerSeries::from_polynomial(Polynomial{Rational(1), Rational(2), Rational(3)}, 8);
    PowerSeries prod = u * u.inverse();
    CHECK(prod.coeff(0) == Rational(1));
    for (std::size_t i = 1; i < 8; ++i) CHECK(prod.coeff(i).is_zero());

    PowerSeries arg = PowerSeries::from_polynomial(Polynomial{Rational(4), Rational(1)}, 8);
    PowerSeries rt = arg.sqrt_with(Rational(2));
    PowerSeries sq = rt * rt;
    for (std::size_t i = 0; i < 8; ++i) CHECK(sq.coeff(i) == arg.coeff(i));

    LaurentSeries x(-2, PowerSeries::constant(Rational(1), 6));
    LaurentSeries p = poly_eval_laurent(Polynomial{Rational(0), Rational(0), Rational(1)}, x);
    CHECK(p.valuation() == -4);  // x^2 has a pole of order 4
    LaurentSeries q = p / x;
    CHECK(q.valuation() == -2);
}

TEST_CASE("series edge cases") {
    CHECK_THROWS_AS(PowerSeries::constant(Rational(0), 4).inverse(), std::invalid_argument);
    CHECK_THROWS_AS(PowerSeries::constant(Rational(2), 4).sqrt_with(Rational(1)),
                    std::invalid_argument);

    LaurentSeries zero(0, PowerSeries::constant(Rational(0), 4));
    CHECK(zero.known_zero());
    CHECK_THROWS_AS(zero.valuation(), precision_error);
    LaurentSeries one(0, PowerSeries::constant(Rational(1), 4));
    CHECK_THROWS_AS(one / zero, precision_error);

    PowerSeries up = PowerSeries::from_polynomial(Polynomial{Rational(3)}, 5).shifted_up(2);
    CHECK(up.coeff(2) == Rational(3));
    CHECK(up.coeff(0).is_zero());
    CHECK(up.valuation() == 2);
}

TEST_CASE("polynomial division and lcm") {
    Polynomial a{Rational(2), Rational(0), Rational(1)};  // t^2 + 2
    Polynomial b{Rational(1), Rational(1)};               // t + 1
    auto [q, r] = Polynomial::divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    CHECK_THROWS_AS(Polynomial::divmod(a, Polynomial{}), std::invalid_argument);

    Polynomial l = poly_lcm(a * b, b);
    CHECK((l % b).is_zero());
    CHECK((l % a).is_zero());
    CHECK(l.degree() == 3);
}

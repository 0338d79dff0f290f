#include "doctest.h"
#include "iitaka/bott.hpp"

using namespace iitaka;

TEST_CASE("weight convention pins") {
    // these three vectors fix the convention; everything else builds on them
    SUBCASE("h0(Q) = dim V = 3") {
        CohomologyTable t = bott_cohomology(BottWeight(2, {1, 0}, 0));
        CHECK(t.h(0) == 3);
        CHECK(t.entries.size() == 1);
    }
    SUBCASE("S^m Q(-1) has no cohomology at all") {
        for (int m = 0; m <= 12; ++m) {
            CohomologyTable t = bott_cohomology(BottWeight(2, {m, 0}, 1));
            CHECK(t.all_zero());
        }
    }
    SUBCASE("h2(O(-3)) = 1") {
        CohomologyTable t = bott_cohomology(BottWeight(2, {0, 0}, 3));
        CHECK(t.h(2) == 1);
        CHECK(t.h(0) == 0);
    }
    SUBCASE("h0(O(k)) = (k+1)(k+2)/2") {
        for (long k = 0; k <= 10; ++k) {
            CohomologyTable t = bott_cohomology(BottWeight(2, {0, 0}, -k));
            CHECK(t.h(0) == (k + 1) * (k + 2) / 2);
        }
    }
}

TEST_CASE("weyl_dim closed forms") {
    CHECK(weyl_dim({1, 0, 0}) == 3);  // the standard representation
    for (long m = 0; m <= 12; ++m) CHECK(weyl_dim({m, 0, 0}) == (m + 1) * (m + 2) / 2);
    CHECK(weyl_dim({1, 1, 1}) == 1);  // determinant character
    CHECK(weyl_dim({2, 1, 0}) == 8);  // adjoint of sl3
    CHECK_THROWS_AS(weyl_dim({0, 1}), std::invalid_argument);
}

TEST_CASE("h0_sym_q_twist wrapper") {
    for (int m = 0; m <= 12; ++m) {
        CHECK(h0_sym_q_twist(2, m, 0) == (m + 1) * (m + 2) / 2);
        CHECK(h0_sym_q_twist(2, m, -1) == 0);
    }
    CHECK(h0_sym_q_twist(2, 1, 0) == 3);  // h0(Q) via the Euler sequence
}

TEST_CASE("vanishing h0 for every down-twist") {
    for (int m = 1; m <= 12; ++m)
        for (long j = 1; j <= 12; ++j) CHECK(h0_sym_q_twist(2, m, -j) == 0);
}

TEST_CASE("at most one nonzero degree, with nonnegative dimension") {
    for (int n = 1; n <= 4; ++n) {
        std::vector<long> a(static_cast<std::size_t>(n));
        // scan weakly decreasing a with entries in [-2, 2] and b in [-5, 5]
        auto scan = [&](auto&& self, int pos, long hi) -> void {
            if (pos == n) {
                for (long b = -5; b <= 5; ++b) {
                    CohomologyTable t = bott_cohomology(BottWeight(n, a, b));
                    CHECK(t.entries.size() <= 1);
                    for (const auto& e : t.entries) {
                        CHECK(e.dimension > 0);
                        CHECK(e.degree >= 0);
                        CHECK(e.degree <= n);
                    }
                }
                return;
            }
            for (long v = -2; v <= hi; ++v) {
                a[static_cast<std::size_t>(pos)] = v;
                self(self, pos + 1, v);
            }
        };
        scan(scan, 0, 2);
    }
}

TEST_CASE("Serre duality over the scan window") {
    for (long a1 = -6; a1 <= 6; ++a1)
        for (long a2 = -6; a2 <= a1; ++a2)
            for (long b = -6; b <= 6; ++b) {
                BottWeight w(2, {a1, a2}, b);
                BottWeight dual = serre_dual(w);
                CohomologyTable tw = bott_cohomology(w);
                CohomologyTable td = bott_cohomology(dual);
                for (int i = 0; i <= 2; ++i) CHECK(tw.h(i) == td.h(2 - i));
            }
}

TEST_CASE("Euler characteristic of O(k) on P2") {
    for (long k = -6; k <= 6; ++k) {
        CohomologyTable t = bott_cohomology(BottWeight(2, {0, 0}, -k));
        Integer chi = t.h(0) - t.h(1) + t.h(2);
        CHECK(chi == (k + 1) * (k + 2) / 2);
    }
}

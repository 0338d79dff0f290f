#pragma once

#include <string>
#include <vector>

#include "iitaka/rational.hpp"

namespace iitaka {

/// Homogeneous bundle Sigma^a Q (x) O(-b) on P^n, with a weakly decreasing.
struct BottWeight {
    int n = 2;
    std::vector<long> a;  // n Schur exponents on the tautological quotient Q
    long b = 0;           // the twist is O(-b)

    BottWeight(int n_, std::vector<long> a_, long b_);
    std::string str() const;
};

/// Cohomology of a Bott weight: at most one nonzero degree.
struct CohomologyTable {
    struct Entry {
        int degree;
        Integer dimension;
    };
    std::vector<Entry> entries;  // empty = everything vanishes

    Integer h(int degree) const;
    bool all_zero() const { return entries.empty(); }
};

/// Weyl dimension formula for GL(n+1): prod_{i<j} (l_i - l_j + j - i)/(j - i).
Integer weyl_dim(const std::vector<long>& lambda);

/// Dotted Weyl action: c = (a_1..a_n, b) + rho with rho = (n, .., 1, 0);
/// repeated entries kill all cohomology, otherwise sorting with l inversions
/// puts the only nonzero group in degree l with the Weyl dimension of
/// sorted(c) - rho.
CohomologyTable bott_cohomology(const BottWeight& w);

/// h^0(P^n, S^m Q (x) O(k)) — the weight ((m,0,..,0), -k).
long h0_sym_q_twist(int n, int m, long k);

/// Serre-dual weight: h^i(w) = h^{n-i}(serre_dual(w)).
BottWeight serre_dual(const BottWeight& w);

}  // namespace iitaka

#include "iitaka/bott.hpp"

#include <algorithm>
#include <stdexcept>

namespace iitaka {

BottWeight::BottWeight(int n_, std::vector<long> a_, long b_) : n(n_), a(std::move(a_)), b(b_) {
    if (n < 1) throw std::invalid_argument("BottWeight: n >= 1 required");
    if (a.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("BottWeight: a must have n entries");
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i - 1] < a[i]) throw std::invalid_argument("BottWeight: a must be weakly decreasing");
}

std::string BottWeight::str() const {
    std::string s = "Sigma^(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    s += ") Q";
    if (b != 0) s += "(" + std::to_string(-b) + ")";
    return s + " on P" + std::to_string(n);
}

Integer CohomologyTable::h(int degree) const {
    for (const auto& e : entries)
        if (e.degree == degree) return e.dimension;
    return Integer(0);
}

Integer weyl_dim(const std::vector<long>& lambda) {
    for (std::size_t i = 1; i < lambda.size(); ++i)
        if (lambda[i - 1] < lambda[i])
            throw std::invalid_argument("weyl_dim: weakly decreasing input required");
    Integer num(1), den(1);
    const std::size_t n = lambda.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            num *= static_cast<long>(lambda[i] - lambda[j] + static_cast<long>(j - i));
            den *= static_cast<long>(j - i);
        }
    Integer q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

CohomologyTable bott_cohomology(const BottWeight& w) {
    // c = (a_1..a_n, b) + rho, rho = (n, n-1, .., 1, 0)
    std::vector<long> c(w.a);
    c.push_back(w.b);
    const std::size_t len = c.size();
    for (std::size_t i = 0; i < len; ++i) c[i] += static_cast<long>(len - 1 - i);

    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = i + 1; j < len; ++j)
            if (c[i] == c[j]) return {};  // repeated entry: total vanishing

    // count inversions = length of the permutation sorting c descending
    int inversions = 0;
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = i + 1; j < len; ++j)
            if (c[i] < c[j]) ++inversions;

    std::vector<long> sorted = c;
    std::sort(sorted.begin(), sorted.end(), std::greater<long>());
    for (std::size_t i = 0; i < len; ++i) sorted[i] -= static_cast<long>(len - 1 - i);

    CohomologyTable t;
    t.entries.push_back({inversions, weyl_dim(sorted)});
    return t;
}

long h0_sym_q_twist(int n, int m, long k) {
    std::vector<long> a(static_cast<std::size_t>(n), 0);
    a[0] = m;
    if (n == 1) a[0] = m;  // rank-1 quotient: S^m Q = Q^m
    CohomologyTable t = bott_cohomology(BottWeight(n, a, -k));
    Integer h0 = t.h(0);
    if (!h0.fits_slong_p()) throw std::overflow_error("h0_sym_q_twist: dimension exceeds long");
    return h0.get_si();
}

BottWeight serre_dual(const BottWeight& w) {
    // (Sigma^a Q (x) O(-b))^dual (x) omega = Sigma^a* Q (x) O(-b*) with
    // a*_i = a_1 - a_{n+1-i} and b* = a_1 - b + n + 1
    std::vector<long> a_star(w.a.size());
    for (std::size_t i = 0; i < w.a.size(); ++i)
        a_star[i] = w.a.front() - w.a[w.a.size() - 1 - i];
    return BottWeight(w.n, a_star, w.a.front() - w.b + w.n + 1);
}

}  // namespace iitaka

#include "iitaka/polynomial.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "iitaka/matrix.hpp"

namespace iitaka {

Polynomial::Polynomial(const Rational& constant) {
    if (!constant.is_zero()) c_.push_back(constant);
}

Polynomial Polynomial::x() { return Polynomial{Rational(0), Rational(1)}; }

Polynomial Polynomial::monomial(std::size_t deg, const Rational& coeff) {
    if (coeff.is_zero()) return {};
    std::vector<Rational> c(deg + 1);
    c[deg] = coeff;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::from_roots(const std::vector<Rational>& roots) {
    Polynomial p{Rational(1)};
    for (const auto& r : roots) p *= Polynomial{-r, Rational(1)};
    return p;
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Rational& Polynomial::leading() const {
    if (c_.empty()) throw std::invalid_argument("Polynomial: leading() of zero");
    return c_.back();
}

Rational Polynomial::eval(const Rational& t) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
}

Polynomial Polynomial::operator-() const {
    Polynomial n = *this;
    for (auto& c : n.c_) c = -c;
    return n;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(const Rational& s) const {
    Polynomial p = *this;
    for (auto& c : p.c_) c *= s;
    p.trim();
    return p;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial acc{Rational(1)};
    Polynomial base = *this;
    while (e) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1u;
    }
    return acc;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::invalid_argument("Polynomial: division by zero");
    Polynomial r = a;
    if (a.degree() < b.degree()) return {Polynomial{}, r};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    Rational lead_inv = b.leading().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        Rational f = r.leading() * lead_inv;
        q[shift] = f;
        r -= (b * Polynomial::monomial(shift, f));
    }
    return {Polynomial(std::move(q)), r};
}

Polynomial operator/(const Polynomial& a, const Polynomial& b) {
    return Polynomial::divmod(a, b).first;
}

Polynomial operator%(const Polynomial& a, const Polynomial& b) {
    return Polynomial::divmod(a, b).second;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    return scaled(leading().inverse());
}

Polynomial Polynomial::shifted(const Rational& a) const {
    // Horner in (t + a)
    Polynomial acc;
    Polynomial lin{a, Rational(1)};
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + Polynomial(c_[i]);
    return acc;
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || !(c_[i].is_one()))
            os << c_[i].str() << (i > 0 ? "*" : "");
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = x % y;
        x = std::move(y);
        y = r.is_zero() ? Polynomial{} : r.monic();  // Euclid with monic remainders
    }
    return x.is_zero() ? Polynomial{} : x.monic();
}

Polynomial squarefree_part(const Polynomial& a) {
    if (a.is_zero()) throw std::invalid_argument("squarefree_part: zero input");
    if (a.degree() == 0) return Polynomial{Rational(1)};
    Polynomial g = poly_gcd(a, a.derivative());
    return (a / g).monic();
}

Rational resultant(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("resultant: zero input");
    const int m = a.degree(), n = b.degree();
    if (m == 0) return a.leading().pow(n);
    if (n == 0) return b.leading().pow(m);
    RationalMatrix s(static_cast<std::size_t>(m + n), static_cast<std::size_t>(m + n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            s.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) =
                a.coeff(static_cast<std::size_t>(m - j));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s.at(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + j)) =
                b.coeff(static_cast<std::size_t>(n - j));
    return determinant(s);
}

namespace {

// Positive divisors by trial division; falls back to accepting a large
// probable-prime cofactor. Intended for the small coefficients arising in
// tests and scenario glue, not for adversarial input.
std::vector<Integer> positive_divisors(Integer n) {
    if (sgn(n) < 0) n = -n;
    std::vector<std::pair<Integer, unsigned>> factors;
    Integer p(2);
    while (p * p <= n && p < 2000000) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
            ++e;
        }
        if (e) factors.emplace_back(p, e);
        p += (p == 2 ? 1 : 2);
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
            throw std::invalid_argument("rational_roots: coefficient too hard to factor");
        factors.emplace_back(n, 1u);
    }
    std::vector<Integer> divs{Integer(1)};
    for (const auto& [q, e] : factors) {
        std::size_t base = divs.size();
        Integer qe(1);
        for (unsigned k = 1; k <= e; ++k) {
            qe *= q;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * qe);
        }
    }
    return divs;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const Polynomial& a) {
    if (a.is_zero()) throw std::invalid_argument("rational_roots: zero input");
    Polynomial p = a;
    std::vector<std::pair<Rational, int>> roots;
    // peel t = 0 first
    int zmult = 0;
    while (!p.is_zero() && p.coeff(0).is_zero()) {
        std::vector<Rational> c(p.coeffs().begin() + 1, p.coeffs().end());
        p = Polynomial(std::move(c));
        ++zmult;
    }
    if (zmult) roots.emplace_back(Rational(0), zmult);
    if (p.degree() < 1) return roots;

    // integer-cleared coefficients
    Integer lcm_den(1);
    for (const auto& c : p.coeffs())
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.den().get_mpz_t());
    Integer a0 = (p.coeff(0) * Rational(lcm_den, Integer(1))).num();
    Integer an = (p.leading() * Rational(lcm_den, Integer(1))).num();

    for (const auto& num : positive_divisors(a0)) {
        for (const auto& den : positive_divisors(an)) {
            for (int s : {1, -1}) {
                Rational cand(s < 0 ? Integer(-num) : num, den);
                if (!p.eval(cand).is_zero()) continue;
                int mult = 0;
                Polynomial lin{-cand, Rational(1)};
                while (p.eval(cand).is_zero()) {
                    p = p / lin;
                    ++mult;
                }
                roots.emplace_back(cand, mult);
                if (p.degree() < 1) break;
            }
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return roots;
}

Polynomial remove_root(const Polynomial& a, const Rational& root) {
    Polynomial p = a;
    Polynomial lin{-root, Rational(1)};
    while (!p.is_zero() && p.eval(root).is_zero()) p = p / lin;
    return p;
}

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return ((a * b) / poly_gcd(a, b)).monic();
}

}  // namespace iitaka

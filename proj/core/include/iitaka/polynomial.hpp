#pragma once

#include <initializer_list>
#include <iosfwd>
#include <utility>
#include <vector>

#include "iitaka/rational.hpp"

namespace iitaka {

/// Univariate polynomial over Q; coefficient index = degree of term.
/// The leading coefficient is nonzero unless the polynomial is zero.
class Polynomial {
   public:
    Polynomial() = default;
    Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Polynomial(const Rational& constant);

    static Polynomial x();                        // the monomial t
    static Polynomial monomial(std::size_t deg, const Rational& coeff = Rational(1));
    static Polynomial from_roots(const std::vector<Rational>& roots);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Rational& leading() const;
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational eval(const Rational& t) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial scaled(const Rational& s) const;
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& o) const = default;

    /// Quotient and remainder; throws std::invalid_argument on zero divisor.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator/(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b);

    Polynomial derivative() const;
    Polynomial monic() const;
    /// Composition with t + a (Taylor shift).
    Polynomial shifted(const Rational& a) const;

    std::string str(const std::string& var = "t") const;
    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p);

   private:
    void trim();
    std::vector<Rational> c_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

/// a / gcd(a, a'), monic. Its degree counts the distinct roots of `a` over
/// the algebraic closure. Throws std::invalid_argument on zero input.
Polynomial squarefree_part(const Polynomial& a);

/// Sylvester-matrix determinant; zero iff a, b share a root over the algebraic
/// closure. Throws std::invalid_argument on zero input.
Rational resultant(const Polynomial& a, const Polynomial& b);

/// Roots in Q with multiplicities, via rational-root extraction on the
/// integer-cleared polynomial. Exact and complete.
std::vector<std::pair<Rational, int>> rational_roots(const Polynomial& a);

/// Divide out every power of (t - root) that divides `a`.
Polynomial remove_root(const Polynomial& a, const Rational& root);

/// Monic least common multiple; zero if either input is zero.
Polynomial poly_lcm(const Polynomial& a, const Polynomial& b);

}  // namespace iitaka

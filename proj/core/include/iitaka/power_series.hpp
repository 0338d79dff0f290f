#pragma once

#include <vector>

#include "iitaka/polynomial.hpp"
#include "iitaka/rational.hpp"

namespace iitaka {

/// Truncated power series over Q. Exactly `precision()` coefficients are
/// stored; everything beyond them is unknown, not zero.
class PowerSeries {
   public:
    PowerSeries() = default;
    PowerSeries(std::vector<Rational> coeffs, std::size_t precision);
    static PowerSeries from_polynomial(const Polynomial& p, std::size_t precision);
    static PowerSeries constant(const Rational& c, std::size_t precision);

    std::size_t precision() const { return c_.size(); }
    const Rational& coeff(std::size_t i) const;
    const std::vector<Rational>& coeffs() const { return c_; }

    bool known_zero() const;  // all stored coefficients vanish
    /// Index of the first nonzero coefficient, or -1 if zero up to precision.
    int valuation() const;

    PowerSeries truncated(std::size_t precision) const;
    PowerSeries operator-() const;
    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    PowerSeries scaled(const Rational& s) const;
    /// Multiply by t^k (keeps precision window anchored at t^0).
    PowerSeries shifted_up(std::size_t k) const;

    /// Multiplicative inverse; requires coeff(0) != 0.
    PowerSeries inverse() const;
    /// Square root with prescribed constant term `root0` (root0^2 == coeff(0), root0 != 0).
    PowerSeries sqrt_with(const Rational& root0) const;

   private:
    std::vector<Rational> c_;
};

/// Evaluate a polynomial at a power-series argument (Horner).
PowerSeries poly_eval_series(const Polynomial& p, const PowerSeries& t);

/// Laurent series: t^val * unit, with a finite window of known coefficients.
/// coeff index i of `unit` corresponds to the exponent val + i.
class LaurentSeries {
   public:
    LaurentSeries() : val_(0) {}
    LaurentSeries(int val, PowerSeries unit) : val_(val), unit_(std::move(unit)) { normalize(); }
    static LaurentSeries from_power(const PowerSeries& p, int shift = 0);

    bool known_zero() const { return unit_.known_zero(); }
    /// Exponent of the first nonzero known coefficient; requires !known_zero().
    int valuation() const;
    /// Coefficient of t^e; throws std::out_of_range if e is outside the known window.
    Rational coeff(int e) const;
    int window_begin() const { return val_; }
    int window_end() const { return val_ + static_cast<int>(unit_.precision()); }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    /// Division; the divisor must have a nonzero known leading coefficient.
    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);
    LaurentSeries scaled(const Rational& s) const;

   private:
    void normalize();  // strip exact leading zeros into val_
    int val_;
    PowerSeries unit_;
};

/// Evaluate a polynomial at a Laurent-series argument.
LaurentSeries poly_eval_laurent(const Polynomial& p, const LaurentSeries& t);

}  // namespace iitaka

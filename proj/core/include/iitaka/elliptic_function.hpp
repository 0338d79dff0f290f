#pragma once

#include <string>

#include "iitaka/curve.hpp"
#include "iitaka/polynomial.hpp"
#include "iitaka/power_series.hpp"

namespace iitaka {

/// Element (u(x) + v(x) y) / d(x) of the function field of an elliptic model.
/// Normalized so gcd(gcd(u, v), d) = 1 and d is monic.
class EllipticFunction {
   public:
    EllipticFunction(CurveModel model, Polynomial u, Polynomial v, Polynomial d);
    static EllipticFunction constant(const CurveModel& m, const Rational& c);
    static EllipticFunction one(const CurveModel& m) { return constant(m, Rational(1)); }
    static EllipticFunction x(const CurveModel& m);
    static EllipticFunction y(const CurveModel& m);

    const CurveModel& model() const { return model_; }
    const Polynomial& u() const { return u_; }
    const Polynomial& v() const { return v_; }
    const Polynomial& den() const { return d_; }
    bool is_zero() const { return u_.is_zero() && v_.is_zero(); }

    EllipticFunction operator+(const EllipticFunction& o) const;
    EllipticFunction operator-(const EllipticFunction& o) const;
    EllipticFunction operator*(const EllipticFunction& o) const;
    EllipticFunction operator/(const EllipticFunction& o) const;
    EllipticFunction scaled(const Rational& s) const;
    EllipticFunction conjugate() const;  // y -> -y
    /// Field norm to Q(x): (u^2 - v^2 rhs) / d^2, as a y-free function.
    EllipticFunction norm() const;

    /// Plain evaluation at an affine point where d does not vanish.
    Rational eval(const CurvePoint& p) const;

    bool operator==(const EllipticFunction& o) const;
    std::string str() const;

   private:
    void normalize();
    CurveModel model_;
    Polynomial u_, v_, d_;
};

/// Laurent expansion of f in the canonical local parameter at p:
/// t = x - x_p when y_p != 0, t = y when y_p = 0, t = x/y at the origin.
/// `precision` is the number of Laurent coefficients requested.
LaurentSeries expand_at(const EllipticFunction& f, const CurvePoint& p, std::size_t precision);

/// Expansions of the coordinate functions themselves (same parameter choice).
LaurentSeries x_expansion_at(const CurvePoint& p, std::size_t precision);
LaurentSeries y_expansion_at(const CurvePoint& p, std::size_t precision);

/// Order of vanishing of f at p (negative for poles). Retries with doubled
/// precision, hard precision_error after 4 retries. f must be nonzero.
int valuation_at(const EllipticFunction& f, const CurvePoint& p);

/// A function with div(f) = d exactly, built by accumulating chord/tangent
/// line functions. Requires class_reduce(d) trivial; the result is validated
/// by valuation_at on every support point.
EllipticFunction principal_witness(const Divisor& d);

}  // namespace iitaka

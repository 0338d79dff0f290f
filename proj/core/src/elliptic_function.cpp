#include "iitaka/elliptic_function.hpp"

#include <algorithm>
#include <stdexcept>

#include "iitaka/errors.hpp"

namespace iitaka {

EllipticFunction::EllipticFunction(CurveModel model, Polynomial u, Polynomial v, Polynomial d)
    : model_(std::move(model)), u_(std::move(u)), v_(std::move(v)), d_(std::move(d)) {
    if (model_.kind() != ModelKind::Elliptic)
        throw std::invalid_argument("EllipticFunction: elliptic model required");
    if (d_.is_zero()) throw std::invalid_argument("EllipticFunction: zero denominator");
    normalize();
}

void EllipticFunction::normalize() {
    Polynomial g = poly_gcd(poly_gcd(u_, v_), d_);
    if (!g.is_zero() && g.degree() > 0) {
        u_ = u_ / g;
        v_ = v_ / g;
        d_ = d_ / g;
    }
    Rational lead = d_.leading();
    if (!lead.is_one()) {
        Rational inv = lead.inverse();
        u_ = u_.scaled(inv);
        v_ = v_.scaled(inv);
        d_ = d_.scaled(inv);
    }
}

EllipticFunction EllipticFunction::constant(const CurveModel& m, const Rational& c) {
    return EllipticFunction(m, Polynomial(c), Polynomial{}, Polynomial{Rational(1)});
}

EllipticFunction EllipticFunction::x(const CurveModel& m) {
    return EllipticFunction(m, Polynomial::x(), Polynomial{}, Polynomial{Rational(1)});
}

EllipticFunction EllipticFunction::y(const CurveModel& m) {
    return EllipticFunction(m, Polynomial{}, Polynomial{Rational(1)}, Polynomial{Rational(1)});
}

EllipticFunction EllipticFunction::operator+(const EllipticFunction& o) const {
    return EllipticFunction(model_, u_ * o.d_ + o.u_ * d_, v_ * o.d_ + o.v_ * d_, d_ * o.d_);
}

EllipticFunction EllipticFunction::operator-(const EllipticFunction& o) const {
    return *this + o.scaled(Rational(-1));
}

EllipticFunction EllipticFunction::operator*(const EllipticFunction& o) const {
    // (u1 + v1 y)(u2 + v2 y) = (u1 u2 + v1 v2 rhs) + (u1 v2 + u2 v1) y
    Polynomial rhs = model_.rhs_poly();
    return EllipticFunction(model_, u_ * o.u_ + v_ * o.v_ * rhs, u_ * o.v_ + o.u_ * v_,
                            d_ * o.d_);
}

EllipticFunction EllipticFunction::operator/(const EllipticFunction& o) const {
    if (o.is_zero()) throw std::invalid_argument("EllipticFunction: division by zero");
    // 1/((u + v y)/d) = d (u - v y) / (u^2 - v^2 rhs)
    Polynomial rhs = model_.rhs_poly();
    Polynomial n = o.u_ * o.u_ - o.v_ * o.v_ * rhs;
    EllipticFunction inv(model_, o.d_ * o.u_, (o.d_ * o.v_).scaled(Rational(-1)), n);
    return *this * inv;
}

EllipticFunction EllipticFunction::scaled(const Rational& s) const {
    if (s.is_zero()) return EllipticFunction(model_, {}, {}, Polynomial{Rational(1)});
    return EllipticFunction(model_, u_.scaled(s), v_.scaled(s), d_);
}

EllipticFunction EllipticFunction::conjugate() const {
    return EllipticFunction(model_, u_, v_.scaled(Rational(-1)), d_);
}

EllipticFunction EllipticFunction::norm() const {
    Polynomial rhs = model_.rhs_poly();
    return EllipticFunction(model_, u_ * u_ - v_ * v_ * rhs, Polynomial{}, d_ * d_);
}

Rational EllipticFunction::eval(const CurvePoint& p) const {
    if (p.is_origin()) throw std::invalid_argument("eval: affine point required");
    Rational dv = d_.eval(p.x());
    if (dv.is_zero()) throw std::invalid_argument("eval: denominator vanishes at the point");
    return (u_.eval(p.x()) + v_.eval(p.x()) * p.y()) / dv;
}

bool EllipticFunction::operator==(const EllipticFunction& o) const {
    // canonical form makes cross-multiplied comparison exact
    return u_ * o.d_ == o.u_ * d_ && v_ * o.d_ == o.v_ * d_;
}

std::string EllipticFunction::str() const {
    std::string num;
    if (u_.is_zero() && v_.is_zero()) return "0";
    if (!u_.is_zero()) num += "(" + u_.str("x") + ")";
    if (!v_.is_zero()) {
        if (!num.empty()) num += " + ";
        num += "(" + v_.str("x") + ")*y";
    }
    if (d_ == Polynomial{Rational(1)}) return num;
    return "(" + num + ")/(" + d_.str("x") + ")";
}

namespace {

struct LocalFrame {
    LaurentSeries x;  // expansion of the coordinate x in the local parameter
    LaurentSeries y;
};

// y as a series at an affine point with y_p != 0: y_p * sqrt(rhs(x_p + t)/y_p^2).
LocalFrame frame_generic(const CurveModel& m, const CurvePoint& p, std::size_t prec) {
    Polynomial rhs_t = m.rhs_poly().shifted(p.x());
    PowerSeries arg = PowerSeries::from_polynomial(rhs_t, prec).scaled((p.y() * p.y()).inverse());
    PowerSeries y = arg.sqrt_with(Rational(1)).scaled(p.y());
    Polynomial xt{p.x(), Rational(1)};
    return {LaurentSeries::from_power(PowerSeries::from_polynomial(xt, prec)),
            LaurentSeries::from_power(y)};
}

// x as a series in t = y at a 2-torsion point (y_p = 0): Newton on rhs(x_p + s) = t^2.
LocalFrame frame_two_torsion(const CurveModel& m, const CurvePoint& p, std::size_t prec) {
    Polynomial rhs_t = m.rhs_poly().shifted(p.x());  // no constant term, linear coeff != 0
    Rational c1 = rhs_t.coeff(1);
    if (c1.is_zero()) throw std::invalid_argument("frame_two_torsion: singular point");
    PowerSeries t2 = PowerSeries::from_polynomial(Polynomial::monomial(2), prec);
    PowerSeries s = t2.scaled(c1.inverse());
    Polynomial drhs = rhs_t.derivative();
    for (std::size_t it = 0; it < prec + 2; ++it) {
        PowerSeries f = poly_eval_series(rhs_t, s) - t2;
        if (f.known_zero()) break;
        PowerSeries corr = f * poly_eval_series(drhs, s).inverse();
        s = s - corr;
    }
    PowerSeries x = PowerSeries::constant(p.x(), prec) + s;
    PowerSeries y = PowerSeries::from_polynomial(Polynomial::x(), prec);
    return {LaurentSeries::from_power(x), LaurentSeries::from_power(y)};
}

// x = t^{-2} W^{-1}, y = t^{-3} W^{-1} at the origin, W = 1 + a t^4 W^2 + b t^6 W^3.
LocalFrame frame_origin(const CurveModel& m, std::size_t prec) {
    PowerSeries w = PowerSeries::constant(Rational(1), prec);
    PowerSeries one = PowerSeries::constant(Rational(1), prec);
    PowerSeries t4 = PowerSeries::from_polynomial(Polynomial::monomial(4, m.a()), prec);
    PowerSeries t6 = PowerSeries::from_polynomial(Polynomial::monomial(6, m.b()), prec);
    for (std::size_t it = 0; it * 4 <= prec + 4; ++it)
        w = one + t4 * (w * w) + t6 * (w * w * w);
    PowerSeries winv = w.inverse();
    return {LaurentSeries(-2, winv), LaurentSeries(-3, winv)};
}

LocalFrame frame_at(const CurvePoint& p, std::size_t prec) {
    const CurveModel& m = p.model();
    if (p.is_origin()) return frame_origin(m, prec);
    if (p.y().is_zero()) return frame_two_torsion(m, p, prec);
    return frame_generic(m, p, prec);
}

}  // namespace

LaurentSeries x_expansion_at(const CurvePoint& p, std::size_t precision) {
    return frame_at(p, precision).x;
}

LaurentSeries y_expansion_at(const CurvePoint& p, std::size_t precision) {
    return frame_at(p, precision).y;
}

LaurentSeries expand_at(const EllipticFunction& f, const CurvePoint& p, std::size_t precision) {
    LocalFrame fr = frame_at(p, precision);
    LaurentSeries num = poly_eval_laurent(f.u(), fr.x) + poly_eval_laurent(f.v(), fr.x) * fr.y;
    LaurentSeries den = poly_eval_laurent(f.den(), fr.x);
    return num / den;
}

int valuation_at(const EllipticFunction& f, const CurvePoint& p) {
    if (f.is_zero()) throw std::invalid_argument("valuation_at: zero function");
    int max_deg = std::max({f.u().degree(), f.v().degree() + 2, f.den().degree(), 1});
    std::size_t prec = 2 * static_cast<std::size_t>(2 * max_deg + 3) + 4;
    for (int attempt = 0; attempt < 5; ++attempt) {
        LaurentSeries s = expand_at(f, p, prec);
        if (!s.known_zero()) return s.valuation();
        prec *= 2;
    }
    throw precision_error("valuation_at: precision exhausted after 4 retries");
}

namespace {

// (P) + (Q) = (P + Q) + (O) + div(g); returns the group-law sum and g.
std::pair<CurvePoint, EllipticFunction> combine_points(const CurvePoint& p, const CurvePoint& q) {
    const CurveModel& m = p.model();
    EllipticFunction one = EllipticFunction::one(m);
    if (p.is_origin()) return {q, one};
    if (q.is_origin()) return {p, one};
    if (p.x() == q.x() && p.y() == -q.y()) {
        // vertical line: (P) + (-P) = 2(O) + div(x - x_P)
        EllipticFunction vert(m, Polynomial{-p.x(), Rational(1)}, {}, Polynomial{Rational(1)});
        return {CurvePoint::elliptic_origin(m), vert};
    }
    Rational lambda = (p == q) ? (Rational(3) * p.x() * p.x() + m.a()) / (Rational(2) * p.y())
                               : (q.y() - p.y()) / (q.x() - p.x());
    Rational mu = p.y() - lambda * p.x();
    CurvePoint s = ec_add(p, q);
    // chord/tangent: div(y - lambda x - mu) = (P) + (Q) + (-S) - 3(O)
    EllipticFunction line(m, Polynomial{-mu, -lambda}, Polynomial{Rational(1)},
                          Polynomial{Rational(1)});
    EllipticFunction vert_s(m, Polynomial{-s.x(), Rational(1)}, {}, Polynomial{Rational(1)});
    return {s, line / vert_s};
}

// Sum of effective points = (R) + (n - 1)(O) + div(g); n = points.size().
std::pair<CurvePoint, EllipticFunction> reduce_effective(const CurveModel& m,
                                                         const std::vector<CurvePoint>& points) {
    CurvePoint acc = CurvePoint::elliptic_origin(m);
    EllipticFunction g = EllipticFunction::one(m);
    bool started = false;
    for (const auto& pt : points) {
        if (!started) {
            acc = pt;
            started = true;
            continue;
        }
        auto [s, h] = combine_points(acc, pt);
        acc = s;
        g = g * h;
    }
    return {acc, g};
}

}  // namespace

EllipticFunction principal_witness(const Divisor& d) {
    const CurveModel& m = d.model();
    if (m.kind() != ModelKind::Elliptic)
        throw unsupported_model_error("principal_witness: elliptic model required");
    DivisorClass cls = class_reduce(d);
    if (!cls.is_trivial())
        throw std::invalid_argument("principal_witness: divisor class is not principal");

    std::vector<CurvePoint> pos, neg;
    for (const auto& [pt, mult] : d.support()) {
        if (pt.is_origin()) continue;  // O bookkeeping is implicit in the reduction identities
        for (int i = 0; i < std::abs(mult); ++i) (mult > 0 ? pos : neg).push_back(pt);
    }
    auto [rp, gp] = reduce_effective(m, pos);
    auto [rn, gn] = reduce_effective(m, neg);
    if (!(rp == rn))
        throw std::invalid_argument("principal_witness: reductions disagree (not principal)");
    EllipticFunction f = gp / gn;

    // div(f) = d exactly by construction; validate at every support point.
    for (const auto& [pt, mult] : d.support()) {
        if (valuation_at(f, pt) != mult)
            throw std::logic_error("principal_witness: valuation check failed at " + pt.str());
    }
    return f;
}

}  // namespace iitaka

#include "iitaka/curve.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "iitaka/errors.hpp"

namespace iitaka {

CurveModel CurveModel::projective_line() {
    return CurveModel(ModelKind::ProjectiveLine, Rational(0), Rational(0), 1);
}

CurveModel CurveModel::elliptic(const Rational& a, const Rational& b) {
    Rational disc = Rational(4) * a * a * a + Rational(27) * b * b;
    if (disc.is_zero()) throw std::invalid_argument("elliptic model: singular (4a^3 + 27b^2 = 0)");
    return CurveModel(ModelKind::Elliptic, a, b, 1);
}

CurveModel CurveModel::product_p1p1() {
    return CurveModel(ModelKind::ProductP1P1, Rational(0), Rational(0), 2);
}

CurveModel CurveModel::projective_space(int n) {
    if (n == 1) return projective_line();
    if (n < 1) throw std::invalid_argument("projective_space: n >= 1 required");
    return CurveModel(ModelKind::ProjectiveSpace, Rational(0), Rational(0), n);
}

const Rational& CurveModel::a() const {
    if (kind_ != ModelKind::Elliptic) throw std::invalid_argument("a(): not an elliptic model");
    return a_;
}

const Rational& CurveModel::b() const {
    if (kind_ != ModelKind::Elliptic) throw std::invalid_argument("b(): not an elliptic model");
    return b_;
}

int CurveModel::n() const { return n_; }

int CurveModel::dim() const {
    switch (kind_) {
        case ModelKind::ProjectiveLine:
        case ModelKind::Elliptic: return 1;
        case ModelKind::ProductP1P1: return 2;
        case ModelKind::ProjectiveSpace: return n_;
    }
    return 1;
}

Rational CurveModel::rhs(const Rational& x) const { return x * x * x + a() * x + b(); }

Polynomial CurveModel::rhs_poly() const { return Polynomial{b(), a(), Rational(0), Rational(1)}; }

bool CurveModel::operator==(const CurveModel& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == ModelKind::Elliptic) return a_ == o.a_ && b_ == o.b_;
    if (kind_ == ModelKind::ProjectiveSpace) return n_ == o.n_;
    return true;
}

std::string CurveModel::str() const {
    switch (kind_) {
        case ModelKind::ProjectiveLine: return "P1";
        case ModelKind::Elliptic: return "elliptic(y^2 = x^3 + " + a_.str() + "x + " + b_.str() + ")";
        case ModelKind::ProductP1P1: return "P1xP1";
        case ModelKind::ProjectiveSpace: return "P" + std::to_string(n_);
    }
    return "?";
}

CurvePoint CurvePoint::elliptic_affine(const CurveModel& m, const Rational& x, const Rational& y) {
    if (m.kind() != ModelKind::Elliptic) throw std::invalid_argument("elliptic_affine: wrong model");
    if (y * y != m.rhs(x))
        throw std::invalid_argument("elliptic_affine: (" + x.str() + ", " + y.str() +
                                    ") is not on " + m.str());
    return CurvePoint(m, {x, y, Rational(1)});
}

CurvePoint CurvePoint::elliptic_origin(const CurveModel& m) {
    if (m.kind() != ModelKind::Elliptic) throw std::invalid_argument("elliptic_origin: wrong model");
    return CurvePoint(m, {Rational(0), Rational(1), Rational(0)});
}

CurvePoint CurvePoint::p1(const CurveModel& m, const Rational& a, const Rational& b) {
    if (m.kind() != ModelKind::ProjectiveLine) throw std::invalid_argument("p1: wrong model");
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("p1: (0:0) is not a point");
    if (b.is_zero()) return CurvePoint(m, {Rational(1), Rational(0)});
    return CurvePoint(m, {a / b, Rational(1)});
}

CurvePoint CurvePoint::p1_affine(const CurveModel& m, const Rational& t) {
    return p1(m, t, Rational(1));
}

CurvePoint CurvePoint::p1_infinity(const CurveModel& m) { return p1(m, Rational(1), Rational(0)); }

CurvePoint CurvePoint::product(const CurveModel& m, const CurvePoint& first,
                               const CurvePoint& second) {
    if (m.kind() != ModelKind::ProductP1P1) throw std::invalid_argument("product: wrong model");
    if (first.model().kind() != ModelKind::ProjectiveLine ||
        second.model().kind() != ModelKind::ProjectiveLine)
        throw std::invalid_argument("product: factors must be P1 points");
    return CurvePoint(m, {first.coords()[0], first.coords()[1], second.coords()[0],
                          second.coords()[1]});
}

CurvePoint CurvePoint::projective(const CurveModel& m, std::vector<Rational> coords) {
    if (m.kind() != ModelKind::ProjectiveSpace && m.kind() != ModelKind::ProjectiveLine)
        throw std::invalid_argument("projective: wrong model");
    if (coords.size() != static_cast<std::size_t>(m.n()) + 1)
        throw std::invalid_argument("projective: coordinate count mismatch");
    std::size_t last = coords.size();
    while (last > 0 && coords[last - 1].is_zero()) --last;
    if (last == 0) throw std::invalid_argument("projective: all coordinates zero");
    Rational inv = coords[last - 1].inverse();
    for (auto& c : coords) c *= inv;
    return CurvePoint(m, std::move(coords));
}

bool CurvePoint::is_origin() const {
    return model_.kind() == ModelKind::Elliptic && coords_[2].is_zero();
}

const Rational& CurvePoint::x() const {
    if (model_.kind() != ModelKind::Elliptic || is_origin())
        throw std::invalid_argument("x(): affine elliptic point required");
    return coords_[0];
}

const Rational& CurvePoint::y() const {
    if (model_.kind() != ModelKind::Elliptic || is_origin())
        throw std::invalid_argument("y(): affine elliptic point required");
    return coords_[1];
}

bool CurvePoint::is_p1_infinity() const {
    return model_.kind() == ModelKind::ProjectiveLine && coords_[1].is_zero();
}

const Rational& CurvePoint::affine() const {
    if (model_.kind() != ModelKind::ProjectiveLine || is_p1_infinity())
        throw std::invalid_argument("affine(): affine P1 point required");
    return coords_[0];
}

CurvePoint CurvePoint::factor(int which) const {
    if (model_.kind() != ModelKind::ProductP1P1)
        throw std::invalid_argument("factor(): product model required");
    CurveModel line = CurveModel::projective_line();
    std::size_t base = which == 0 ? 0 : 2;
    return CurvePoint(line, {coords_[base], coords_[base + 1]});
}

bool CurvePoint::operator==(const CurvePoint& o) const {
    return model_ == o.model_ && coords_ == o.coords_;
}

bool CurvePoint::operator<(const CurvePoint& o) const {
    for (std::size_t i = 0; i < std::min(coords_.size(), o.coords_.size()); ++i) {
        if (coords_[i] != o.coords_[i]) return coords_[i] < o.coords_[i];
    }
    return coords_.size() < o.coords_.size();
}

std::string CurvePoint::str() const {
    switch (model_.kind()) {
        case ModelKind::Elliptic:
            if (is_origin()) return "O";
            return "(" + coords_[0].str() + "," + coords_[1].str() + ")";
        case ModelKind::ProjectiveLine:
            return "(" + coords_[0].str() + ":" + coords_[1].str() + ")";
        case ModelKind::ProductP1P1:
            return "((" + coords_[0].str() + ":" + coords_[1].str() + "),(" + coords_[2].str() +
                   ":" + coords_[3].str() + "))";
        case ModelKind::ProjectiveSpace: {
            std::string s = "[";
            for (std::size_t i = 0; i < coords_.size(); ++i)
                s += (i ? ":" : "") + coords_[i].str();
            return s + "]";
        }
    }
    return "?";
}

bool is_on_curve(const CurvePoint& p) {
    if (p.model().kind() != ModelKind::Elliptic) return true;
    if (p.is_origin()) return true;
    return p.y() * p.y() == p.model().rhs(p.x());
}

CurvePoint ec_neg(const CurvePoint& p) {
    if (p.model().kind() != ModelKind::Elliptic) throw std::invalid_argument("ec_neg: not elliptic");
    if (p.is_origin()) return p;
    return CurvePoint::elliptic_affine(p.model(), p.x(), -p.y());
}

CurvePoint ec_add(const CurvePoint& p, const CurvePoint& q) {
    if (p.model().kind() != ModelKind::Elliptic || !(p.model() == q.model()))
        throw std::invalid_argument("ec_add: points on different models");
    if (p.is_origin()) return q;
    if (q.is_origin()) return p;
    const Rational &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();
    if (x1 == x2 && y1 == -y2) return CurvePoint::elliptic_origin(p.model());
    Rational lambda = (x1 == x2 && y1 == y2)
                          ? (Rational(3) * x1 * x1 + p.model().a()) / (Rational(2) * y1)
                          : (y2 - y1) / (x2 - x1);
    Rational x3 = lambda * lambda - x1 - x2;
    Rational y3 = lambda * (x1 - x3) - y1;
    return CurvePoint::elliptic_affine(p.model(), x3, y3);
}

CurvePoint ec_mul(long n, const CurvePoint& p) {
    if (n < 0) return ec_mul(-n, ec_neg(p));
    CurvePoint acc = CurvePoint::elliptic_origin(p.model());
    CurvePoint base = p;
    while (n) {
        if (n & 1) acc = ec_add(acc, base);
        base = ec_add(base, base);
        n >>= 1;
    }
    return acc;
}

std::optional<int> torsion_order(const CurvePoint& p, int bound) {
    CurvePoint acc = CurvePoint::elliptic_origin(p.model());
    for (int n = 1; n <= bound; ++n) {
        acc = ec_add(acc, p);
        if (acc.is_origin()) return n;
    }
    return std::nullopt;
}

Divisor Divisor::zero(const CurveModel& m) { return Divisor(m); }

Divisor Divisor::from_points(const CurveModel& m,
                             std::vector<std::pair<CurvePoint, int>> support) {
    if (m.kind() == ModelKind::ProductP1P1 || (m.kind() == ModelKind::ProjectiveSpace && m.n() > 1))
        throw unsupported_model_error("point-supported divisors exist only on curve models");
    Divisor d(m);
    d.support_ = std::move(support);
    for (const auto& [pt, mult] : d.support_) {
        (void)mult;
        if (!(pt.model() == m)) throw std::invalid_argument("divisor point on wrong model");
        if (!is_on_curve(pt)) throw std::invalid_argument("divisor point not on the curve");
    }
    d.normalize();
    return d;
}

Divisor Divisor::single(const CurvePoint& p, int mult) {
    return from_points(p.model(), {{p, mult}});
}

Divisor Divisor::of_degree(const CurveModel& m, long degree) {
    if (m.kind() == ModelKind::ProjectiveLine)
        return from_points(m, {{CurvePoint::p1_infinity(m), static_cast<int>(degree)}});
    if (m.kind() == ModelKind::ProjectiveSpace) {
        Divisor d(m);
        d.direct_ = true;
        d.d1_ = degree;
        return d;
    }
    throw unsupported_model_error("of_degree: P1 or P^n model required");
}

Divisor Divisor::of_bidegree(const CurveModel& m, long d1, long d2) {
    if (m.kind() != ModelKind::ProductP1P1)
        throw unsupported_model_error("of_bidegree: product model required");
    Divisor d(m);
    d.direct_ = true;
    d.d1_ = d1;
    d.d2_ = d2;
    return d;
}

void Divisor::normalize() {
    std::map<CurvePoint, long long> acc;
    for (const auto& [pt, mult] : support_) acc[pt] += mult;
    support_.clear();
    for (const auto& [pt, mult] : acc)
        if (mult != 0) support_.emplace_back(pt, static_cast<int>(mult));
}

long Divisor::degree() const {
    if (direct_) return model_.kind() == ModelKind::ProductP1P1 ? d1_ + d2_ : d1_;
    long d = 0;
    for (const auto& [pt, mult] : support_) {
        (void)pt;
        d += mult;
    }
    return d;
}

std::pair<long, long> Divisor::bidegree() const {
    if (model_.kind() != ModelKind::ProductP1P1)
        throw std::invalid_argument("bidegree: product model required");
    return {d1_, d2_};
}

int Divisor::multiplicity_at(const CurvePoint& p) const {
    for (const auto& [pt, mult] : support_)
        if (pt == p) return mult;
    return 0;
}

Divisor Divisor::operator+(const Divisor& o) const {
    if (!(model_ == o.model_)) throw std::invalid_argument("divisor sum: model mismatch");
    if (direct_ || o.direct_) {
        Divisor d(model_);
        d.direct_ = true;
        d.d1_ = d1_ + o.d1_;
        d.d2_ = d2_ + o.d2_;
        return d;
    }
    Divisor d(model_);
    d.support_ = support_;
    d.support_.insert(d.support_.end(), o.support_.begin(), o.support_.end());
    d.normalize();
    return d;
}

Divisor Divisor::operator-(const Divisor& o) const { return *this + o.scaled(-1); }

Divisor Divisor::scaled(int n) const {
    Divisor d(model_);
    if (direct_) {
        d.direct_ = true;
        d.d1_ = d1_ * n;
        d.d2_ = d2_ * n;
        return d;
    }
    if (n == 0) return d;
    d.support_ = support_;
    for (auto& [pt, mult] : d.support_) {
        (void)pt;
        mult *= n;
    }
    return d;
}

bool Divisor::operator==(const Divisor& o) const {
    return model_ == o.model_ && direct_ == o.direct_ && support_ == o.support_ && d1_ == o.d1_ &&
           d2_ == o.d2_;
}

std::string Divisor::str() const {
    if (direct_) {
        if (model_.kind() == ModelKind::ProductP1P1)
            return "bideg(" + std::to_string(d1_) + "," + std::to_string(d2_) + ")";
        return "deg(" + std::to_string(d1_) + ")";
    }
    if (support_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [pt, mult] : support_) {
        if (!first) os << " + ";
        first = false;
        if (mult != 1) os << mult << "*";
        os << pt.str();
    }
    return os.str();
}

DivisorClass DivisorClass::of_degree(const CurveModel& m, long degree) {
    if (m.kind() == ModelKind::Elliptic)
        throw std::invalid_argument("of_degree: elliptic classes need a reduction point");
    if (m.kind() == ModelKind::ProductP1P1)
        throw std::invalid_argument("of_degree: product classes are bidegrees");
    return DivisorClass(m, degree, std::nullopt, 0, 0);
}

DivisorClass DivisorClass::elliptic(const CurveModel& m, long degree,
                                    const CurvePoint& reduction) {
    if (m.kind() != ModelKind::Elliptic) throw std::invalid_argument("elliptic class: wrong model");
    return DivisorClass(m, degree, reduction, 0, 0);
}

DivisorClass DivisorClass::of_bidegree(const CurveModel& m, long d1, long d2) {
    if (m.kind() != ModelKind::ProductP1P1)
        throw std::invalid_argument("of_bidegree: product model required");
    return DivisorClass(m, d1 + d2, std::nullopt, d1, d2);
}

DivisorClass DivisorClass::trivial(const CurveModel& m) {
    switch (m.kind()) {
        case ModelKind::Elliptic: return elliptic(m, 0, CurvePoint::elliptic_origin(m));
        case ModelKind::ProductP1P1: return of_bidegree(m, 0, 0);
        default: return of_degree(m, 0);
    }
}

long DivisorClass::degree() const { return degree_; }

std::pair<long, long> DivisorClass::bidegree() const {
    if (model_.kind() != ModelKind::ProductP1P1)
        throw std::invalid_argument("bidegree: product model required");
    return {d1_, d2_};
}

const CurvePoint& DivisorClass::reduction() const {
    if (!reduction_) throw std::invalid_argument("reduction: elliptic class required");
    return *reduction_;
}

bool DivisorClass::is_trivial() const {
    if (model_.kind() == ModelKind::Elliptic) return degree_ == 0 && reduction_->is_origin();
    if (model_.kind() == ModelKind::ProductP1P1) return d1_ == 0 && d2_ == 0;
    return degree_ == 0;
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
    if (!(model_ == o.model_)) throw std::invalid_argument("class sum: model mismatch");
    switch (model_.kind()) {
        case ModelKind::Elliptic:
            return elliptic(model_, degree_ + o.degree_, ec_add(*reduction_, *o.reduction_));
        case ModelKind::ProductP1P1:
            return of_bidegree(model_, d1_ + o.d1_, d2_ + o.d2_);
        default:
            return of_degree(model_, degree_ + o.degree_);
    }
}

DivisorClass DivisorClass::scaled(long n) const {
    switch (model_.kind()) {
        case ModelKind::Elliptic:
            return elliptic(model_, degree_ * n, ec_mul(n, *reduction_));
        case ModelKind::ProductP1P1:
            return of_bidegree(model_, d1_ * n, d2_ * n);
        default:
            return of_degree(model_, degree_ * n);
    }
}

bool DivisorClass::operator==(const DivisorClass& o) const {
    if (!(model_ == o.model_) || degree_ != o.degree_) return false;
    if (model_.kind() == ModelKind::Elliptic) return *reduction_ == *o.reduction_;
    if (model_.kind() == ModelKind::ProductP1P1) return d1_ == o.d1_ && d2_ == o.d2_;
    return true;
}

bool DivisorClass::operator<(const DivisorClass& o) const {
    if (degree_ != o.degree_) return degree_ < o.degree_;
    if (model_.kind() == ModelKind::Elliptic) return *reduction_ < *o.reduction_;
    if (model_.kind() == ModelKind::ProductP1P1)
        return std::pair(d1_, d2_) < std::pair(o.d1_, o.d2_);
    return false;
}

std::string DivisorClass::str() const {
    switch (model_.kind()) {
        case ModelKind::Elliptic:
            return "(" + std::to_string(degree_) + ", " + reduction_->str() + ")";
        case ModelKind::ProductP1P1:
            return "(" + std::to_string(d1_) + "," + std::to_string(d2_) + ")";
        default:
            return std::to_string(degree_);
    }
}

std::optional<int> DivisorClass::torsion(int bound) const {
    if (degree_ != 0) return std::nullopt;
    if (model_.kind() != ModelKind::Elliptic) return is_trivial() ? std::optional<int>(1) : std::nullopt;
    if (reduction_->is_origin()) return 1;
    return torsion_order(*reduction_, bound);
}

DivisorClass class_reduce(const Divisor& d) {
    const CurveModel& m = d.model();
    switch (m.kind()) {
        case ModelKind::ProjectiveLine:
            return DivisorClass::of_degree(m, d.degree());
        case ModelKind::ProductP1P1: {
            auto [d1, d2] = d.bidegree();
            return DivisorClass::of_bidegree(m, d1, d2);
        }
        case ModelKind::Elliptic: {
            CurvePoint sum = CurvePoint::elliptic_origin(m);
            for (const auto& [pt, mult] : d.support()) sum = ec_add(sum, ec_mul(mult, pt));
            return DivisorClass::elliptic(m, d.degree(), sum);
        }
        case ModelKind::ProjectiveSpace:
            throw unsupported_model_error("class_reduce: unsupported on P^n, n >= 2");
    }
    throw unsupported_model_error("class_reduce: unknown model");
}

Divisor canonical_representative(const DivisorClass& c) {
    const CurveModel& m = c.model();
    switch (m.kind()) {
        case ModelKind::ProjectiveLine:
            return Divisor::of_degree(m, c.degree());
        case ModelKind::ProductP1P1: {
            auto [d1, d2] = c.bidegree();
            return Divisor::of_bidegree(m, d1, d2);
        }
        case ModelKind::ProjectiveSpace:
            return Divisor::of_degree(m, c.degree());
        case ModelKind::Elliptic: {
            // (d - 1) * O + P represents (d, P) for every d, merging when P = O.
            CurvePoint o = CurvePoint::elliptic_origin(m);
            return Divisor::from_points(
                m, {{o, static_cast<int>(c.degree() - 1)}, {c.reduction(), 1}});
        }
    }
    throw unsupported_model_error("canonical_representative: unknown model");
}

}  // namespace iitaka

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iitaka/polynomial.hpp"
#include "iitaka/rational.hpp"

namespace iitaka {

enum class ModelKind { ProjectiveLine, Elliptic, ProductP1P1, ProjectiveSpace };

/// A model variety: P^1, an elliptic curve y^2 = x^3 + ax + b, P^1 x P^1, or P^n.
class CurveModel {
   public:
    static CurveModel projective_line();
    /// Short Weierstrass model; throws std::invalid_argument if 4a^3 + 27b^2 = 0.
    static CurveModel elliptic(const Rational& a, const Rational& b);
    static CurveModel product_p1p1();
    static CurveModel projective_space(int n);  // n >= 2; use projective_line for n = 1

    ModelKind kind() const { return kind_; }
    const Rational& a() const;
    const Rational& b() const;
    int n() const;
    int dim() const;

    /// x^3 + ax + b (elliptic only).
    Rational rhs(const Rational& x) const;
    Polynomial rhs_poly() const;

    bool operator==(const CurveModel& o) const;
    bool operator!=(const CurveModel& o) const { return !(*this == o); }
    std::string str() const;

   private:
    CurveModel(ModelKind k, Rational a, Rational b, int n)
        : kind_(k), a_(std::move(a)), b_(std::move(b)), n_(n) {}
    ModelKind kind_;
    Rational a_, b_;
    int n_;
};

/// A rational point of a model, stored in normalized projective coordinates.
/// Elliptic: (x, y, z) with z in {0, 1}; z = 0 only at the origin at infinity.
/// P^1 / P^n: last nonzero coordinate = 1. Product: two normalized P^1 pairs.
class CurvePoint {
   public:
    static CurvePoint elliptic_affine(const CurveModel& m, const Rational& x, const Rational& y);
    static CurvePoint elliptic_origin(const CurveModel& m);
    static CurvePoint p1(const CurveModel& m, const Rational& a, const Rational& b);
    static CurvePoint p1_affine(const CurveModel& m, const Rational& t);
    static CurvePoint p1_infinity(const CurveModel& m);
    static CurvePoint product(const CurveModel& m, const CurvePoint& first,
                              const CurvePoint& second);
    static CurvePoint projective(const CurveModel& m, std::vector<Rational> coords);

    const CurveModel& model() const { return model_; }
    const std::vector<Rational>& coords() const { return coords_; }

    // elliptic accessors
    bool is_origin() const;
    const Rational& x() const;
    const Rational& y() const;

    // P^1 accessors
    bool is_p1_infinity() const;
    const Rational& affine() const;  // t with point (t : 1)

    // product accessors
    CurvePoint factor(int which) const;

    bool operator==(const CurvePoint& o) const;
    bool operator!=(const CurvePoint& o) const { return !(*this == o); }
    bool operator<(const CurvePoint& o) const;  // total order for sorting/dedup
    std::string str() const;

   private:
    CurvePoint(CurveModel m, std::vector<Rational> c)
        : model_(std::move(m)), coords_(std::move(c)) {}
    CurveModel model_;
    std::vector<Rational> coords_;
};

/// Chord-tangent group law with the origin at infinity as identity.
CurvePoint ec_add(const CurvePoint& p, const CurvePoint& q);
CurvePoint ec_neg(const CurvePoint& p);
CurvePoint ec_mul(long n, const CurvePoint& p);
bool is_on_curve(const CurvePoint& p);
/// Order of p in the group, searching up to `bound` (12 suffices over Q).
std::optional<int> torsion_order(const CurvePoint& p, int bound = 12);

/// Formal sum of points with integer multiplicities (curve models), or a
/// direct degree / bidegree datum on P^n / P^1 x P^1 where point supports do
/// not present a line bundle.
class Divisor {
   public:
    static Divisor zero(const CurveModel& m);
    static Divisor from_points(const CurveModel& m,
                               std::vector<std::pair<CurvePoint, int>> support);
    static Divisor single(const CurvePoint& p, int mult = 1);
    static Divisor of_degree(const CurveModel& m, long degree);  // P^1: deg * (1:0); P^n direct
    static Divisor of_bidegree(const CurveModel& m, long d1, long d2);

    const CurveModel& model() const { return model_; }
    const std::vector<std::pair<CurvePoint, int>>& support() const { return support_; }
    bool is_direct() const { return direct_; }
    long degree() const;
    std::pair<long, long> bidegree() const;
    int multiplicity_at(const CurvePoint& p) const;

    Divisor operator+(const Divisor& o) const;
    Divisor operator-(const Divisor& o) const;
    Divisor scaled(int n) const;
    bool operator==(const Divisor& o) const;
    std::string str() const;

   private:
    explicit Divisor(CurveModel m) : model_(std::move(m)) {}
    void normalize();
    CurveModel model_;
    std::vector<std::pair<CurvePoint, int>> support_;  // sorted, multiplicities nonzero
    bool direct_ = false;
    long d1_ = 0, d2_ = 0;
};

/// Isomorphism class of a line bundle: degree (+ reduced point on an elliptic
/// model, where D ~ (deg - 1) * O + P), or a bidegree on the product.
class DivisorClass {
   public:
    static DivisorClass of_degree(const CurveModel& m, long degree);
    static DivisorClass elliptic(const CurveModel& m, long degree, const CurvePoint& reduction);
    static DivisorClass of_bidegree(const CurveModel& m, long d1, long d2);
    static DivisorClass trivial(const CurveModel& m);

    const CurveModel& model() const { return model_; }
    long degree() const;  // d1 + d2 on the product
    std::pair<long, long> bidegree() const;
    const CurvePoint& reduction() const;  // elliptic only
    bool is_trivial() const;

    DivisorClass operator+(const DivisorClass& o) const;
    DivisorClass scaled(long n) const;
    bool operator==(const DivisorClass& o) const;
    bool operator!=(const DivisorClass& o) const { return !(*this == o); }
    bool operator<(const DivisorClass& o) const;
    std::string str() const;

    /// Torsion order of a degree-0 class, searching up to `bound`; nullopt if none.
    std::optional<int> torsion(int bound = 12) const;

   private:
    DivisorClass(CurveModel m, long degree, std::optional<CurvePoint> red, long d1, long d2)
        : model_(std::move(m)), degree_(degree), reduction_(std::move(red)), d1_(d1), d2_(d2) {}
    CurveModel model_;
    long degree_;
    std::optional<CurvePoint> reduction_;
    long d1_, d2_;
};

/// Reduce a divisor to its class. Two divisors on an elliptic model map to
/// equal classes iff their difference is principal.
DivisorClass class_reduce(const Divisor& d);

/// Canonical representative of a class with h^0 > 0 (elliptic: (d-1)*O + P).
Divisor canonical_representative(const DivisorClass& c);

}  // namespace iitaka

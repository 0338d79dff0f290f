#pragma once

#include <optional>
#include <vector>

#include "iitaka/curve.hpp"
#include "iitaka/elliptic_function.hpp"
#include "iitaka/locus.hpp"
#include "iitaka/matrix.hpp"

namespace iitaka {

/// One evaluation row plus its derivative rows along the model's canonical
/// local parameters (one on curves, two on the product).
struct FirstOrderJet {
    std::vector<Rational> value;
    std::vector<std::vector<Rational>> deriv;
};

/// Basis of H^0 of a line-bundle class on a model: monomials on P^1 / P^n /
/// P^1 x P^1, explicit function-field elements of L(D) on an elliptic model.
class SectionBasis {
   public:
    static SectionBasis for_divisor(const Divisor& d);
    static SectionBasis for_class(const DivisorClass& c);  // canonical representative

    const CurveModel& model() const { return model_; }
    const DivisorClass& bundle_class() const { return class_; }
    std::size_t dim() const;

    /// Section values at p in the canonical local trivialization at p.
    /// Exact at every rational point, including divisor supports and infinity.
    std::vector<Rational> values_at(const CurvePoint& p) const;

    /// Values plus first derivatives at a generic point (off supports; on an
    /// elliptic model, y(p) != 0 is required).
    FirstOrderJet jet_at(const CurvePoint& p) const;

    // raw forms
    const std::vector<EllipticFunction>& elliptic_basis() const;
    const Divisor& elliptic_divisor() const;
    /// Support of the representative divisor; empty on monomial models.
    std::vector<std::pair<CurvePoint, int>> elliptic_divisor_or_empty() const;
    std::vector<Polynomial> p1_polynomials() const;
    const std::vector<std::vector<int>>& monomial_exponents() const;

   private:
    SectionBasis(CurveModel m, DivisorClass c) : model_(std::move(m)), class_(std::move(c)) {}
    CurveModel model_;
    DivisorClass class_;
    std::vector<EllipticFunction> functions_;       // elliptic
    std::optional<Divisor> divisor_;                // elliptic
    std::vector<std::vector<int>> exponents_;       // monomial models
};

/// Basis of L(d) = { f : div(f) + d >= 0 }. On monomial models the basis
/// depends only on the class of d.
SectionBasis rr_space(const Divisor& d);

/// Shared, mutex-guarded cache of canonical-representative bases by class.
const SectionBasis& cached_basis(const DivisorClass& c);

long h0_of_class(const DivisorClass& c);
long h0_of_divisor(const Divisor& d);

/// Base locus of the complete linear system |d|: closed form, cross-checked
/// against common zeros of the rr_space basis on elliptic models.
LocusResult linear_system_base_locus(const Divisor& d);

/// Closed-form base locus by class (no cross-check; pipelines carry their own
/// sample-point rank checks).
LocusResult base_locus_of_class(const DivisorClass& c);

/// Iitaka dimension of a line-bundle class: -1 encodes k = -infinity.
int line_iitaka_dim(const DivisorClass& c);

/// Exact count of common zeros of the basis sections over the algebraic
/// closure (elliptic models), with the rational ones listed.
struct CommonZeros {
    long count = 0;
    std::vector<CurvePoint> rational_points;
};
CommonZeros count_common_section_zeros(const SectionBasis& basis);

/// Coordinates of g in the Q-span of the given functions, by coefficient
/// matching after clearing denominators; nullopt if g lies outside the span.
std::optional<std::vector<Rational>> coordinates_in_basis(
    const EllipticFunction& g, const std::vector<EllipticFunction>& basis);

namespace detail {

/// Count the points P of an elliptic model whose x-coordinate is a root of the
/// squarefree polynomial `s` (assumed free of the callers' special x-values)
/// and at which every u_i + v_i y vanishes.
long count_common_zeros_offspecial(const CurveModel& m, const Polynomial& s,
                                   const std::vector<std::pair<Polynomial, Polynomial>>& nums);

}  // namespace detail

}  // namespace iitaka

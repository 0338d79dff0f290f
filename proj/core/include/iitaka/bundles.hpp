#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iitaka/curve.hpp"
#include "iitaka/locus.hpp"
#include "iitaka/sections.hpp"

namespace iitaka {

/// Direct sum of line-bundle classes, each with a chosen divisor representative.
class SplitBundle {
   public:
    SplitBundle(CurveModel model, std::vector<Divisor> summands);
    static SplitBundle from_classes(const CurveModel& model,
                                    const std::vector<DivisorClass>& classes);

    const CurveModel& model() const { return model_; }
    int rank() const { return static_cast<int>(summands_.size()); }
    const std::vector<Divisor>& summand_divisors() const { return summands_; }
    const std::vector<DivisorClass>& summand_classes() const { return classes_; }
    std::string str() const;

   private:
    CurveModel model_;
    std::vector<Divisor> summands_;
    std::vector<DivisorClass> classes_;
};

struct SymComponent {
    std::vector<int> exponents;  // over summand indices, sum = m
    DivisorClass cls;
    std::string str() const;
};

/// Sym^m of a split bundle: one component per exponent multiset, enumerated in
/// lexicographic descending order; count = binomial(m + r - 1, m).
struct SymPower {
    int m = 0;
    std::vector<SymComponent> components;
};

long sigma_m(int r, int m);

SymPower sym_power(const SplitBundle& e, int m);

long h0_dim(const SplitBundle& e, int m);

/// Bs(Sym^m E): union of the component base loci (evaluation is block-diagonal
/// on a direct sum), cross-checked at sample points by exact rank computation.
LocusResult bs_locus(const SplitBundle& e, int m);

/// Intersection of Bs(Sym^m E) over m = 1..m_max, with an exact stabilization
/// certificate when one applies (see the certificate text on the result).
LocusResult stable_base_locus(const SplitBundle& e, int m_max);

enum class TwistSign { Plus, Minus };

/// B(E +- (p/q) A) = intersection over m of Bs(Sym^{mq} E (x) A^{+-mp}).
LocusResult twisted_locus(const SplitBundle& e, const DivisorClass& a, TwistSign sign, int p,
                          int q, int m_max);

/// B_+(E) = intersection over q of B(E - (1/q) A); early-stops on agreement.
LocusResult augmented_locus(const SplitBundle& e, const DivisorClass& a, int q_max, int m_max);
/// B_-(E) = union over q of B(E + (1/q) A).
LocusResult restricted_locus(const SplitBundle& e, const DivisorClass& a, int q_max, int m_max);

struct PositivityVerdict {
    bool nef = false;
    bool pseudo_effective = false;
    bool weakly_positive = false;
    bool agg = false;
    bool strongly_semiample = false;
    bool ample = false;
    bool strongly_big = false;
    LocusResult bs1 = LocusResult::empty();
    LocusResult stable = LocusResult::empty();
    LocusResult plus = LocusResult::empty();
    LocusResult minus = LocusResult::empty();
};

struct LociBounds {
    int m_max = 8;
    int q_max = 4;
};

/// Fill the positivity table from the four loci.
PositivityVerdict classify(const SplitBundle& e, const DivisorClass& a,
                           const LociBounds& bounds = {});

/// det E as a class; det(Sym^m E) = (det E)^N with N = m sigma_m(r) / r.
DivisorClass det_bundle(const SplitBundle& e);
DivisorClass det_sym(const SplitBundle& e, int m);
long det_sym_exponent(int r, int m);  // N

/// Base locus of the degree-m fiberwise forms on P(E) for split rank-2 E:
/// fiber base points can only sit at the two coordinate poles; each slot
/// records the locus in X over which that pole is a base point. The
/// whole-fiber slot covers points of X where no monomial survives.
struct PEBaseLocus {
    LocusResult at_first_pole = LocusResult::empty();
    LocusResult at_second_pole = LocusResult::empty();
    LocusResult whole_fiber = LocusResult::empty();
    bool empty() const;
    LocusResult projection() const;  // image in X
};

PEBaseLocus ope_global_generation(const SplitBundle& e, int m);

/// pi(Bs(O_{P(F)}(1))) for any split F: one locus per fiber coordinate plus
/// the projection; equals the union of the summand base loci.
std::vector<LocusResult> projectivized_level1_loci(const SplitBundle& f);

/// Default ample twist: O(o) on elliptic models, O(1) on P^1 / P^n, O(1,1)
/// on the product.
DivisorClass default_ample(const CurveModel& m);

}  // namespace iitaka

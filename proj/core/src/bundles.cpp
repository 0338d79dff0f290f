#include "iitaka/bundles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "iitaka/combinatorics.hpp"
#include "iitaka/errors.hpp"
#include "iitaka/matrix.hpp"

namespace iitaka {

SplitBundle::SplitBundle(CurveModel model, std::vector<Divisor> summands)
    : model_(std::move(model)), summands_(std::move(summands)) {
    if (summands_.empty()) throw std::invalid_argument("SplitBundle: rank >= 1 required");
    for (const auto& d : summands_) {
        if (!(d.model() == model_))
            throw std::invalid_argument("SplitBundle: summand on a different model");
        classes_.push_back(model_.kind() == ModelKind::ProjectiveSpace
                               ? DivisorClass::of_degree(model_, d.degree())
                               : class_reduce(d));
    }
}

SplitBundle SplitBundle::from_classes(const CurveModel& model,
                                      const std::vector<DivisorClass>& classes) {
    std::vector<Divisor> reps;
    reps.reserve(classes.size());
    for (const auto& c : classes) reps.push_back(canonical_representative(c));
    return SplitBundle(model, std::move(reps));
}

std::string SplitBundle::str() const {
    std::string s;
    for (std::size_t i = 0; i < classes_.size(); ++i)
        s += (i ? " + " : "") + std::string("O(") + classes_[i].str() + ")";
    return s;
}

std::string SymComponent::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < exponents.size(); ++i)
        s += (i ? "," : "") + std::to_string(exponents[i]);
    return s + ")";
}

long sigma_m(int r, int m) { return binomial(m + r - 1, m); }

SymPower sym_power(const SplitBundle& e, int m) {
    if (m < 1) throw std::invalid_argument("sym_power: m >= 1 required");
    SymPower s;
    s.m = m;
    for (const auto& exps : exponent_multisets(e.rank(), m)) {
        DivisorClass cls = DivisorClass::trivial(e.model());
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] != 0) cls = cls + e.summand_classes()[i].scaled(exps[i]);
        s.components.push_back({exps, cls});
    }
    if (static_cast<long>(s.components.size()) != sigma_m(e.rank(), m))
        throw std::logic_error("sym_power: component count != sigma_m(r)");
    return s;
}

namespace {

// degree data used by the stabilization certificates; on the product the
// relevant quantity is the minimum bidegree coordinate
long min_part(const DivisorClass& c) {
    if (c.model().kind() == ModelKind::ProductP1P1) {
        auto [d1, d2] = c.bidegree();
        return std::min(d1, d2);
    }
    return c.degree();
}

bool strictly_positive(const DivisorClass& c) { return min_part(c) >= 1; }

LocusResult bs_of_components(const std::vector<SymComponent>& components,
                             const DivisorClass* twist, int m_label) {
    LocusResult acc = LocusResult::empty();
    for (const auto& comp : components) {
        DivisorClass cls = twist ? comp.cls + *twist : comp.cls;
        LocusResult piece = base_locus_of_class(cls);
        if (piece.is_all()) {
            return LocusResult::all("m=" + std::to_string(m_label) + ": component " + comp.str() +
                                    " has class " + cls.str() + " with h0 = 0");
        }
        if (piece.is_finite()) {
            piece.set_certificate("m=" + std::to_string(m_label) + ": component " + comp.str() +
                                  " has degree-1 class " + cls.str());
            acc = LocusResult::set_union(acc, piece);
        }
    }
    if (acc.is_empty())
        acc.set_certificate("m=" + std::to_string(m_label) +
                            ": every component class is base-point free");
    return acc;
}

std::vector<CurvePoint> crosscheck_points(const SplitBundle& e) {
    const CurveModel& m = e.model();
    std::vector<CurvePoint> pts;
    switch (m.kind()) {
        case ModelKind::ProjectiveLine:
            for (long t : {0L, 1L, -1L, 2L}) pts.push_back(CurvePoint::p1_affine(m, Rational(t)));
            pts.push_back(CurvePoint::p1_infinity(m));
            break;
        case ModelKind::Elliptic: {
            std::set<CurvePoint> seen;
            seen.insert(CurvePoint::elliptic_origin(m));
            for (const auto& d : e.summand_divisors())
                for (const auto& [pt, mult] : d.support()) {
                    (void)mult;
                    seen.insert(pt);
                    seen.insert(ec_neg(pt));
                }
            std::vector<CurvePoint> base(seen.begin(), seen.end());
            for (std::size_t i = 0; i < base.size() && seen.size() < 8; ++i)
                for (std::size_t j = i; j < base.size() && seen.size() < 8; ++j)
                    if (!base[i].is_origin() && !base[j].is_origin())
                        seen.insert(ec_add(base[i], base[j]));
            pts.assign(seen.begin(), seen.end());
            break;
        }
        case ModelKind::ProductP1P1: {
            CurveModel line = CurveModel::projective_line();
            std::vector<CurvePoint> f = {CurvePoint::p1_affine(line, Rational(0)),
                                         CurvePoint::p1_affine(line, Rational(1)),
                                         CurvePoint::p1_infinity(line)};
            for (const auto& a : f)
                for (const auto& b : f) pts.push_back(CurvePoint::product(m, a, b));
            break;
        }
        case ModelKind::ProjectiveSpace: {
            std::vector<Rational> ones(static_cast<std::size_t>(m.n()) + 1, Rational(1));
            pts.push_back(CurvePoint::projective(m, ones));
            for (int k = 0; k <= m.n(); ++k) {
                std::vector<Rational> c(static_cast<std::size_t>(m.n()) + 1, Rational(0));
                c[static_cast<std::size_t>(k)] = Rational(1);
                pts.push_back(CurvePoint::projective(m, c));
            }
            break;
        }
    }
    if (pts.size() > 6) pts.erase(pts.begin() + 6, pts.end());
    return pts;
}

// Exact rank of the block-diagonal evaluation matrix at p vs the locus verdict.
void rank_crosscheck(const std::vector<SymComponent>& components, const DivisorClass* twist,
                     const LocusResult& locus, const std::vector<CurvePoint>& pts) {
    long total_cols = 0;
    std::vector<const SectionBasis*> bases;
    for (const auto& comp : components) {
        DivisorClass cls = twist ? comp.cls + *twist : comp.cls;
        bases.push_back(&cached_basis(cls));
        total_cols += static_cast<long>(bases.back()->dim());
    }
    if (total_cols > 48 || components.size() > 12) return;
    for (const auto& p : pts) {
        RationalMatrix mat(components.size(), static_cast<std::size_t>(total_cols));
        std::size_t col0 = 0;
        for (std::size_t i = 0; i < components.size(); ++i) {
            auto row = bases[i]->values_at(p);
            for (std::size_t j = 0; j < row.size(); ++j) mat.at(i, col0 + j) = row[j];
            col0 += row.size();
        }
        bool surjective = matrix_rank(mat) == components.size();
        if (surjective == locus.contains(p))
            throw std::logic_error("bs_locus: closed form disagrees with the evaluation rank at " +
                                   p.str());
    }
}

// Exact-periodicity data: lcm of the torsion orders of the degree-0 unit
// classes; nullopt when one of them is not torsion.
std::optional<int> torsion_period(const std::vector<DivisorClass>& zero_classes) {
    int t = 1;
    for (const auto& c : zero_classes) {
        auto o = c.torsion(12);
        if (!o) return std::nullopt;
        t = std::lcm(t, *o);
    }
    return t;
}

// Exactness certificate for the untwisted stable locus on an elliptic model
// with all summand degrees >= 0. R(m) = reachable degree-0 component classes
// with exponent total m. Since T * c_i is trivial, R(m) <= R(m + T); each
// residue class therefore climbs monotonically to its walk-reachability limit
// L_r, and once R(m) == L_{m mod T} it stays there, so every locus beyond
// m_max repeats a computed one and the intersection is exact.
bool zero_part_saturated(const std::vector<DivisorClass>& zero_classes, int t, int m_max) {
    if (zero_classes.empty()) return true;
    const CurveModel& model = zero_classes.front().model();
    auto key = [](const DivisorClass& c) { return c.str(); };

    // exact-step reachable sets R(0..m_max)
    std::vector<std::map<std::string, DivisorClass>> r(static_cast<std::size_t>(m_max) + 1);
    r[0].emplace(key(DivisorClass::trivial(model)), DivisorClass::trivial(model));
    for (int m = 1; m <= m_max; ++m)
        for (const auto& [k, g] : r[static_cast<std::size_t>(m - 1)]) {
            (void)k;
            for (const auto& c : zero_classes) {
                DivisorClass next = g + c;
                r[static_cast<std::size_t>(m)].emplace(key(next), next);
            }
        }

    // walk-reachability limits per residue mod t
    std::map<std::pair<std::string, int>, DivisorClass> seen;
    std::vector<std::pair<DivisorClass, int>> queue{{DivisorClass::trivial(model), 0}};
    seen.emplace(std::pair(key(DivisorClass::trivial(model)), 0), DivisorClass::trivial(model));
    while (!queue.empty()) {
        auto [g, res] = queue.back();
        queue.pop_back();
        for (const auto& c : zero_classes) {
            DivisorClass next = g + c;
            int nres = (res + 1) % t;
            if (seen.emplace(std::pair(key(next), nres), next).second)
                queue.emplace_back(next, nres);
        }
    }

    for (int res = 0; res < t; ++res) {
        int m_top = m_max - (m_max % t - res + t) % t;  // largest m <= m_max with m == res (mod t)
        if (m_top < 1) return false;
        std::size_t limit_count = 0;
        for (const auto& [k, g] : seen) {
            (void)g;
            if (k.second == res) ++limit_count;
        }
        if (r[static_cast<std::size_t>(m_top)].size() != limit_count) return false;
    }
    return true;
}

// Shared engine behind stable_base_locus and twisted_locus. `unit_classes`
// are the per-summand classes of one twist step (q L_i +- p A, or L_i itself
// for the untwisted stable locus); loci_at(m) computes the m-th base locus.
// `use_saturation` selects the reachable-set certificate (valid for the
// untwisted locus, where the degree-0 components are plain exponent sums).
template <typename LocusFn>
LocusResult asymptotic_intersection(const CurveModel& model,
                                    const std::vector<DivisorClass>& unit_classes, int m_max,
                                    LocusFn loci_at, bool use_saturation = false) {
    const bool elliptic = model.kind() == ModelKind::Elliptic;

    long min_unit = min_part(unit_classes.front());
    std::size_t min_index = 0;
    for (std::size_t i = 0; i < unit_classes.size(); ++i)
        if (min_part(unit_classes[i]) < min_unit) {
            min_unit = min_part(unit_classes[i]);
            min_index = i;
        }

    if (min_unit < 0) {
        LocusResult out = LocusResult::all(
            "summand " + std::to_string(min_index) + " yields the sectionless pure component " +
            unit_classes[min_index].str() + " scaled by m at every power");
        out.set_stabilized(true);
        return out;
    }

    if (min_unit >= 1) {
        // component degrees grow at least linearly in m; from m = 2 on the
        // loci are empty, so two terms decide the intersection
        LocusResult out = LocusResult::set_intersection(loci_at(1), loci_at(std::min(2, m_max)));
        out.set_certificate("all unit degrees >= 1: loci are empty from m = 2 on (" +
                            out.certificate() + ")");
        out.set_stabilized(m_max >= 2);
        return out;
    }

    // min_unit == 0
    if (!elliptic) {
        LocusResult out = loci_at(1);
        if (!out.is_empty())
            throw std::logic_error("asymptotic_intersection: effective classes on a monomial "
                                   "model must have empty base locus");
        out.set_certificate(
            "all unit degrees >= 0 on a monomial model: every component class is effective");
        out.set_stabilized(true);
        return out;
    }

    std::vector<DivisorClass> zero_classes;
    for (const auto& c : unit_classes)
        if (c.degree() == 0) zero_classes.push_back(c);
    std::optional<int> period = torsion_period(zero_classes);

    auto partial = [&](int upto, bool stab, const std::string& cert) {
        std::vector<LocusResult> all{loci_at(1)};
        LocusResult acc = all.front();
        for (int m = 2; m <= upto; ++m) {
            all.push_back(loci_at(m));
            acc = LocusResult::set_intersection(acc, all.back());
        }
        if (stab && period && !use_saturation) {
            // the window certificate promises literal periodicity on the tail
            int t = *period;
            for (int m = upto - t + 1; m <= upto; ++m)
                if (m - t >= 1 &&
                    !all[static_cast<std::size_t>(m - 1)].same_set(
                        all[static_cast<std::size_t>(m - t - 1)]))
                    throw std::logic_error(
                        "asymptotic_intersection: expected periodicity failed at m = " +
                        std::to_string(m));
        }
        acc.set_stabilized(stab);
        acc.set_certificate(cert);
        return acc;
    };

    if (!period)
        return partial(m_max, false,
                       "a degree-0 unit class is not torsion: partial intersection up to m_max = " +
                           std::to_string(m_max));

    int t = *period;
    if (use_saturation) {
        if (zero_part_saturated(zero_classes, t, m_max))
            return partial(m_max, true,
                           "degree-0 classes are torsion (lcm of orders " + std::to_string(t) +
                               ") with reachable class sets saturated inside m_max = " +
                               std::to_string(m_max) + ": later loci repeat computed ones");
        return partial(m_max, false,
                       "degree-0 class sets not yet saturated within m_max = " +
                           std::to_string(m_max) + ": partial intersection");
    }
    int window = static_cast<int>(zero_classes.size()) * t + t;
    if (window > m_max)
        return partial(m_max, false,
                       "periodic window " + std::to_string(window) + " exceeds m_max = " +
                           std::to_string(m_max) + ": partial intersection");
    return partial(m_max, true,
                   "degree-0 unit classes are torsion with lcm of orders " + std::to_string(t) +
                       ": loci are periodic with full window " + std::to_string(window) +
                       " inside m_max");
}

}  // namespace

long h0_dim(const SplitBundle& e, int m) {
    long total = 0;
    for (const auto& comp : sym_power(e, m).components) total += h0_of_class(comp.cls);
    return total;
}

LocusResult bs_locus(const SplitBundle& e, int m) {
    SymPower s = sym_power(e, m);
    LocusResult out = bs_of_components(s.components, nullptr, m);
    rank_crosscheck(s.components, nullptr, out, crosscheck_points(e));
    return out;
}

LocusResult stable_base_locus(const SplitBundle& e, int m_max) {
    if (m_max < 2) throw std::invalid_argument("stable_base_locus: m_max >= 2 required");
    return asymptotic_intersection(
        e.model(), e.summand_classes(), m_max, [&](int m) { return bs_locus(e, m); },
        /*use_saturation=*/true);
}

LocusResult twisted_locus(const SplitBundle& e, const DivisorClass& a, TwistSign sign, int p,
                          int q, int m_max) {
    if (!(a.model() == e.model())) throw std::invalid_argument("twisted_locus: model mismatch");
    if (!strictly_positive(a))
        throw not_ample_error("twisted_locus: twist class " + a.str() + " is not ample");
    if (p < 1 || q < 1 || std::gcd(p, q) != 1)
        throw std::invalid_argument("twisted_locus: p, q must be positive and coprime");

    const long sgn = sign == TwistSign::Plus ? 1 : -1;
    std::vector<DivisorClass> units;
    for (const auto& c : e.summand_classes()) units.push_back(c.scaled(q) + a.scaled(sgn * p));

    auto loci_at = [&](int m) {
        SymPower s = sym_power(e, m * q);
        DivisorClass twist = a.scaled(sgn * m * p);
        LocusResult out = bs_of_components(s.components, &twist, m);
        rank_crosscheck(s.components, &twist, out, crosscheck_points(e));
        return out;
    };
    return asymptotic_intersection(e.model(), units, m_max, loci_at);
}

namespace {

// Smallest q from which the sign pattern of the twisted unit degrees is
// constant in q; beyond it the per-q loci stop changing.
int sign_threshold(const SplitBundle& e, const DivisorClass& a, TwistSign sign) {
    auto parts_of = [](const DivisorClass& c) {
        std::vector<long> parts;
        if (c.model().kind() == ModelKind::ProductP1P1) {
            auto [d1, d2] = c.bidegree();
            parts = {d1, d2};
        } else {
            parts = {c.degree()};
        }
        return parts;
    };
    std::vector<long> twist_parts = parts_of(a);
    long q_star = 1;
    for (const auto& c : e.summand_classes()) {
        std::vector<long> parts = parts_of(c);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            long d = parts[i];
            long aa = twist_parts[i % twist_parts.size()];
            if (sign == TwistSign::Minus && d > 0) q_star = std::max(q_star, aa / d + 1);
            if (sign == TwistSign::Plus && d < 0) q_star = std::max(q_star, aa / (-d) + 1);
        }
    }
    return static_cast<int>(q_star);
}

}  // namespace

LocusResult augmented_locus(const SplitBundle& e, const DivisorClass& a, int q_max, int m_max) {
    int q_star = sign_threshold(e, a, TwistSign::Minus);
    LocusResult prev = twisted_locus(e, a, TwistSign::Minus, 1, 1, m_max);
    LocusResult acc = prev;
    bool agreed = q_max == 1;
    for (int q = 2; q <= q_max; ++q) {
        LocusResult cur = twisted_locus(e, a, TwistSign::Minus, 1, q, m_max);
        if (!cur.subset_of(prev))
            throw std::logic_error("augmented_locus: monotonicity of B(E - A/q) failed at q = " +
                                   std::to_string(q));
        acc = LocusResult::set_intersection(acc, cur);
        agreed = cur.same_set(prev);
        prev = cur;
        if (agreed && q >= q_star && cur.stabilized()) break;
    }
    bool exact = agreed && acc.stabilized() && q_max >= q_star;
    acc.set_stabilized(exact);
    acc.set_certificate(std::string("B+ as intersection of B(E - (1/q)A); ") +
                        (exact ? "sign pattern constant from q = " + std::to_string(q_star) +
                                     " and consecutive loci agree; last term: " + prev.certificate()
                               : "partial up to q_max = " + std::to_string(q_max)));
    return acc;
}

LocusResult restricted_locus(const SplitBundle& e, const DivisorClass& a, int q_max, int m_max) {
    int q_star = sign_threshold(e, a, TwistSign::Plus);
    LocusResult prev = twisted_locus(e, a, TwistSign::Plus, 1, 1, m_max);
    LocusResult acc = prev;
    bool agreed = q_max == 1;
    for (int q = 2; q <= q_max; ++q) {
        LocusResult cur = twisted_locus(e, a, TwistSign::Plus, 1, q, m_max);
        if (!prev.subset_of(cur))
            throw std::logic_error("restricted_locus: monotonicity of B(E + A/q) failed at q = " +
                                   std::to_string(q));
        acc = LocusResult::set_union(acc, cur);
        agreed = cur.same_set(prev);
        prev = cur;
        if (agreed && q >= q_star && cur.stabilized()) break;
    }
    bool exact = agreed && acc.stabilized() && q_max >= q_star;
    acc.set_stabilized(exact);
    acc.set_certificate(std::string("B- as union of B(E + (1/q)A); ") +
                        (exact ? "sign pattern constant from q = " + std::to_string(q_star) +
                                     " and consecutive loci agree; last term: " + prev.certificate()
                               : "partial up to q_max = " + std::to_string(q_max)));
    return acc;
}

PositivityVerdict classify(const SplitBundle& e, const DivisorClass& a, const LociBounds& bounds) {
    PositivityVerdict v;
    v.bs1 = bs_locus(e, 1);
    v.stable = stable_base_locus(e, bounds.m_max);
    v.plus = augmented_locus(e, a, bounds.q_max, bounds.m_max);
    v.minus = restricted_locus(e, a, bounds.q_max, bounds.m_max);

    v.nef = v.minus.is_empty();
    v.strongly_semiample = v.stable.is_empty();
    v.ample = v.plus.is_empty();
    v.pseudo_effective = !v.minus.is_all();
    // finite rational point sets are closed, so the closure column coincides
    v.weakly_positive = v.pseudo_effective;
    v.agg = !v.stable.is_all();
    v.strongly_big = !v.plus.is_all();
    return v;
}

DivisorClass det_bundle(const SplitBundle& e) {
    DivisorClass d = DivisorClass::trivial(e.model());
    for (const auto& c : e.summand_classes()) d = d + c;
    return d;
}

long det_sym_exponent(int r, int m) {
    long s = sigma_m(r, m);
    if ((static_cast<long>(m) * s) % r != 0)
        throw std::logic_error("det_sym_exponent: m * sigma not divisible by rank");
    return static_cast<long>(m) * s / r;
}

DivisorClass det_sym(const SplitBundle& e, int m) {
    DivisorClass d = DivisorClass::trivial(e.model());
    for (const auto& comp : sym_power(e, m).components) d = d + comp.cls;
    DivisorClass expected = det_bundle(e).scaled(det_sym_exponent(e.rank(), m));
    if (!(d == expected))
        throw std::logic_error("det_sym: det(S^m E) != (det E)^N with N = m sigma / r");
    return d;
}

bool PEBaseLocus::empty() const {
    return at_first_pole.is_empty() && at_second_pole.is_empty() && whole_fiber.is_empty();
}

LocusResult PEBaseLocus::projection() const {
    return LocusResult::set_union(LocusResult::set_union(at_first_pole, at_second_pole),
                                  whole_fiber);
}

PEBaseLocus ope_global_generation(const SplitBundle& e, int m) {
    if (e.rank() != 2)
        throw std::invalid_argument("ope_global_generation: split rank-2 bundle required");
    SymPower s = sym_power(e, m);
    PEBaseLocus out;
    // fiber coordinates (u : w); only u^m survives at (1:0), only w^m at (0:1)
    out.at_first_pole = base_locus_of_class(e.summand_classes()[0].scaled(m));
    out.at_first_pole.set_certificate("monomial u^" + std::to_string(m) + " comes from class " +
                                      e.summand_classes()[0].scaled(m).str());
    out.at_second_pole = base_locus_of_class(e.summand_classes()[1].scaled(m));
    out.at_second_pole.set_certificate("monomial w^" + std::to_string(m) + " comes from class " +
                                       e.summand_classes()[1].scaled(m).str());
    LocusResult everything = LocusResult::all("");
    for (const auto& comp : s.components)
        everything = LocusResult::set_intersection(everything, base_locus_of_class(comp.cls));
    out.whole_fiber = everything;
    out.whole_fiber.set_certificate("points of X where no fiberwise monomial is available");
    return out;
}

std::vector<LocusResult> projectivized_level1_loci(const SplitBundle& f) {
    std::vector<LocusResult> out;
    for (const auto& c : f.summand_classes()) out.push_back(base_locus_of_class(c));
    return out;
}

DivisorClass default_ample(const CurveModel& m) {
    switch (m.kind()) {
        case ModelKind::Elliptic:
            return DivisorClass::elliptic(m, 1, CurvePoint::elliptic_origin(m));
        case ModelKind::ProjectiveLine:
        case ModelKind::ProjectiveSpace:
            return DivisorClass::of_degree(m, 1);
        case ModelKind::ProductP1P1:
            return DivisorClass::of_bidegree(m, 1, 1);
    }
    throw unsupported_model_error("default_ample: unknown model");
}

}  // namespace iitaka

#include "iitaka/sections.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "iitaka/combinatorics.hpp"
#include "iitaka/errors.hpp"
#include "iitaka/power_series.hpp"

namespace iitaka {

long h0_of_class(const DivisorClass& c) {
    switch (c.model().kind()) {
        case ModelKind::Elliptic:
            if (c.degree() < 0) return 0;
            if (c.degree() == 0) return c.is_trivial() ? 1 : 0;
            return c.degree();
        case ModelKind::ProjectiveLine:
            return c.degree() >= 0 ? c.degree() + 1 : 0;
        case ModelKind::ProjectiveSpace:
            return c.degree() >= 0 ? binomial(c.degree() + c.model().n(), c.model().n()) : 0;
        case ModelKind::ProductP1P1: {
            auto [d1, d2] = c.bidegree();
            return (d1 >= 0 && d2 >= 0) ? (d1 + 1) * (d2 + 1) : 0;
        }
    }
    throw unsupported_model_error("h0_of_class: unknown model");
}

long h0_of_divisor(const Divisor& d) {
    if (d.model().kind() == ModelKind::ProjectiveSpace)
        return h0_of_class(DivisorClass::of_degree(d.model(), d.degree()));
    return h0_of_class(class_reduce(d));
}

namespace {

// Elliptic L(D) by ansatz f = (u(x) + v(x) y) / c(x): c clears the allowed
// finite poles, vanishing conditions are imposed as exact linear constraints
// on Laurent coefficients, and a kernel computation extracts the basis.
std::vector<EllipticFunction> elliptic_rr_basis(const Divisor& d, long h_expected) {
    const CurveModel& m = d.model();
    if (h_expected == 0) return {};

    // c(x) = prod over distinct finite support x-values with positive mult
    std::map<Rational, int> c_exp;  // x-value -> exponent
    for (const auto& [pt, mult] : d.support()) {
        if (pt.is_origin() || mult <= 0) continue;
        int need = pt.y().is_zero() ? (mult + 1) / 2 : mult;
        auto [it, inserted] = c_exp.try_emplace(pt.x(), need);
        if (!inserted) it->second = std::max(it->second, need);
    }
    Polynomial c{Rational(1)};
    long deg_c = 0;
    for (const auto& [x0, e] : c_exp) {
        c *= Polynomial{-x0, Rational(1)}.pow(static_cast<unsigned>(e));
        deg_c += e;
    }

    const long deg_d = d.degree();
    const int n_o = d.multiplicity_at(CurvePoint::elliptic_origin(m));
    long du = deg_c + (std::max(deg_d, 0L) + 1) / 2 + 1;
    du = std::max(du, deg_c + std::max(n_o, 0) / 2 + 1);
    const long dv = du;
    const std::size_t nu = static_cast<std::size_t>(du) + 1;
    const std::size_t nv = static_cast<std::size_t>(dv) + 1;
    const std::size_t unknowns = nu + nv;

    // condition points: supports, conjugates of finite supports, and the origin
    std::set<CurvePoint> cond_points;
    cond_points.insert(CurvePoint::elliptic_origin(m));
    for (const auto& [pt, mult] : d.support()) {
        (void)mult;
        cond_points.insert(pt);
        if (!pt.is_origin()) cond_points.insert(ec_neg(pt));
    }

    std::vector<std::vector<Rational>> rows;
    for (const auto& p : cond_points) {
        const int n_p = d.multiplicity_at(p);
        if (p.is_origin()) {
            const long r_o = -n_p - 2 * deg_c;
            const long lowmost = std::min(-2 * du, -2 * dv - 3);
            if (r_o <= lowmost) continue;
            const std::size_t prec =
                static_cast<std::size_t>(r_o - lowmost) + 2 * static_cast<std::size_t>(du) + 8;
            LaurentSeries x = x_expansion_at(p, prec);
            LaurentSeries y = y_expansion_at(p, prec);
            std::vector<LaurentSeries> xpow, xypow;
            LaurentSeries acc(0, PowerSeries::constant(Rational(1), prec));
            for (std::size_t j = 0; j < std::max(nu, nv); ++j) {
                xpow.push_back(acc);
                xypow.push_back(acc * y);
                acc = acc * x;
            }
            for (long e = lowmost; e < r_o; ++e) {
                std::vector<Rational> row(unknowns);
                bool nonzero = false;
                for (std::size_t j = 0; j < nu; ++j) {
                    Rational cc = e < xpow[j].window_begin() ? Rational(0)
                                                             : xpow[j].coeff(static_cast<int>(e));
                    row[j] = cc;
                    nonzero = nonzero || !cc.is_zero();
                }
                for (std::size_t j = 0; j < nv; ++j) {
                    Rational cc = e < xypow[j].window_begin() ? Rational(0)
                                                              : xypow[j].coeff(static_cast<int>(e));
                    row[nu + j] = cc;
                    nonzero = nonzero || !cc.is_zero();
                }
                if (nonzero) rows.push_back(std::move(row));
            }
        } else {
            // val_P(c) from the x-factor exponents
            auto it = c_exp.find(p.x());
            const long val_c = it == c_exp.end() ? 0 : it->second * (p.y().is_zero() ? 2 : 1);
            const long r_p = val_c - n_p;
            if (r_p <= 0) continue;
            const std::size_t prec = static_cast<std::size_t>(r_p) + 4;
            LaurentSeries x = x_expansion_at(p, prec);
            LaurentSeries y = y_expansion_at(p, prec);
            std::vector<LaurentSeries> xpow, xypow;
            LaurentSeries acc(0, PowerSeries::constant(Rational(1), prec));
            for (std::size_t j = 0; j < std::max(nu, nv); ++j) {
                xpow.push_back(acc);
                xypow.push_back(acc * y);
                acc = acc * x;
            }
            for (long e = 0; e < r_p; ++e) {
                std::vector<Rational> row(unknowns);
                for (std::size_t j = 0; j < nu; ++j)
                    row[j] = e < xpow[j].window_begin() ? Rational(0)
                                                        : xpow[j].coeff(static_cast<int>(e));
                for (std::size_t j = 0; j < nv; ++j)
                    row[nu + j] = e < xypow[j].window_begin()
                                      ? Rational(0)
                                      : xypow[j].coeff(static_cast<int>(e));
                rows.push_back(std::move(row));
            }
        }
    }

    RationalMatrix constraints(rows.size(), unknowns);
    for (std::size_t i = 0; i < rows.size(); ++i) constraints.set_row(i, rows[i]);
    RationalMatrix kernel = kernel_basis(constraints);
    if (static_cast<long>(kernel.cols()) != h_expected)
        throw std::logic_error("rr_space: kernel dimension " + std::to_string(kernel.cols()) +
                               " != Riemann-Roch dimension " + std::to_string(h_expected) +
                               " for D = " + d.str());

    std::vector<EllipticFunction> basis;
    for (std::size_t k = 0; k < kernel.cols(); ++k) {
        std::vector<Rational> uc(nu), vc(nv);
        for (std::size_t j = 0; j < nu; ++j) uc[j] = kernel.at(j, k);
        for (std::size_t j = 0; j < nv; ++j) vc[j] = kernel.at(nu + j, k);
        basis.emplace_back(m, Polynomial(std::move(uc)), Polynomial(std::move(vc)), c);
    }
    return basis;
}

}  // namespace

SectionBasis SectionBasis::for_divisor(const Divisor& d) {
    const CurveModel& m = d.model();
    DivisorClass cls = m.kind() == ModelKind::ProjectiveSpace
                           ? DivisorClass::of_degree(m, d.degree())
                           : class_reduce(d);
    SectionBasis b(m, cls);
    long h = h0_of_class(cls);
    switch (m.kind()) {
        case ModelKind::Elliptic:
            b.divisor_ = d;
            b.functions_ = elliptic_rr_basis(d, h);
            break;
        case ModelKind::ProjectiveLine:
            if (h > 0)
                for (long i = 0; i <= cls.degree(); ++i) b.exponents_.push_back({static_cast<int>(i)});
            break;
        case ModelKind::ProjectiveSpace:
            if (h > 0) b.exponents_ = exponent_multisets(m.n() + 1, static_cast<int>(cls.degree()));
            break;
        case ModelKind::ProductP1P1: {
            auto [d1, d2] = cls.bidegree();
            if (h > 0)
                for (long i = 0; i <= d1; ++i)
                    for (long j = 0; j <= d2; ++j)
                        b.exponents_.push_back({static_cast<int>(i), static_cast<int>(j)});
            break;
        }
    }
    return b;
}

SectionBasis SectionBasis::for_class(const DivisorClass& c) {
    return for_divisor(canonical_representative(c));
}

SectionBasis rr_space(const Divisor& d) { return SectionBasis::for_divisor(d); }

const SectionBasis& cached_basis(const DivisorClass& c) {
    static std::mutex mu;
    static std::map<std::string, SectionBasis> cache;
    std::string key = c.model().str() + "|" + c.str();
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, SectionBasis::for_class(c)).first;
    return it->second;
}

std::size_t SectionBasis::dim() const {
    return model_.kind() == ModelKind::Elliptic ? functions_.size() : exponents_.size();
}

const std::vector<EllipticFunction>& SectionBasis::elliptic_basis() const {
    if (model_.kind() != ModelKind::Elliptic)
        throw std::invalid_argument("elliptic_basis: wrong model");
    return functions_;
}

const Divisor& SectionBasis::elliptic_divisor() const {
    if (!divisor_) throw std::invalid_argument("elliptic_divisor: wrong model");
    return *divisor_;
}

std::vector<std::pair<CurvePoint, int>> SectionBasis::elliptic_divisor_or_empty() const {
    return divisor_ ? divisor_->support() : std::vector<std::pair<CurvePoint, int>>{};
}

std::vector<Polynomial> SectionBasis::p1_polynomials() const {
    if (model_.kind() != ModelKind::ProjectiveLine)
        throw std::invalid_argument("p1_polynomials: wrong model");
    std::vector<Polynomial> out;
    for (const auto& e : exponents_) out.push_back(Polynomial::monomial(static_cast<std::size_t>(e[0])));
    return out;
}

const std::vector<std::vector<int>>& SectionBasis::monomial_exponents() const { return exponents_; }

namespace {

Rational p1_monomial_value(int exp, int cap, const CurvePoint& p) {
    if (p.is_p1_infinity()) return Rational(exp == cap ? 1 : 0);
    return p.affine().pow(exp);
}

}  // namespace

std::vector<Rational> SectionBasis::values_at(const CurvePoint& p) const {
    if (!(p.model() == model_)) throw std::invalid_argument("values_at: point on wrong model");
    std::vector<Rational> row;
    switch (model_.kind()) {
        case ModelKind::ProjectiveLine: {
            int cap = static_cast<int>(class_.degree());
            for (const auto& e : exponents_) row.push_back(p1_monomial_value(e[0], cap, p));
            return row;
        }
        case ModelKind::ProjectiveSpace: {
            for (const auto& e : exponents_) {
                Rational v(1);
                for (std::size_t k = 0; k < e.size(); ++k) v *= p.coords()[k].pow(e[k]);
                row.push_back(v);
            }
            return row;
        }
        case ModelKind::ProductP1P1: {
            auto [d1, d2] = class_.bidegree();
            CurvePoint f0 = p.factor(0), f1 = p.factor(1);
            for (const auto& e : exponents_)
                row.push_back(p1_monomial_value(e[0], static_cast<int>(d1), f0) *
                              p1_monomial_value(e[1], static_cast<int>(d2), f1));
            return row;
        }
        case ModelKind::Elliptic: {
            const int n_p = divisor_->multiplicity_at(p);
            for (const auto& f : functions_) {
                bool generic = !p.is_origin() && n_p == 0 && !f.den().eval(p.x()).is_zero();
                if (generic) {
                    row.push_back(f.eval(p));
                    continue;
                }
                // coefficient of t^{-n_p} in the Laurent expansion (t is a uniformizer)
                std::size_t prec = 2 * static_cast<std::size_t>(
                                           std::max({f.u().degree(), f.v().degree() + 2,
                                                     f.den().degree(), std::abs(n_p), 1})) +
                                   8;
                Rational value;
                bool done = false;
                for (int attempt = 0; attempt < 5 && !done; ++attempt, prec *= 2) {
                    LaurentSeries s = expand_at(f, p, prec);
                    if (-n_p < s.window_begin()) {
                        value = Rational(0);
                        done = true;
                    } else if (-n_p < s.window_end()) {
                        value = s.coeff(-n_p);
                        done = true;
                    }
                }
                if (!done) throw precision_error("values_at: precision exhausted");
                row.push_back(value);
            }
            return row;
        }
    }
    throw unsupported_model_error("values_at: unknown model");
}

FirstOrderJet SectionBasis::jet_at(const CurvePoint& p) const {
    FirstOrderJet jet;
    switch (model_.kind()) {
        case ModelKind::ProjectiveLine: {
            if (p.is_p1_infinity()) throw std::invalid_argument("jet_at: affine point required");
            Rational t = p.affine();
            jet.deriv.resize(1);
            for (const auto& e : exponents_) {
                jet.value.push_back(t.pow(e[0]));
                jet.deriv[0].push_back(e[0] == 0 ? Rational(0)
                                                 : Rational(e[0]) * t.pow(e[0] - 1));
            }
            return jet;
        }
        case ModelKind::ProductP1P1: {
            CurvePoint f0 = p.factor(0), f1 = p.factor(1);
            if (f0.is_p1_infinity() || f1.is_p1_infinity())
                throw std::invalid_argument("jet_at: affine point required");
            Rational a = f0.affine(), b = f1.affine();
            jet.deriv.resize(2);
            for (const auto& e : exponents_) {
                jet.value.push_back(a.pow(e[0]) * b.pow(e[1]));
                jet.deriv[0].push_back(e[0] == 0 ? Rational(0)
                                                 : Rational(e[0]) * a.pow(e[0] - 1) * b.pow(e[1]));
                jet.deriv[1].push_back(e[1] == 0 ? Rational(0)
                                                 : Rational(e[1]) * a.pow(e[0]) * b.pow(e[1] - 1));
            }
            return jet;
        }
        case ModelKind::Elliptic: {
            if (p.is_origin() || p.y().is_zero())
                throw std::invalid_argument("jet_at: generic elliptic point required");
            if (divisor_->multiplicity_at(p) != 0)
                throw std::invalid_argument("jet_at: point lies in the divisor support");
            jet.deriv.resize(1);
            for (const auto& f : functions_) {
                LaurentSeries s = expand_at(f, p, 4);
                jet.value.push_back(s.window_begin() <= 0 ? s.coeff(0) : Rational(0));
                jet.deriv[0].push_back(s.window_begin() <= 1 && s.window_end() > 1 ? s.coeff(1)
                                                                                   : Rational(0));
            }
            return jet;
        }
        case ModelKind::ProjectiveSpace:
            throw unsupported_model_error("jet_at: not provided on P^n");
    }
    throw unsupported_model_error("jet_at: unknown model");
}

LocusResult base_locus_of_class(const DivisorClass& c) {
    switch (c.model().kind()) {
        case ModelKind::Elliptic: {
            long d = c.degree();
            if (d < 0) return LocusResult::all("negative degree: h0 = 0");
            if (d == 0)
                return c.is_trivial() ? LocusResult::empty("trivial class")
                                      : LocusResult::all("nontrivial degree-0 class: h0 = 0");
            if (d == 1)
                return LocusResult::finite({c.reduction()},
                                           "unique effective divisor in a degree-1 class");
            return LocusResult::empty("degree >= 2 on an elliptic curve: base-point free");
        }
        case ModelKind::ProjectiveLine:
        case ModelKind::ProjectiveSpace:
            return c.degree() >= 0 ? LocusResult::empty("monomial system contains 1")
                                   : LocusResult::all("negative degree: h0 = 0");
        case ModelKind::ProductP1P1: {
            auto [d1, d2] = c.bidegree();
            return (d1 >= 0 && d2 >= 0)
                       ? LocusResult::empty("monomial system contains 1")
                       : LocusResult::all("bidegree with a negative entry: h0 = 0");
        }
    }
    throw unsupported_model_error("base_locus_of_class: unknown model");
}

std::optional<std::vector<Rational>> coordinates_in_basis(
    const EllipticFunction& g, const std::vector<EllipticFunction>& basis) {
    if (basis.empty()) return g.is_zero() ? std::optional<std::vector<Rational>>({}) : std::nullopt;
    Polynomial common = g.den();
    for (const auto& f : basis) common = poly_lcm(common, f.den());
    auto cleared = [&](const EllipticFunction& f) {
        Polynomial scale = common / f.den();
        return std::pair(f.u() * scale, f.v() * scale);
    };
    auto [gu, gv] = cleared(g);
    int max_u = gu.degree(), max_v = gv.degree();
    std::vector<std::pair<Polynomial, Polynomial>> cb;
    for (const auto& f : basis) {
        cb.push_back(cleared(f));
        max_u = std::max(max_u, cb.back().first.degree());
        max_v = std::max(max_v, cb.back().second.degree());
    }
    const std::size_t ru = static_cast<std::size_t>(max_u + 1), rv = static_cast<std::size_t>(max_v + 1);
    RationalMatrix a(ru + rv, basis.size());
    std::vector<Rational> rhs(ru + rv);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        for (std::size_t i = 0; i < ru; ++i) a.at(i, k) = cb[k].first.coeff(i);
        for (std::size_t i = 0; i < rv; ++i) a.at(ru + i, k) = cb[k].second.coeff(i);
    }
    for (std::size_t i = 0; i < ru; ++i) rhs[i] = gu.coeff(i);
    for (std::size_t i = 0; i < rv; ++i) rhs[ru + i] = gv.coeff(i);
    bool ok = false;
    std::vector<Rational> x = solve_linear(a, rhs, &ok);
    if (!ok) return std::nullopt;
    return x;
}

namespace detail {

long count_common_zeros_offspecial(const CurveModel& m, const Polynomial& s,
                                   const std::vector<std::pair<Polynomial, Polynomial>>& nums) {
    if (s.is_zero() || s.degree() <= 0) return 0;
    Polynomial c = s;
    for (const auto& [u, v] : nums) {
        c = poly_gcd(c, u);
        c = poly_gcd(c, v);
        if (c.degree() <= 0) break;
    }
    Polynomial c_ram = c.degree() > 0 ? poly_gcd(c, m.rhs_poly()) : Polynomial{Rational(1)};
    long count = 0;
    if (c.degree() > 0)
        count += 2 * (c.degree() - std::max(c_ram.degree(), 0)) + std::max(c_ram.degree(), 0);
    Polynomial rest = c.degree() > 0 ? (s / c).monic() : s;
    if (rest.degree() > 0) {
        Polynomial dpart = rest;
        for (std::size_t i = 0; i < nums.size() && dpart.degree() > 0; ++i)
            for (std::size_t j = i + 1; j < nums.size() && dpart.degree() > 0; ++j) {
                Polynomial cross = nums[i].first * nums[j].second - nums[j].first * nums[i].second;
                if (cross.is_zero()) continue;
                dpart = poly_gcd(dpart, cross);
            }
        count += std::max(dpart.degree(), 0);
    }
    return count;
}

}  // namespace detail

CommonZeros count_common_section_zeros(const SectionBasis& basis) {
    CommonZeros out;
    const CurveModel& m = basis.model();
    if (basis.dim() == 0) throw std::invalid_argument("count_common_section_zeros: empty basis");
    if (m.kind() != ModelKind::Elliptic) {
        // monomial bases contain the constant section: no common zeros
        return out;
    }
    const auto& fns = basis.elliptic_basis();
    std::vector<std::pair<Polynomial, Polynomial>> nums;
    for (const auto& f : fns) nums.emplace_back(f.u(), f.v());

    Polynomial g;
    bool first = true;
    for (const auto& f : fns) {
        Polynomial nrm = f.u() * f.u() - f.v() * f.v() * m.rhs_poly();
        g = first ? nrm : poly_gcd(g, nrm);
        first = false;
    }
    // explicit checks at supports, their conjugates, and the origin;
    // peel their x-values so the degree bookkeeping never double-counts
    std::set<CurvePoint> special;
    special.insert(CurvePoint::elliptic_origin(m));
    for (const auto& [pt, mult] : basis.elliptic_divisor().support()) {
        (void)mult;
        special.insert(pt);
        if (!pt.is_origin()) special.insert(ec_neg(pt));
    }
    Polynomial s = g.degree() > 0 ? squarefree_part(g) : Polynomial{Rational(1)};
    for (const auto& p : special) {
        if (!p.is_origin()) s = remove_root(s, p.x());
        auto row = basis.values_at(p);
        if (std::all_of(row.begin(), row.end(), [](const Rational& r) { return r.is_zero(); })) {
            ++out.count;
            out.rational_points.push_back(p);
        }
    }
    out.count += detail::count_common_zeros_offspecial(m, s, nums);
    return out;
}

LocusResult linear_system_base_locus(const Divisor& d) {
    DivisorClass cls = d.model().kind() == ModelKind::ProjectiveSpace
                           ? DivisorClass::of_degree(d.model(), d.degree())
                           : class_reduce(d);
    LocusResult closed = base_locus_of_class(cls);
    if (d.model().kind() == ModelKind::Elliptic && h0_of_class(cls) > 0 && d.degree() <= 8) {
        SectionBasis basis = rr_space(d);
        CommonZeros cz = count_common_section_zeros(basis);
        long expected = closed.is_empty() ? 0 : static_cast<long>(closed.points().size());
        bool match = !closed.is_all() && cz.count == expected;
        for (const auto& p : closed.points()) {
            auto row = basis.values_at(p);
            match = match && std::all_of(row.begin(), row.end(),
                                         [](const Rational& r) { return r.is_zero(); });
        }
        if (!match)
            throw std::logic_error("linear_system_base_locus: closed form disagrees with "
                                   "common zeros of the rr_space basis for D = " +
                                   d.str());
    }
    return closed;
}

int line_iitaka_dim(const DivisorClass& c) {
    switch (c.model().kind()) {
        case ModelKind::Elliptic: {
            if (c.degree() > 0) return 1;
            if (c.degree() < 0) return -1;
            if (c.is_trivial()) return 0;
            if (c.torsion(12)) return 0;
            throw non_torsion_error(
                "line_iitaka_dim: degree-0 class is not torsion (order > 12 impossible over Q)");
        }
        case ModelKind::ProjectiveLine:
            return c.degree() > 0 ? 1 : (c.degree() == 0 ? 0 : -1);
        case ModelKind::ProjectiveSpace:
            return c.degree() > 0 ? c.model().n() : (c.degree() == 0 ? 0 : -1);
        case ModelKind::ProductP1P1: {
            auto [d1, d2] = c.bidegree();
            if (d1 < 0 || d2 < 0) return -1;
            return (d1 > 0 ? 1 : 0) + (d2 > 0 ? 1 : 0);
        }
    }
    throw unsupported_model_error("line_iitaka_dim: unknown model");
}

}  // namespace iitaka

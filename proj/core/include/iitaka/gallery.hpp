#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iitaka/bundles.hpp"
#include "iitaka/kodaira.hpp"
#include "iitaka/matrix.hpp"

namespace iitaka {

/// The double cover sigma: P^1 x P^1 -> P^2, ((s:t),(u:v)) -> (su : sv+tu : tv),
/// ramified exactly over the conic B^2 = 4AC. Realized as the projection of
/// the quadric {XW = YZ} from (0:1:-1:0).
class DoubleCoverModel {
   public:
    DoubleCoverModel();

    const CurveModel& source() const { return source_; }
    const CurveModel& target() const { return target_; }

    CurvePoint sigma(const CurvePoint& x) const;
    bool on_branch_conic(const CurvePoint& p) const;  // B^2 = 4AC
    /// Exact number of preimages over the algebraic closure (2 off the conic,
    /// 1 on it), via the root structure of z^2 - (B/A) z + (C/A).
    long preimage_count(const CurvePoint& p) const;
    /// The preimages when they are rational.
    std::vector<CurvePoint> rational_preimages(const CurvePoint& p) const;

   private:
    CurveModel source_;
    CurveModel target_;
};

/// Sections of S^m Q on P^2 = P(V) as Sym^m V, with evaluation at x = [v]
/// killing exactly v * Sym^{m-1} V.
class EulerQuotientModel {
   public:
    explicit EulerQuotientModel(int m);

    int m() const { return m_; }
    long h0() const;  // dim Sym^m V = binomial(m+2, 2)

    /// Columns span the kernel v * Sym^{m-1} V inside Sym^m V.
    RationalMatrix kernel_matrix(const CurvePoint& p2) const;
    /// Codimension of the kernel (must equal m + 1 = sigma_m(2)).
    long evaluation_codim(const CurvePoint& p2) const;
    /// Kodaira points agree iff the kernels agree as subspaces.
    bool same_kodaira_point(const CurvePoint& a, const CurvePoint& b) const;

   private:
    int m_;
    std::vector<std::vector<int>> monomials_;      // degree m exponents
    std::vector<std::vector<int>> sub_monomials_;  // degree m-1 exponents
};

struct ClaimResult {
    std::string claim;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct ScenarioVerdict {
    std::string scenario;
    std::vector<ClaimResult> claims;
    bool all_pass() const;
    void check(const std::string& claim, const std::string& expected, const std::string& computed);
};

/// The torsion scenario E = O_C (+) L on a catalogued curve with a rational
/// n-torsion point (n = 1 is the degenerate trivial-L control): semiample on
/// P(E) while no symmetric power is generated anywhere.
ScenarioVerdict run_torsion_example(int n, int m_max);

/// The double-cover example E = pullback of the tautological quotient.
ScenarioVerdict run_double_cover_example(int m_max, int samples, std::uint64_t seed = 17);

/// The Euler-quotient remark: phi_1 is injective while B_+(Q) = P^2.
ScenarioVerdict run_euler_example(int m_max, std::uint64_t seed = 17);

/// The decidable slice of the abelian-variety criterion, applied to the
/// catalogued cotangent bundle of the model.
ScenarioVerdict abelian_check(const CurveModel& model, int m_max);

/// Catalogued cotangent bundle as a split bundle (P^1: O(-2); elliptic: O;
/// P^1 x P^1: O(-2,0) (+) O(0,-2)).
SplitBundle cotangent_bundle(const CurveModel& model);

/// Kodaira report for the catalogued double-cover pullback bundle.
KodairaReport double_cover_kodaira_report(int m_max, int samples, std::uint64_t seed);

/// Kodaira report for the tautological quotient on P^2 (maps are injective).
KodairaReport euler_kodaira_report(int m_max, int samples, std::uint64_t seed);

}  // namespace iitaka

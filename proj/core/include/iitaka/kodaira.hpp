#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "iitaka/bundles.hpp"
#include "iitaka/matrix.hpp"

namespace iitaka {

/// The matrix of H^0(S^m E) ->> S^m E(x): one row per Sym component in the
/// fixed enumeration order, one column per global section in the concatenated
/// rr_space bases; block-diagonal by construction.
struct EvaluationMatrix {
    int m;
    CurvePoint point;
    RationalMatrix matrix;
    std::vector<std::size_t> block_offset;  // first column of each component block
};

/// Maximal minors of the evaluation matrix in lexicographic column-subset
/// order, scaled so the first nonzero coordinate is 1.
struct PlueckerPoint {
    std::vector<Rational> coordinates;
    bool operator==(const PlueckerPoint& o) const = default;
    std::string str() const;
};

/// Deterministic rational-point source for genericity sampling. Elliptic
/// pools combine catalogued generators with hint points under the group law;
/// the other models enumerate seeded small rationals.
class SampleGenerator {
   public:
    SampleGenerator(CurveModel model, std::uint64_t seed);
    void add_hints(const std::vector<CurvePoint>& pts);
    /// Next candidate point (never repeats until the pool is exhausted;
    /// afterwards throws genericity_error).
    CurvePoint next();

   private:
    CurveModel model_;
    std::uint64_t state_;
    std::vector<CurvePoint> pool_;       // elliptic: known rational points
    std::vector<CurvePoint> emitted_;
    std::size_t combo_radius_ = 2;
    std::uint64_t rand();
};

/// Draw from `gen` until `accept` passes; after 8 consecutive rejections the
/// operation errors rather than silently reporting.
CurvePoint sample_generic(SampleGenerator& gen,
                          const std::function<bool(const CurvePoint&)>& accept);

/// Acceptance predicate shared by the sampled operations: x avoids summand
/// and component-representative supports, the base locus at level m, the
/// origin / infinity, and (elliptic) the y = 0 locus.
std::function<bool(const CurvePoint&)> generic_point_filter(const SplitBundle& e, int m);

EvaluationMatrix evaluation_matrix(const SplitBundle& e, int m, const CurvePoint& x);

/// Evaluation rows without the genericity precondition (exact local
/// trivializations at special points); used by fiber membership tests.
RationalMatrix local_evaluation_rows(const SplitBundle& e, int m, const CurvePoint& x);

PlueckerPoint kodaira_point(const SplitBundle& e, int m, const CurvePoint& x);

/// Maximum over samples of the exact rank of the differential of the Kodaira
/// map in a Grassmannian affine chart. A certified-generic lower bound; exact
/// when >= 3 samples agree (the rank can only drop on closed loci).
int image_dimension(const SplitBundle& e, int m, const std::vector<CurvePoint>& samples);

/// Exact number of algebraic-closure points in the fiber of the level-m
/// Kodaira map through x0. Supported sources: P^1 and elliptic models.
long fiber_degree(const SplitBundle& e, int m, const CurvePoint& x0);

struct FactorizationReport {
    long multiplication_rank = 0;  // rank of S^k H^0(S^m E) -> H^0(S^km E)
    long w_dim = 0;                // = multiplication_rank (dim W)
    std::vector<std::pair<CurvePoint, bool>> commute;
    bool all_commute() const;
};

/// Machine check of the finiteness lemma's diagram: the kernel of the
/// composite S^k H^0(S^m E) ->> S^km E(x) equals the kernel of
/// (restriction to W) after evaluation, at every sample.
FactorizationReport verify_factorization(const SplitBundle& e, int m, int k,
                                         const std::vector<CurvePoint>& samples);

struct KodairaBounds {
    int m_max = 3;
    int samples = 5;
    std::uint64_t seed = 17;
};

struct KodairaRecord {
    int m = 0;
    int image_dim = 0;
    std::optional<long> fiber_deg;
    int samples_used = 0;
};

struct KodairaReport {
    std::vector<KodairaRecord> per_m;
    int k_xe = 0;                 // stabilized image dimension k(X, E)
    std::optional<long> fi;       // FI(E); nullopt = undetermined
    std::optional<long> map_degree;  // deg of the stable Kodaira map of E
    std::optional<long> det_degree;  // deg of the determinant's stable Kodaira map
    int k_det = 0;                // k(X, det E)
    bool matches_det = false;     // k(X, E) == k(X, det E)?
    std::string note;
};

/// Asymptotic invariants: image dimensions and fiber degrees over N(E),
/// k(X, E), FI(E) through exact fiber degrees, and the det comparison.
KodairaReport iitaka_report(const SplitBundle& e, const KodairaBounds& bounds);

/// `count` samples passing the level-m genericity filter.
std::vector<CurvePoint> generic_samples(const SplitBundle& e, int m, int count,
                                        std::uint64_t seed);

}  // namespace iitaka

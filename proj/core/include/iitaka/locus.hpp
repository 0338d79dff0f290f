#pragma once

#include <string>
#include <vector>

#include "iitaka/curve.hpp"

namespace iitaka {

/// Exact description of a base locus: empty, a finite set of rational points,
/// or the whole variety. `certificate` records which powers / summand classes
/// force the answer; `stabilized` marks results backed by an exact argument
/// rather than a truncated intersection.
class LocusResult {
   public:
    enum class Shape { Empty, Finite, All };

    static LocusResult empty(std::string certificate = "");
    static LocusResult all(std::string certificate = "");
    static LocusResult finite(std::vector<CurvePoint> points, std::string certificate = "");

    Shape shape() const { return shape_; }
    bool is_empty() const { return shape_ == Shape::Empty; }
    bool is_all() const { return shape_ == Shape::All; }
    bool is_finite() const { return shape_ == Shape::Finite; }
    const std::vector<CurvePoint>& points() const { return points_; }
    bool contains(const CurvePoint& p) const;

    const std::string& certificate() const { return certificate_; }
    void set_certificate(std::string c) { certificate_ = std::move(c); }
    bool stabilized() const { return stabilized_; }
    void set_stabilized(bool s) { stabilized_ = s; }

    /// Set operations (certificates are merged textually, stabilized is ANDed).
    static LocusResult set_union(const LocusResult& a, const LocusResult& b);
    static LocusResult set_intersection(const LocusResult& a, const LocusResult& b);

    bool subset_of(const LocusResult& o) const;
    bool same_set(const LocusResult& o) const;

    std::string str() const;

   private:
    LocusResult(Shape s, std::vector<CurvePoint> pts, std::string cert)
        : shape_(s), points_(std::move(pts)), certificate_(std::move(cert)) {}
    Shape shape_;
    std::vector<CurvePoint> points_;  // sorted, deduplicated, nonempty iff Finite
    std::string certificate_;
    bool stabilized_ = true;
};

}  // namespace iitaka

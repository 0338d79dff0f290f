#include "iitaka/locus.hpp"

#include <algorithm>
#include <stdexcept>

namespace iitaka {

LocusResult LocusResult::empty(std::string certificate) {
    return LocusResult(Shape::Empty, {}, std::move(certificate));
}

LocusResult LocusResult::all(std::string certificate) {
    return LocusResult(Shape::All, {}, std::move(certificate));
}

LocusResult LocusResult::finite(std::vector<CurvePoint> points, std::string certificate) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.empty()) return LocusResult(Shape::Empty, {}, std::move(certificate));
    return LocusResult(Shape::Finite, std::move(points), std::move(certificate));
}

bool LocusResult::contains(const CurvePoint& p) const {
    switch (shape_) {
        case Shape::Empty: return false;
        case Shape::All: return true;
        case Shape::Finite:
            return std::binary_search(points_.begin(), points_.end(), p);
    }
    return false;
}

namespace {

std::string merge_certs(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty() || b == a) return a;
    return a + "; " + b;
}

}  // namespace

LocusResult LocusResult::set_union(const LocusResult& a, const LocusResult& b) {
    LocusResult out = LocusResult::empty();
    if (a.is_all() || b.is_all()) {
        out = all(merge_certs(a.certificate_, b.certificate_));
    } else {
        std::vector<CurvePoint> pts = a.points_;
        pts.insert(pts.end(), b.points_.begin(), b.points_.end());
        out = finite(std::move(pts), merge_certs(a.certificate_, b.certificate_));
    }
    out.stabilized_ = a.stabilized_ && b.stabilized_;
    return out;
}

LocusResult LocusResult::set_intersection(const LocusResult& a, const LocusResult& b) {
    LocusResult out = LocusResult::empty();
    if (a.is_all()) {
        out = b;
    } else if (b.is_all()) {
        out = a;
    } else if (a.is_empty() || b.is_empty()) {
        out = empty(merge_certs(a.certificate_, b.certificate_));
    } else {
        std::vector<CurvePoint> pts;
        for (const auto& p : a.points_)
            if (b.contains(p)) pts.push_back(p);
        out = finite(std::move(pts), merge_certs(a.certificate_, b.certificate_));
    }
    out.stabilized_ = a.stabilized_ && b.stabilized_;
    return out;
}

bool LocusResult::subset_of(const LocusResult& o) const {
    if (o.is_all()) return true;
    if (is_all()) return false;
    if (is_empty()) return true;
    if (o.is_empty()) return false;
    return std::all_of(points_.begin(), points_.end(),
                       [&](const CurvePoint& p) { return o.contains(p); });
}

bool LocusResult::same_set(const LocusResult& o) const {
    return shape_ == o.shape_ && points_ == o.points_;
}

std::string LocusResult::str() const {
    switch (shape_) {
        case Shape::Empty: return "empty";
        case Shape::All: return "all";
        case Shape::Finite: {
            std::string s = "{";
            for (std::size_t i = 0; i < points_.size(); ++i)
                s += (i ? ", " : "") + points_[i].str();
            return s + "}";
        }
    }
    return "?";
}

}  // namespace iitaka

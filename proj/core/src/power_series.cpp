#include "iitaka/power_series.hpp"

#include <algorithm>
#include <stdexcept>

#include "iitaka/errors.hpp"

namespace iitaka {

PowerSeries::PowerSeries(std::vector<Rational> coeffs, std::size_t precision) : c_(std::move(coeffs)) {
    c_.resize(precision);
}

PowerSeries PowerSeries::from_polynomial(const Polynomial& p, std::size_t precision) {
    return PowerSeries(p.coeffs(), precision);
}

PowerSeries PowerSeries::constant(const Rational& c, std::size_t precision) {
    PowerSeries s(std::vector<Rational>{c}, precision);
    return s;
}

const Rational& PowerSeries::coeff(std::size_t i) const {
    if (i >= c_.size()) throw std::out_of_range("PowerSeries: coefficient beyond precision");
    return c_[i];
}

bool PowerSeries::known_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
}

int PowerSeries::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return static_cast<int>(i);
    return -1;
}

PowerSeries PowerSeries::truncated(std::size_t precision) const {
    return PowerSeries(c_, std::min(precision, c_.size()));
}

PowerSeries PowerSeries::operator-() const {
    PowerSeries s = *this;
    for (auto& c : s.c_) c = -c;
    return s;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    std::size_t prec = std::min(a.precision(), b.precision());
    std::vector<Rational> c(prec);
    for (std::size_t i = 0; i < prec; ++i) c[i] = a.c_[i] + b.c_[i];
    return PowerSeries(std::move(c), prec);
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + (-b); }

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    std::size_t prec = std::min(a.precision(), b.precision());
    std::vector<Rational> c(prec);
    for (std::size_t i = 0; i < prec && i < a.precision(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < prec && j < b.precision(); ++j)
            c[i + j] += a.c_[i] * b.c_[j];
    }
    return PowerSeries(std::move(c), prec);
}

PowerSeries PowerSeries::scaled(const Rational& s) const {
    PowerSeries out = *this;
    for (auto& c : out.c_) c *= s;
    return out;
}

PowerSeries PowerSeries::shifted_up(std::size_t k) const {
    std::vector<Rational> c(c_.size());
    for (std::size_t i = k; i < c_.size(); ++i) c[i] = c_[i - k];
    return PowerSeries(std::move(c), c_.size());
}

PowerSeries PowerSeries::inverse() const {
    if (c_.empty() || c_[0].is_zero())
        throw std::invalid_argument("PowerSeries: inverse needs a unit");
    std::size_t prec = c_.size();
    std::vector<Rational> inv(prec);
    Rational c0_inv = c_[0].inverse();
    inv[0] = c0_inv;
    for (std::size_t n = 1; n < prec; ++n) {
        Rational acc(0);
        for (std::size_t k = 1; k <= n; ++k) acc += c_[k] * inv[n - k];
        inv[n] = -acc * c0_inv;
    }
    return PowerSeries(std::move(inv), prec);
}

PowerSeries PowerSeries::sqrt_with(const Rational& root0) const {
    if (c_.empty() || root0.is_zero() || c_[0] != root0 * root0)
        throw std::invalid_argument("PowerSeries: sqrt_with needs root0^2 == c0 != 0");
    std::size_t prec = c_.size();
    std::vector<Rational> s(prec);
    s[0] = root0;
    Rational half_inv = (Rational(2) * root0).inverse();
    for (std::size_t n = 1; n < prec; ++n) {
        // c_n = sum_{k=0..n} s_k s_{n-k}  =>  solve for s_n
        Rational acc(0);
        for (std::size_t k = 1; k < n; ++k) acc += s[k] * s[n - k];
        s[n] = (c_[n] - acc) * half_inv;
    }
    return PowerSeries(std::move(s), prec);
}

PowerSeries poly_eval_series(const Polynomial& p, const PowerSeries& t) {
    PowerSeries acc = PowerSeries::constant(Rational(0), t.precision());
    for (std::size_t i = p.coeffs().size(); i-- > 0;)
        acc = acc * t + PowerSeries::constant(p.coeff(i), t.precision());
    return acc;
}

LaurentSeries LaurentSeries::from_power(const PowerSeries& p, int shift) {
    return LaurentSeries(shift, p);
}

void LaurentSeries::normalize() {
    // strip exact leading zeros, shrinking the window from the left
    std::size_t lead = 0;
    while (lead < unit_.precision() && unit_.coeff(lead).is_zero()) ++lead;
    if (lead == 0 || lead == unit_.precision()) return;
    std::vector<Rational> c(unit_.coeffs().begin() + static_cast<long>(lead), unit_.coeffs().end());
    const std::size_t prec = c.size();
    val_ += static_cast<int>(lead);
    unit_ = PowerSeries(std::move(c), prec);
}

int LaurentSeries::valuation() const {
    int v = unit_.valuation();
    if (v < 0) throw precision_error("LaurentSeries: valuation of a series that is zero to precision");
    return val_ + v;
}

Rational LaurentSeries::coeff(int e) const {
    if (e < val_) return Rational(0);
    std::size_t i = static_cast<std::size_t>(e - val_);
    if (i >= unit_.precision())
        throw std::out_of_range("LaurentSeries: coefficient beyond known window");
    return unit_.coeff(i);
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.known_zero()) return b;
    if (b.known_zero()) return a;
    int val = std::min(a.val_, b.val_);
    int end = std::min(a.window_end(), b.window_end());
    if (end <= val) throw precision_error("LaurentSeries: empty window in addition");
    std::size_t prec = static_cast<std::size_t>(end - val);
    std::vector<Rational> c(prec);
    for (std::size_t i = 0; i < prec; ++i) {
        int e = val + static_cast<int>(i);
        Rational x = (e >= a.val_ && e < a.window_end()) ? a.coeff(e) : Rational(0);
        Rational y = (e >= b.val_ && e < b.window_end()) ? b.coeff(e) : Rational(0);
        c[i] = x + y;
    }
    return LaurentSeries(val, PowerSeries(std::move(c), prec));
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    return a + b.scaled(Rational(-1));
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    return LaurentSeries(a.val_ + b.val_, a.unit_ * b.unit_);
}

LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) {
    if (b.known_zero()) throw precision_error("LaurentSeries: division by a series zero to precision");
    // normalize() already stripped leading zeros, so b.unit_ starts nonzero
    return LaurentSeries(a.val_ - b.val_, a.unit_ * b.unit_.inverse());
}

LaurentSeries LaurentSeries::scaled(const Rational& s) const {
    return LaurentSeries(val_, unit_.scaled(s));
}

LaurentSeries poly_eval_laurent(const Polynomial& p, const LaurentSeries& t) {
    std::size_t prec = std::max<std::size_t>(t.window_end() > t.window_begin()
                                                 ? static_cast<std::size_t>(t.window_end() - t.window_begin())
                                                 : 1,
                                             1);
    LaurentSeries acc(0, PowerSeries::constant(Rational(0), prec));
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        LaurentSeries c(0, PowerSeries::constant(p.coeff(i), prec));
        acc = acc * t + c;
    }
    return acc;
}

}  // namespace iitaka

#include "iitaka/rational.hpp"

#include <ostream>
#include <stdexcept>

#include "iitaka/errors.hpp"

namespace iitaka {

Rational::Rational(long n, long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(const Integer& n, const Integer& d) {
    if (sgn(d) == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(n) / mpq_class(d);
    v_.canonicalize();
}

Rational Rational::from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw parse_error("bad rational literal: '" + s + "'");
    if (sgn(q.get_den()) == 0) throw parse_error("zero denominator in rational: '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::invalid_argument("Rational: inverse of zero");
    return Rational(mpq_class(1) / v_);
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    Rational base = e > 0 ? *this : inverse();
    unsigned long k = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.v_.get_num().get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.v_.get_den().get_mpz_t(), k);
    mpq_class q(num);
    q /= mpq_class(den);
    return Rational(q);
}

std::string Rational::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

}  // namespace iitaka

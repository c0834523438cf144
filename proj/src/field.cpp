#include "ospcert/field.hpp"

#include <ostream>

namespace ospcert {

Rational::Rational(long num, long den) {
    if (den == 0) throw MathError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw UsageError("empty rational literal");
    std::size_t start = (s[0] == '-') ? 1 : 0;
    std::size_t slash = s.find('/');
    auto digits_only = [&](std::size_t from, std::size_t to) {
        if (from >= to) return false;
        for (std::size_t i = from; i < to; ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    bool ok = slash == std::string::npos ? digits_only(start, s.size())
                                         : digits_only(start, slash) && digits_only(slash + 1, s.size());
    if (!ok) throw UsageError("malformed rational literal '" + s + "'");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw UsageError("malformed rational literal '" + s + "'");
    if (sgn(q.get_den()) == 0) throw MathError("rational with zero denominator: '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

Rational Rational::inverse() const {
    if (is_zero()) throw MathError("inverse of zero");
    return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw MathError("division by zero");
    v_ /= o.v_;
    return *this;
}

std::size_t Rational::bit_size() const {
    return mpz_sizeinbase(v_.get_num_mpz_t(), 2) + mpz_sizeinbase(v_.get_den_mpz_t(), 2);
}

std::string Rational::to_string() const { return v_.get_str(10); }

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) {
    Rational na = a_ * o.a_ + Rational(2) * b_ * o.b_;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

QuadScalar QuadScalar::inverse() const {
    if (is_zero()) throw MathError("inverse of zero");
    Rational n = norm();
    return QuadScalar(a_ / n, -b_ / n);
}

std::string QuadScalar::to_string() const {
    if (b_.is_zero()) return a_.to_string();
    std::string out;
    if (!a_.is_zero()) out = a_.to_string() + (b_.sign() > 0 ? "+" : "");
    return out + b_.to_string() + "*sqrt2";
}

Rational demote(const QuadScalar& x) {
    if (!x.is_rational()) throw UsageError("value " + x.to_string() + " is not rational");
    return x.a();
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }
std::ostream& operator<<(std::ostream& os, const QuadScalar& x) { return os << x.to_string(); }

}  // namespace ospcert

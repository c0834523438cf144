#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>

#include "ospcert/errors.hpp"

namespace ospcert {

/*
 * Exact rational number backed by GMP. Always kept in lowest terms with a
 * positive denominator, so structural equality is value equality.
 */
class Rational {
public:
    Rational() = default;
    Rational(long v) : v_(v) {}  // NOLINT: integer literals are field-agnostic
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "p", "p/q", "-p/q". Throws UsageError on anything else.
    static Rational parse(const std::string& s);

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational inverse() const;
    std::size_t bit_size() const;
    std::string to_string() const;

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_;
};

/*
 * Element a + b*sqrt(2) of Q(sqrt 2). There is deliberately no implicit
 * conversion from Rational: moving a rational into the extension goes through
 * promote(), so an accidental mixed-field expression does not compile.
 */
class QuadScalar {
public:
    QuadScalar() = default;
    QuadScalar(long v) : a_(v) {}  // NOLINT: integer literals embed in both fields
    QuadScalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    static QuadScalar sqrt2() { return QuadScalar(Rational(0), Rational(1)); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    QuadScalar conj() const { return QuadScalar(a_, -b_); }
    // a^2 - 2 b^2; zero only for the zero element since sqrt 2 is irrational.
    Rational norm() const { return a_ * a_ - Rational(2) * b_ * b_; }
    QuadScalar inverse() const;
    std::size_t bit_size() const { return a_.bit_size() + b_.bit_size(); }
    std::string to_string() const;

    QuadScalar operator-() const { return QuadScalar(-a_, -b_); }
    QuadScalar& operator+=(const QuadScalar& o) { a_ += o.a_; b_ += o.b_; return *this; }
    QuadScalar& operator-=(const QuadScalar& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
    QuadScalar& operator*=(const QuadScalar& o);
    QuadScalar& operator/=(const QuadScalar& o) { return *this *= o.inverse(); }

    friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
    friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
    friend QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
    friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }

    friend bool operator==(const QuadScalar& x, const QuadScalar& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }
    // Lexicographic on (a, b). Only meant for containers, not the real order.
    friend bool operator<(const QuadScalar& x, const QuadScalar& y) {
        return x.a_ != y.a_ ? x.a_ < y.a_ : x.b_ < y.b_;
    }

private:
    Rational a_;
    Rational b_;
};

inline QuadScalar promote(const Rational& x) { return QuadScalar(x, Rational(0)); }

// Inverse problem of promote: throws UsageError when x has a sqrt 2 part.
Rational demote(const QuadScalar& x);

inline Rational scalar_inv(const Rational& x) { return x.inverse(); }
inline QuadScalar scalar_inv(const QuadScalar& x) { return x.inverse(); }

std::ostream& operator<<(std::ostream& os, const Rational& x);
std::ostream& operator<<(std::ostream& os, const QuadScalar& x);

}  // namespace ospcert

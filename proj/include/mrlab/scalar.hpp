#ifndef MRLAB_SCALAR_HPP
#define MRLAB_SCALAR_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace mrlab {

using BigInt = mpz_class;
using Rational = mpq_class;

// Thrown on malformed numeric literals and configuration files. The message
// carries the offending text and, where available, its location.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Strict "p" / "p/q" parser. Rejects whitespace, exponents, radix prefixes
// and zero denominators. Result is canonical (gcd 1, positive denominator).
Rational parse_rational(const std::string& text);

// "p/q", or just "p" when the denominator is 1.
std::string rational_str(const Rational& value);

// Canonical rational from a possibly unreduced fraction.
Rational make_rational(const BigInt& num, const BigInt& den);

// Exact scalar: a Gaussian rational re + im*i. Plain rationals are the
// im == 0 case; which values a context admits is decided by the field tag
// carried on configurations and matrices, not here. All arithmetic is exact
// and results stay canonical.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long value) : re_(value), im_(0) {}
    explicit Scalar(Rational re) : re_(std::move(re)), im_(0) {}
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool has_imag() const { return im_ != 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    // re^2 + im^2; zero iff the scalar is zero.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return Scalar(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return Scalar(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.re_ * b.re_ - a.im_ * b.im_,
                      a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    Scalar& operator+=(const Scalar& other) { return *this = *this + other; }
    Scalar& operator-=(const Scalar& other) { return *this = *this - other; }
    Scalar& operator*=(const Scalar& other) { return *this = *this * other; }
    Scalar& operator/=(const Scalar& other) { return *this = *this / other; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // "p/q" for rational values, "a/b+c/di" (either part omissible) otherwise.
    std::string str() const;

    // Inverse of str(); also accepts "i", "+i", "-i" for unit imaginary parts.
    static Scalar parse(const std::string& text);

private:
    Rational re_;
    Rational im_;
};

// Total order used only to make sort orders deterministic: lexicographic on
// (real, imaginary). It is not compatible with complex arithmetic.
bool scalar_less(const Scalar& a, const Scalar& b);

}  // namespace mrlab

#endif

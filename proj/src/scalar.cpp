#include "mrlab/scalar.hpp"

#include <cctype>

namespace mrlab {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// Validates [+-]digits[/digits] and returns the canonical rational.
Rational parse_rational_checked(const std::string& text, const std::string& original) {
    std::string body = text;
    bool negative = false;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        negative = body[0] == '-';
        body = body.substr(1);
    }
    std::string num = body;
    std::string den = "1";
    if (auto slash = body.find('/'); slash != std::string::npos) {
        num = body.substr(0, slash);
        den = body.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den)) {
        throw ParseError("malformed rational literal: \"" + original + "\"");
    }
    BigInt n(num, 10);
    BigInt d(den, 10);
    if (d == 0) throw ParseError("zero denominator in rational literal: \"" + original + "\"");
    if (negative) n = -n;
    return make_rational(n, d);
}

}  // namespace

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw ParseError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    return parse_rational_checked(text, text);
}

std::string rational_str(const Rational& value) {
    return value.get_str();
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    Rational n = b.norm();
    if (n == 0) throw std::domain_error("scalar division by zero");
    Scalar numer = a * b.conj();
    return Scalar(numer.real() / n, numer.imag() / n);
}

std::string Scalar::str() const {
    if (im_ == 0) return rational_str(re_);
    std::string imag_part = rational_str(im_) + "i";
    if (re_ == 0) return imag_part;
    if (im_ > 0) return rational_str(re_) + "+" + imag_part;
    return rational_str(re_) + imag_part;
}

Scalar Scalar::parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty scalar literal");

    // At most one sign past position 0; it separates real and imaginary terms.
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < text.size(); ++i) {
        if (text[i] == '+' || text[i] == '-') {
            if (split != std::string::npos) {
                throw ParseError("malformed scalar literal: \"" + text + "\"");
            }
            split = i;
        }
    }

    auto parse_imag_term = [&](std::string term) -> Rational {
        if (term.empty() || term.back() != 'i') {
            throw ParseError("malformed scalar literal: \"" + text + "\"");
        }
        term.pop_back();
        if (term.empty() || term == "+") return Rational(1);
        if (term == "-") return Rational(-1);
        return parse_rational_checked(term, text);
    };

    if (split == std::string::npos) {
        if (text.back() == 'i') return Scalar(Rational(0), parse_imag_term(text));
        return Scalar(parse_rational_checked(text, text));
    }

    std::string first = text.substr(0, split);
    std::string second = text.substr(split);
    if (first.back() == 'i' || second.back() != 'i') {
        throw ParseError("malformed scalar literal: \"" + text + "\" (expected real then imaginary)");
    }
    return Scalar(parse_rational_checked(first, text), parse_imag_term(second));
}

bool scalar_less(const Scalar& a, const Scalar& b) {
    int c = cmp(a.real(), b.real());
    if (c != 0) return c < 0;
    return a.imag() < b.imag();
}

}  // namespace mrlab

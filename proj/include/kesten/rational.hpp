#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace kesten {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Exact square root of a rational, if both numerator and denominator are
/// perfect squares. Negative inputs and non-squares return nullopt.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    Int sn = boost::multiprecision::sqrt(num);
    Int sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rational(sn, sd);
}

namespace detail {
inline Rational parse_rational_impl(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        Int num(digits);
        Int den = 1;
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(num, den);
    }
    return Rational(Int(s));
}
}  // namespace detail

/// Parses "p/q", "p", or a plain decimal like "-0.25" into an exact rational.
inline Rational parse_rational(const std::string& s) {
    try {
        return detail::parse_rational_impl(s);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        // the big-integer constructor reports malformed digits as a
        // runtime error; surface it as a bad-argument condition
        throw std::invalid_argument("not a rational number: " + s);
    }
}

inline std::string to_string(const Rational& r) {
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Complex number with exact rational parts; the edge-weight scalar.
struct CRat {
    Rational re{0};
    Rational im{0};

    CRat() = default;
    CRat(Rational r) : re(std::move(r)) {}
    CRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    CRat(int v) : re(v) {}

    bool is_real() const { return im == 0; }

    friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    CRat& operator+=(const CRat& b) { re += b.re; im += b.im; return *this; }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
};

}  // namespace kesten

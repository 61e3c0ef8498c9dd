#pragma once

#include <compare>
#include <functional>
#include <stdexcept>
#include <string>

#include "kesten/rational.hpp"

namespace kesten {

/// Exact dyadic point p/2^k of [0,1], stored in lowest terms
/// (numerator odd unless exponent is zero).
class DyadicRational {
public:
    DyadicRational() : num_(0), exp_(0) {}
    DyadicRational(Int num, unsigned exp) : num_(std::move(num)), exp_(exp) {
        if (num_ < 0 || num_ > (Int(1) << exp_))
            throw std::domain_error("dyadic value outside [0,1]");
        normalize();
    }

    const Int& numerator() const { return num_; }
    unsigned exponent() const { return exp_; }

    Rational value() const { return Rational(num_, Int(1) << exp_); }

    bool is_interior() const { return num_ != 0 && num_ != (Int(1) << exp_); }

    std::string str() const { return num_.str() + "/2^" + std::to_string(exp_); }

    friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
        return a.exp_ == b.exp_ && a.num_ == b.num_;
    }
    friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
        // compare a.num/2^a.exp vs b.num/2^b.exp by cross-shifting
        Int lhs = a.num_ << b.exp_;
        Int rhs = b.num_ << a.exp_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // value arithmetic used by the generator actions; all exact
    DyadicRational half() const { return make(num_, exp_ + 1); }
    DyadicRational double_minus_one() const {  // 2x-1, requires x >= 1/2
        return make(2 * num_ - (Int(1) << exp_), exp_);
    }
    DyadicRational half_plus_half() const {  // (x+1)/2
        return make(num_ + (Int(1) << exp_), exp_ + 1);
    }
    DyadicRational plus_quarter() const { return make(4 * num_ + (Int(1) << exp_), exp_ + 2); }
    DyadicRational minus_quarter() const { return make(4 * num_ - (Int(1) << exp_), exp_ + 2); }
    DyadicRational doubled() const { return make(2 * num_, exp_); }

    static DyadicRational make(Int num, unsigned exp) {
        DyadicRational d;
        d.num_ = std::move(num);
        d.exp_ = exp;
        if (d.num_ < 0 || d.num_ > (Int(1) << exp))
            throw std::domain_error("dyadic value outside [0,1]");
        d.normalize();
        return d;
    }

private:
    void normalize() {
        while (exp_ > 0 && (num_ & 1) == 0) {
            num_ >>= 1;
            --exp_;
        }
    }

    Int num_;
    unsigned exp_;
};

// Thompson group generators acting on [0,1], three-piece map for a and
// two-piece map for b. All branch comparisons are exact.

namespace detail {
inline int region3(const DyadicRational& x) {
    // 0: [0,1/2), 1: [1/2,3/4), 2: [3/4,1]
    Int scaled = x.numerator() << 2;       // 4*num
    Int one = Int(1) << (x.exponent() + 2);  // 4*2^exp
    if (scaled * 2 < one) return 0;
    if (scaled * 4 < one * 3) return 1;
    return 2;
}
inline bool below_half(const DyadicRational& x) { return detail::region3(x) == 0; }
}  // namespace detail

inline DyadicRational gen_a(const DyadicRational& x) {
    switch (detail::region3(x)) {
        case 0: return x.half();
        case 1: return x.minus_quarter();
        default: return x.double_minus_one();
    }
}

inline DyadicRational gen_a_inv(const DyadicRational& y) {
    // inverse pieces: [0,1/4) -> 2y, [1/4,1/2) -> y+1/4, [1/2,1] -> (y+1)/2
    Int scaled = y.numerator() << 2;          // 4*num
    Int one = Int(1) << (y.exponent() + 2);   // 4*2^exp, i.e. "1" at the same scale
    if (scaled * 4 < one) return y.doubled();
    if (scaled * 2 < one) return y.plus_quarter();
    return y.half_plus_half();
}

inline DyadicRational gen_b(const DyadicRational& x) {
    if (detail::below_half(x)) return x;
    return gen_a(x.double_minus_one()).half_plus_half();
}

inline DyadicRational gen_b_inv(const DyadicRational& x) {
    if (detail::below_half(x)) return x;
    return gen_a_inv(x.double_minus_one()).half_plus_half();
}

struct DyadicHash {
    size_t operator()(const DyadicRational& d) const {
        return std::hash<std::string>()(d.numerator().str()) * 31 + d.exponent();
    }
};

}  // namespace kesten

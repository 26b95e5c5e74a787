#pragma once

#include "groves/polygcd.hpp"
#include "groves/series.hpp"

namespace groves {

// Numerator over denominator, kept unreduced; equality is decided by cross-multiplication.
class RatFuncQ {
public:
    RatFuncQ() : num_(0), den_(1) {}
    RatFuncQ(PolyQ num, PolyQ den = PolyQ(1)) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    }

    const PolyQ& num() const { return num_; }
    const PolyQ& den() const { return den_; }

    friend RatFuncQ operator+(const RatFuncQ& a, const RatFuncQ& b) {
        if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RatFuncQ operator-(const RatFuncQ& a, const RatFuncQ& b) {
        if (a.den_ == b.den_) return {a.num_ - b.num_, a.den_};
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RatFuncQ operator*(const RatFuncQ& a, const RatFuncQ& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
    friend RatFuncQ operator/(const RatFuncQ& a, const RatFuncQ& b) {
        if (b.num_.is_zero()) throw DomainError("division by the zero rational function");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }

    friend bool operator==(const RatFuncQ& a, const RatFuncQ& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

    // Cancels the gcd and makes the denominator's lex-leading coefficient 1.
    RatFuncQ reduced() const {
        const PolyQ g = gcd(num_, den_);
        PolyQ n = divide_or_throw(num_, g, "rational reduction"), d = divide_or_throw(den_, g, "rational reduction");
        const Rational lc = d.leading().second;
        return {n / lc, d / lc};
    }

    TruncSeries3 series(int D) const { return TruncSeries3::from_poly(num_, D).divided_by(den_); }

private:
    PolyQ num_, den_;
};

}  // namespace groves

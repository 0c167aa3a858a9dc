#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace qgal {

/// Arbitrary precision rational; GMP keeps it canonical (coprime parts,
/// positive denominator, zero stored as 0/1).
using Rat = mpq_class;

std::string render(const Rat& r);
Rat parse_rat(const std::string& text);
Rat factorial(int n);

/// Nonnegative rational square root when `r` is the square of a rational.
std::optional<Rat> rat_sqrt(const Rat& r);

/// Exact Gaussian rational re + im*i.
class GaussRat {
public:
    GaussRat() = default;
    GaussRat(long v) : re_(v) {}
    GaussRat(Rat re) : re_(std::move(re)) {}
    GaussRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussRat i() { return {Rat(0), Rat(1)}; }

    const Rat& re() const noexcept { return re_; }
    const Rat& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const noexcept { return sgn(im_) == 0 && re_ == 1; }
    bool is_real() const noexcept { return sgn(im_) == 0; }

    GaussRat conj() const { return {re_, -im_}; }
    GaussRat inverse() const;

    GaussRat& operator+=(const GaussRat& o);
    GaussRat& operator-=(const GaussRat& o);
    GaussRat& operator*=(const GaussRat& o);
    GaussRat& operator/=(const GaussRat& o);

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const GaussRat& a, const GaussRat& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    Rat re_{0};
    Rat im_{0};
};

/// "3/4", "i", "-1/2*i", "2+i". `as_factor` wraps two-part values in
/// parentheses so the text can be followed by `*`.
std::string render(const GaussRat& z, bool as_factor = false);

} // namespace qgal

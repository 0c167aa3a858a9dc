#pragma once

#include "qgal/mpoly.hpp"

namespace qgal {

/// Rational function num/den in the deformation parameters. Canonical form:
/// coprime parts, monic denominator; polynomials keep den == 1.
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(MPoly num);
    RatFunc(GaussRat c) : num_(std::move(c)) {}
    RatFunc(long c) : num_(c) {}
    RatFunc(MPoly num, MPoly den);

    const MPoly& num() const noexcept { return num_; }
    const MPoly& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.is_constant(); }
    bool is_constant() const noexcept { return is_polynomial() && num_.is_constant(); }

    /// min-total-degree(num) - min-total-degree(den).
    int valuation() const;

    RatFunc inverse() const;
    RatFunc conj() const { return {num_.conj(), den_.conj()}; }

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o) { return *this *= o.inverse(); }

    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    friend RatFunc operator-(const RatFunc& a) { return {-a.num_, a.den_}; }
    friend bool operator==(const RatFunc& a, const RatFunc& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string render() const;

private:
    void canonicalize();

    MPoly num_;
    MPoly den_{1};
};

} // namespace qgal

#pragma once

#include "qgal/rational.hpp"

#include <string>
#include <vector>

namespace qgal {

/// Polynomial in the single order-tracking symbol t, truncated above t^order.
class TPoly {
public:
    explicit TPoly(int order = 0) : order_(order) {}
    TPoly(GaussRat c, int order);

    static TPoly monomial(GaussRat c, int power, int order);
    /// Truncates an exact coefficient list.
    static TPoly from_coeffs(std::vector<GaussRat> coeffs, int order);

    int order() const noexcept { return order_; }
    const std::vector<GaussRat>& coeffs() const noexcept { return c_; }
    GaussRat coeff(int k) const;

    bool is_zero() const noexcept { return c_.empty(); }
    /// Lowest power of t with a nonzero coefficient; order+1 for zero.
    int valuation() const noexcept;

    TPoly conj() const;
    /// Inverse in the truncated ring; requires a nonzero constant term.
    TPoly inverse() const;
    TPoly with_order(int order) const;

    TPoly& operator+=(const TPoly& o);
    TPoly& operator-=(const TPoly& o);
    TPoly& operator*=(const TPoly& o);
    TPoly& operator*=(const GaussRat& c);

    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
    friend TPoly operator*(TPoly a, const TPoly& b) { return a *= b; }
    friend TPoly operator-(TPoly a)
    {
        a *= GaussRat(-1);
        return a;
    }
    friend bool operator==(const TPoly& a, const TPoly& b) { return a.c_ == b.c_; }

    /// "1+(2+i)*t^3" style rendering; "0" for zero.
    std::string render() const;

private:
    void trim();

    std::vector<GaussRat> c_;
    int order_;
};

/// Power-series quotient a/b where b(0) != 0, exact through t^order.
std::vector<GaussRat> series_divide(const std::vector<GaussRat>& a, const std::vector<GaussRat>& b,
                                    int order);

} // namespace qgal

#pragma once

#include "qgal/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgal {

using Exponents = std::vector<int>;

/// Graded lexicographic order: total degree first, then the exponent of the
/// earliest variable.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Multivariate polynomial over the Gaussian rationals. Variables are kept
/// sorted by name; binary operations extend both operands to the union of
/// their variable lists.
class MPoly {
public:
    using TermMap = std::map<Exponents, GaussRat, GrlexLess>;

    MPoly() = default;
    MPoly(GaussRat c);
    MPoly(long c) : MPoly(GaussRat(c)) {}

    static MPoly variable(const std::string& name);

    const std::vector<std::string>& vars() const noexcept { return vars_; }
    const TermMap& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    GaussRat constant_term() const;

    int total_degree() const;
    /// Smallest total degree among the terms (the valuation at the origin).
    int min_total_degree() const;
    int degree_in(std::size_t var) const;

    const Exponents& leading_exponents() const;
    const GaussRat& leading_coeff() const;
    MPoly monic() const;
    MPoly conj() const;

    MPoly with_vars(const std::vector<std::string>& superset) const;

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    MPoly& operator*=(const GaussRat& c);

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(MPoly a, const MPoly& b) { return a *= b; }
    friend MPoly operator*(MPoly a, const GaussRat& c) { return a *= c; }
    friend MPoly operator-(MPoly a)
    {
        a *= GaussRat(-1);
        return a;
    }
    friend bool operator==(const MPoly& a, const MPoly& b);

    MPoly pow(int e) const;

    /// Substitutes var_i := c_i * t and returns the exact coefficients of
    /// the resulting univariate polynomial in t (index = power of t).
    std::vector<GaussRat> scale_substitute(const std::map<std::string, Rat>& c) const;

    std::string render() const;

    // Low-level access used by the gcd routines.
    MPoly coefficient_of(std::size_t var, int power) const;
    static MPoly from_terms(std::vector<std::string> vars, TermMap terms);

private:
    void add_term(const Exponents& e, const GaussRat& c);
    void unify_with(MPoly& other);

    std::vector<std::string> vars_;
    TermMap terms_;
};

/// Quotient when `b` divides `a` exactly, nullopt otherwise.
std::optional<MPoly> exact_divide(const MPoly& a, const MPoly& b);

/// Monic greatest common divisor (primitive polynomial remainder sequences,
/// recursive in the variables).
MPoly gcd(const MPoly& a, const MPoly& b);

/// Square root with a positive rational leading coefficient, if one exists.
std::optional<MPoly> poly_sqrt(const MPoly& p);

} // namespace qgal

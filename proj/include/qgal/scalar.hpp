#pragma once

#include "qgal/ratfunc.hpp"
#include "qgal/tpoly.hpp"

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>

namespace qgal {

/// Base value extended by one square root: x + y*s with s*s = radicand.
/// An absent `y` means the value lies in the base ring.
template <class Base>
class Quad {
public:
    Quad(Base x) : x_(std::move(x)) {}
    Quad(Base x, Base y, std::shared_ptr<const Base> radicand);

    const Base& x() const noexcept { return x_; }
    const std::optional<Base>& y() const noexcept { return y_; }
    const std::shared_ptr<const Base>& radicand() const noexcept { return radicand_; }

    bool is_zero() const noexcept { return x_.is_zero() && !y_; }

    Quad conj() const;
    Quad inverse() const;

    Quad& operator+=(const Quad& o);
    Quad& operator-=(const Quad& o);
    Quad& operator*=(const Quad& o);

    friend Quad operator-(const Quad& a)
    {
        Quad out(-a.x_);
        if (a.y_) {
            out.y_ = -*a.y_;
            out.radicand_ = a.radicand_;
        }
        return out;
    }
    friend bool operator==(const Quad& a, const Quad& b)
    {
        if (!(a.x_ == b.x_) || a.y_.has_value() != b.y_.has_value()) {
            return false;
        }
        return !a.y_ || (*a.y_ == *b.y_ && *a.radicand_ == *b.radicand_);
    }

private:
    void merge_radicand(const Quad& o);
    void normalize();

    Base x_;
    std::optional<Base> y_;
    std::shared_ptr<const Base> radicand_;
};

/// Instantiation record for Scaled mode: every parameter l_i := c_i * t,
/// everything truncated above t^order.
struct ScalingContext {
    std::map<std::string, Rat> assignment;
    int order = 0;

    friend bool operator==(const ScalingContext&, const ScalingContext&) = default;
    std::string render() const;
};

using ScalingPtr = std::shared_ptr<const ScalingContext>;

/// Exact coefficient value. Constants are mode-agnostic; Multivariate values
/// are rational functions in named parameters (optionally with one adjoined
/// square root); Scaled values are truncated polynomials in t.
class Scalar {
public:
    enum class Mode { Constant, Multivariate, Scaled };

    struct ScaledValue {
        Quad<TPoly> value;
        ScalingPtr ctx;
    };

    Scalar() : v_(GaussRat{}) {}
    Scalar(long c) : v_(GaussRat(c)) {}
    Scalar(GaussRat c) : v_(std::move(c)) {}
    Scalar(RatFunc r);
    Scalar(Quad<RatFunc> q);
    Scalar(Quad<TPoly> q, ScalingPtr ctx);

    static Scalar i() { return GaussRat::i(); }
    static Scalar param(const std::string& name) { return RatFunc(MPoly::variable(name)); }
    static Scalar rational(long num, long den) { return GaussRat(Rat(num, den)); }

    Mode mode() const noexcept { return static_cast<Mode>(v_.index()); }
    bool is_zero() const noexcept;
    bool is_constant() const noexcept { return mode() == Mode::Constant; }
    const GaussRat* constant() const noexcept { return std::get_if<GaussRat>(&v_); }
    const Quad<RatFunc>* multivariate() const noexcept { return std::get_if<Quad<RatFunc>>(&v_); }
    const ScaledValue* scaled() const noexcept { return std::get_if<ScaledValue>(&v_); }

    /// Parameter order: total-degree valuation (Multivariate) or lowest power
    /// of t (Scaled). Zero has a huge valuation.
    int valuation() const;

    Scalar conj() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a);
    friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }

    /// Exact text ("3/4", "i", "-1/6*l1^2", "(2+i)*t^3"). With `as_factor`,
    /// multi-term values are parenthesized.
    std::string render(bool as_factor = false) const;

    /// Value with every parameter set to zero. Requires nonnegative valuation
    /// and a well-defined limit; throws NotDefinedAtZero otherwise.
    Scalar classical_value() const;

private:
    friend class ScalarAccess;
    using Variant = std::variant<GaussRat, Quad<RatFunc>, ScaledValue>;
    explicit Scalar(Variant v) : v_(std::move(v)) {}
    void normalize();

    Variant v_;
};

/// A denominator expression of a case, used to reject degenerate draws.
struct Denominator {
    std::string text;
    Scalar value;
};

/// Builds a scaling context after checking every c_i != 0 and every listed
/// denominator nonzero under the assignment.
ScalingPtr scale_instantiate(const std::map<std::string, Rat>& assignment, int order,
                             std::span<const Denominator> denominators = {});

/// Converts a Constant or Multivariate value into Scaled mode. Poles that do
/// not cancel raise NotDefinedAtZero; vanishing denominators raise
/// DegenerateInstantiation.
Scalar to_scaled(const Scalar& value, const ScalingPtr& ctx);

/// A Scaled value cut back to a lower order of the same instantiation.
/// Constants are lifted.
Scalar reduce_order(const Scalar& value, const ScalingPtr& ctx);

/// True when the value vanishes identically after l_i := c_i * t (exact,
/// no truncation).
bool vanishes_under(const Scalar& value, const std::map<std::string, Rat>& assignment);

/// Square root. Scaled mode requires a monomial t^(2k) * q^2 unless
/// `allow_quad`; Multivariate adjoins the root when the radicand is not a
/// polynomial square.
Scalar sqrt_scalar(const Scalar& d, bool allow_quad = false);

} // namespace qgal

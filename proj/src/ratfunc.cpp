#include "qgal/ratfunc.hpp"

#include "qgal/error.hpp"

namespace qgal {

RatFunc::RatFunc(MPoly num) : num_(std::move(num)) {}

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
    }
    canonicalize();
}

void RatFunc::canonicalize()
{
    if (num_.is_zero()) {
        den_ = MPoly(1);
        return;
    }
    if (den_.is_constant()) {
        if (!den_.constant_term().is_one()) {
            num_ *= den_.constant_term().inverse();
            den_ = MPoly(1);
        }
        return;
    }
    MPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = *exact_divide(num_, g);
        den_ = *exact_divide(den_, g);
    }
    const GaussRat lc = den_.leading_coeff();
    if (!lc.is_one()) {
        const GaussRat inv = lc.inverse();
        num_ *= inv;
        den_ *= inv;
    }
    if (den_.is_constant()) {
        den_ = MPoly(1);
    }
}

int RatFunc::valuation() const
{
    if (num_.is_zero()) {
        return 1 << 20;
    }
    return num_.min_total_degree() - den_.min_total_degree();
}

RatFunc RatFunc::inverse() const
{
    if (num_.is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "inverse of zero rational function");
    }
    return {den_, num_};
}

RatFunc& RatFunc::operator+=(const RatFunc& o)
{
    if (is_polynomial() && o.is_polynomial()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
    }
    canonicalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o)
{
    return *this += -o;
}

RatFunc& RatFunc::operator*=(const RatFunc& o)
{
    if (is_polynomial() && o.is_polynomial()) {
        num_ *= o.num_;
        return *this;
    }
    num_ *= o.num_;
    den_ *= o.den_;
    canonicalize();
    return *this;
}

std::string RatFunc::render() const
{
    if (is_polynomial()) {
        return num_.render();
    }
    return "(" + num_.render() + ")/(" + den_.render() + ")";
}

} // namespace qgal

#include "qgal/tpoly.hpp"

#include "qgal/error.hpp"

#include <algorithm>

namespace qgal {

TPoly::TPoly(GaussRat c, int order) : order_(order)
{
    if (!c.is_zero() && order >= 0) {
        c_.push_back(std::move(c));
    }
}

TPoly TPoly::monomial(GaussRat c, int power, int order)
{
    TPoly p(order);
    if (power <= order && !c.is_zero()) {
        p.c_.resize(static_cast<std::size_t>(power) + 1);
        p.c_[static_cast<std::size_t>(power)] = std::move(c);
    }
    return p;
}

TPoly TPoly::from_coeffs(std::vector<GaussRat> coeffs, int order)
{
    TPoly p(order);
    if (static_cast<int>(coeffs.size()) > order + 1) {
        coeffs.resize(static_cast<std::size_t>(order) + 1);
    }
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
}

void TPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero()) {
        c_.pop_back();
    }
}

GaussRat TPoly::coeff(int k) const
{
    if (k < 0 || k >= static_cast<int>(c_.size())) {
        return {};
    }
    return c_[static_cast<std::size_t>(k)];
}

int TPoly::valuation() const noexcept
{
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (!c_[k].is_zero()) {
            return static_cast<int>(k);
        }
    }
    return order_ + 1;
}

TPoly TPoly::conj() const
{
    TPoly p(order_);
    p.c_.reserve(c_.size());
    for (const auto& c : c_) {
        p.c_.push_back(c.conj());
    }
    return p;
}

TPoly TPoly::with_order(int order) const
{
    return from_coeffs(c_, order);
}

TPoly TPoly::inverse() const
{
    if (c_.empty() || c_[0].is_zero()) {
        throw Error(ErrorCode::DivisionByZero,
                    "t-polynomial " + render() + " is not invertible (zero constant term)");
    }
    return from_coeffs(series_divide({GaussRat(1)}, c_, order_), order_);
}

TPoly& TPoly::operator+=(const TPoly& o)
{
    order_ = std::min(order_, o.order_);
    if (c_.size() < o.c_.size()) {
        c_.resize(o.c_.size());
    }
    for (std::size_t k = 0; k < o.c_.size(); ++k) {
        c_[k] += o.c_[k];
    }
    if (static_cast<int>(c_.size()) > order_ + 1) {
        c_.resize(static_cast<std::size_t>(order_) + 1);
    }
    trim();
    return *this;
}

TPoly& TPoly::operator-=(const TPoly& o)
{
    return *this += -o;
}

TPoly& TPoly::operator*=(const GaussRat& c)
{
    if (c.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_) {
        v *= c;
    }
    return *this;
}

TPoly& TPoly::operator*=(const TPoly& o)
{
    order_ = std::min(order_, o.order_);
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    const std::size_t n = std::min(c_.size() + o.c_.size() - 1, static_cast<std::size_t>(order_) + 1);
    std::vector<GaussRat> out(n);
    for (std::size_t a = 0; a < c_.size() && a < n; ++a) {
        if (c_[a].is_zero()) {
            continue;
        }
        for (std::size_t b = 0; b < o.c_.size() && a + b < n; ++b) {
            if (!o.c_[b].is_zero()) {
                out[a + b] += c_[a] * o.c_[b];
            }
        }
    }
    c_ = std::move(out);
    trim();
    return *this;
}

std::string TPoly::render() const
{
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) {
            continue;
        }
        std::string term;
        if (k == 0) {
            term = qgal::render(c_[k]);
        } else {
            std::string mono = k == 1 ? "t" : "t^" + std::to_string(k);
            if (c_[k].is_one()) {
                term = mono;
            } else if (c_[k] == GaussRat(-1)) {
                term = "-" + mono;
            } else {
                term = qgal::render(c_[k], true) + "*" + mono;
            }
        }
        if (!s.empty() && term[0] != '-') {
            s += "+";
        }
        s += term;
    }
    return s.empty() ? "0" : s;
}

std::vector<GaussRat> series_divide(const std::vector<GaussRat>& a, const std::vector<GaussRat>& b,
                                    int order)
{
    if (b.empty() || b[0].is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "series division by a non-unit");
    }
    const GaussRat b0_inv = b[0].inverse();
    std::vector<GaussRat> q(static_cast<std::size_t>(std::max(order, -1) + 1));
    for (std::size_t k = 0; k < q.size(); ++k) {
        GaussRat acc = k < a.size() ? a[k] : GaussRat{};
        for (std::size_t j = 1; j <= k && j < b.size(); ++j) {
            if (!b[j].is_zero() && !q[k - j].is_zero()) {
                acc -= b[j] * q[k - j];
            }
        }
        q[k] = acc * b0_inv;
    }
    return q;
}

} // namespace qgal

#include "qgal/series.hpp"

#include "qgal/error.hpp"

namespace qgal {

std::optional<SeriesFn> series_fn_from_name(std::string_view n)
{
    if (n == "exp") return SeriesFn::Exp;
    if (n == "log1p") return SeriesFn::Log1p;
    if (n == "inv1p") return SeriesFn::Inv1p;
    if (n == "cosh") return SeriesFn::Cosh;
    if (n == "sinh") return SeriesFn::Sinh;
    return std::nullopt;
}

std::string_view name(SeriesFn f)
{
    switch (f) {
    case SeriesFn::Exp: return "exp";
    case SeriesFn::Log1p: return "log1p";
    case SeriesFn::Inv1p: return "inv1p";
    case SeriesFn::Cosh: return "cosh";
    case SeriesFn::Sinh: return "sinh";
    }
    return "?";
}

namespace {

// Taylor coefficient of x^k.
Scalar taylor(SeriesFn f, int k)
{
    switch (f) {
    case SeriesFn::Exp: return GaussRat(Rat(1) / factorial(k));
    case SeriesFn::Log1p: return k == 0 ? Scalar(0) : Scalar::rational(k % 2 ? 1 : -1, k);
    case SeriesFn::Inv1p: return Scalar(k % 2 ? -1 : 1);
    case SeriesFn::Cosh: return k % 2 ? Scalar(0) : Scalar(GaussRat(Rat(1) / factorial(k)));
    case SeriesFn::Sinh: return k % 2 ? Scalar(GaussRat(Rat(1) / factorial(k))) : Scalar(0);
    }
    return {};
}

template <class P>
bool nilpotent_by_valuation(const P& x)
{
    for (const auto& [k, c] : x.terms()) {
        if (c.mode() != Scalar::Mode::Scaled || c.valuation() < 1) {
            return false;
        }
    }
    return true;
}

NcPoly unit_like(const NcPoly& x)
{
    NcPoly u = NcPoly::constant(Scalar(1));
    u.set_truncation(x.truncation());
    return u;
}

TensorPoly unit_like(const TensorPoly& x)
{
    TensorPoly u = TensorPoly::unit(x.slots());
    u.set_truncation(x.truncation());
    return u;
}

NcPoly times(const NcPoly& a, const NcPoly& b, const RewriteSystem* rws) { return multiply(a, b, rws); }
TensorPoly times(const TensorPoly& a, const TensorPoly& b, const RewriteSystem* rws)
{
    return tensor_multiply(a, b, rws);
}

template <class P>
P apply(SeriesFn f, const P& x, const RewriteSystem* rws)
{
    if (!x.constant_term().is_zero()) {
        throw Error(ErrorCode::NonzeroConstantTerm,
                    std::string(name(f)) + " argument has constant term " + x.constant_term().render());
    }
    if (!x.truncation() && !nilpotent_by_valuation(x)) {
        throw Error(ErrorCode::MissingTruncation, std::string(name(f)) + " of an untruncated argument");
    }
    P out = unit_like(x);
    out *= taylor(f, 0);
    P pw = unit_like(x);
    for (int k = 1;; ++k) {
        pw = times(pw, x, rws);
        if (pw.is_zero()) {
            break;
        }
        if (k > 256) {
            throw Error(ErrorCode::TerminationBudgetExceeded,
                        std::string(name(f)) + " series did not terminate");
        }
        const Scalar c = taylor(f, k);
        if (!c.is_zero()) {
            P term = pw;
            term *= c;
            out += term;
        }
    }
    return out;
}

Scalar divide_coefficient(const Scalar& c, const Scalar& divisor)
{
    if (c.mode() == Scalar::Mode::Scaled || divisor.mode() == Scalar::Mode::Scaled) {
        throw Error(ErrorCode::ModeMismatch, "parameter division needs Multivariate coefficients");
    }
    const Scalar q = c / divisor;
    auto polynomial = [](const Scalar& s) {
        const auto* m = s.multivariate();
        return !m || (m->x().is_polynomial() && (!m->y() || m->y()->is_polynomial()));
    };
    if (polynomial(c) && !polynomial(q)) {
        throw Error(ErrorCode::NotDivisible, c.render() + " is not divisible by " + divisor.render());
    }
    if (!polynomial(c) && q.valuation() < 0 && c.valuation() >= 0) {
        throw Error(ErrorCode::NotDivisible, c.render() + " is not divisible by " + divisor.render());
    }
    return q;
}

} // namespace

NcPoly series_apply(SeriesFn f, const NcPoly& x, const RewriteSystem* rws)
{
    return apply(f, x, rws);
}

TensorPoly series_apply(SeriesFn f, const TensorPoly& x, const RewriteSystem* rws)
{
    return apply(f, x, rws);
}

NcPoly divide_by_parameter(const NcPoly& p, const Scalar& divisor)
{
    return p.map_coefficients([&](const Scalar& c) { return divide_coefficient(c, divisor); });
}

TensorPoly divide_by_parameter(const TensorPoly& p, const Scalar& divisor)
{
    return p.map_coefficients([&](const Scalar& c) { return divide_coefficient(c, divisor); });
}

} // namespace qgal

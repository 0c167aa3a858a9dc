#include "qgal/scalar.hpp"

#include "qgal/error.hpp"

#include <algorithm>

namespace qgal {

// ---- Quad ----------------------------------------------------------------

template <class Base>
Quad<Base>::Quad(Base x, Base y, std::shared_ptr<const Base> radicand)
    : x_(std::move(x)), y_(std::move(y)), radicand_(std::move(radicand))
{
    normalize();
}

template <class Base>
void Quad<Base>::normalize()
{
    if (y_ && (y_->is_zero() || radicand_->is_zero())) {
        y_.reset();
        radicand_.reset();
    }
}

template <class Base>
void Quad<Base>::merge_radicand(const Quad& o)
{
    if (!o.y_) {
        return;
    }
    if (!y_) {
        radicand_ = o.radicand_;
    } else if (radicand_ != o.radicand_ && !(*radicand_ == *o.radicand_)) {
        throw Error(ErrorCode::InvalidArgument, "values with different adjoined square roots");
    }
}

// The radicand is real, so the adjoined root is fixed by conjugation.
template <class Base>
Quad<Base> Quad<Base>::conj() const
{
    Quad out(x_.conj());
    if (y_) {
        out.y_ = y_->conj();
        out.radicand_ = radicand_;
    }
    return out;
}

template <class Base>
Quad<Base> Quad<Base>::inverse() const
{
    if (!y_) {
        return Quad(x_.inverse());
    }
    const Base norm_inv = (x_ * x_ - *y_ * *y_ * *radicand_).inverse();
    return Quad(x_ * norm_inv, -(*y_ * norm_inv), radicand_);
}

template <class Base>
Quad<Base>& Quad<Base>::operator+=(const Quad& o)
{
    merge_radicand(o);
    x_ += o.x_;
    if (o.y_) {
        y_ = y_ ? *y_ + *o.y_ : *o.y_;
    }
    normalize();
    return *this;
}

template <class Base>
Quad<Base>& Quad<Base>::operator-=(const Quad& o)
{
    return *this += -o;
}

template <class Base>
Quad<Base>& Quad<Base>::operator*=(const Quad& o)
{
    merge_radicand(o);
    if (!y_ && !o.y_) {
        x_ *= o.x_;
        return *this;
    }
    Base nx = x_ * o.x_;
    std::optional<Base> ny;
    auto add_y = [&](Base v) { ny = ny ? *ny + v : v; };
    if (y_ && o.y_) {
        nx += *y_ * *o.y_ * *radicand_;
    }
    if (o.y_) {
        add_y(x_ * *o.y_);
    }
    if (y_) {
        add_y(*y_ * o.x_);
    }
    x_ = std::move(nx);
    y_ = std::move(ny);
    normalize();
    return *this;
}

template class Quad<RatFunc>;
template class Quad<TPoly>;

// ---- helpers -------------------------------------------------------------

namespace {

constexpr int kZeroValuation = 1 << 20;

// True when the text has no top-level '+' or '-' after its first character.
bool single_term(const std::string& s)
{
    int depth = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const char c = s[k];
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        } else if (depth == 0 && k > 0 && (c == '+' || c == '-') && s[k - 1] != '^') {
            return false;
        }
    }
    return true;
}

std::string wrap(const std::string& s, bool as_factor)
{
    return as_factor && !single_term(s) ? "(" + s + ")" : s;
}

template <class Base>
std::string render_quad(const Quad<Base>& q)
{
    if (!q.y()) {
        return q.x().render();
    }
    std::string ys = q.y()->render();
    std::string root = "sqrt(" + q.radicand()->render() + ")";
    std::string ypart;
    if (ys == "1") {
        ypart = root;
    } else if (ys == "-1") {
        ypart = "-" + root;
    } else {
        ypart = wrap(ys, true) + "*" + root;
    }
    if (q.x().is_zero()) {
        return ypart;
    }
    return q.x().render() + (ypart[0] == '-' ? "" : "+") + ypart;
}

// Truncated Laurent series in t: c[j] is the coefficient of t^(low+j).
struct Laurent {
    int low = kZeroValuation;
    std::vector<GaussRat> c;

    bool is_zero() const
    {
        return std::all_of(c.begin(), c.end(), [](const GaussRat& g) { return g.is_zero(); });
    }
};

int leading_index(const std::vector<GaussRat>& v)
{
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_zero()) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

std::vector<GaussRat> shifted(const std::vector<GaussRat>& v, int by)
{
    return {v.begin() + by, v.end()};
}

struct Substituted {
    std::vector<GaussRat> num;
    std::vector<GaussRat> den;
    int low = kZeroValuation; // kZeroValuation when the value vanishes
    int vn = 0;
    int vd = 0;
};

Substituted substitute(const RatFunc& r, const std::map<std::string, Rat>& a)
{
    Substituted s;
    s.num = r.num().scale_substitute(a);
    s.den = r.den().scale_substitute(a);
    s.vd = leading_index(s.den);
    if (s.vd < 0) {
        throw Error(ErrorCode::DegenerateInstantiation,
                    "denominator " + r.den().render() + " vanishes under the instantiation");
    }
    s.vn = leading_index(s.num);
    if (s.vn >= 0) {
        s.low = s.vn - s.vd;
    }
    return s;
}

// Coefficients of t^low .. t^upto.
Laurent expand(const Substituted& s, int upto)
{
    Laurent out;
    out.low = s.low;
    if (s.low == kZeroValuation || upto < s.low) {
        return out;
    }
    out.c = series_divide(shifted(s.num, s.vn), shifted(s.den, s.vd), upto - s.low);
    return out;
}

// Square root of a Laurent series whose coefficients run through t^upto_in;
// the result is exact through t^(upto_in - low/2).
Laurent laurent_sqrt(const Laurent& d, const std::string& what)
{
    Laurent out;
    if (d.low == kZeroValuation || d.c.empty()) {
        return out;
    }
    if (d.low % 2 != 0 || !d.c[0].is_real() || sgn(d.c[0].re()) <= 0) {
        throw Error(ErrorCode::NotAPerfectSquare, what + " has no square root in Q(i)[[t]]");
    }
    auto r0 = rat_sqrt(d.c[0].re());
    if (!r0) {
        throw Error(ErrorCode::NotAPerfectSquare,
                    what + " has leading coefficient " + render(d.c[0].re()) +
                        ", not a rational square");
    }
    out.low = d.low / 2;
    out.c.resize(d.c.size());
    out.c[0] = GaussRat(*r0);
    const GaussRat inv2r0 = GaussRat(Rat(1) / (2 * *r0));
    for (std::size_t k = 1; k < d.c.size(); ++k) {
        GaussRat acc = d.c[k];
        for (std::size_t j = 1; j < k; ++j) {
            acc -= out.c[j] * out.c[k - j];
        }
        out.c[k] = acc * inv2r0;
    }
    return out;
}

Laurent multiply(const Laurent& a, const Laurent& b, int upto)
{
    Laurent out;
    if (a.low == kZeroValuation || b.low == kZeroValuation) {
        return out;
    }
    out.low = a.low + b.low;
    if (upto < out.low) {
        return out;
    }
    out.c.resize(static_cast<std::size_t>(upto - out.low) + 1);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        for (std::size_t j = 0; j < b.c.size() && i + j < out.c.size(); ++j) {
            out.c[i + j] += a.c[i] * b.c[j];
        }
    }
    return out;
}

// Exact Laurent expansion of a Multivariate value, valid through t^upto.
Laurent expand_quad(const Quad<RatFunc>& q, const std::map<std::string, Rat>& a, int upto)
{
    const Substituted sx = substitute(q.x(), a);
    Laurent total = expand(sx, upto);
    if (!q.y()) {
        return total;
    }
    const Substituted sy = substitute(*q.y(), a);
    const Substituted sd = substitute(*q.radicand(), a);
    if (sy.low == kZeroValuation || sd.low == kZeroValuation) {
        return total;
    }
    if (sd.low % 2 != 0) {
        throw Error(ErrorCode::NotAPerfectSquare,
                    "radicand " + q.radicand()->render() + " has odd order under the instantiation");
    }
    const int ls = sd.low / 2;
    const Laurent y = expand(sy, upto - ls);
    const Laurent s = laurent_sqrt(expand(sd, upto - sy.low + ls), "radicand " + q.radicand()->render());
    const Laurent ys = multiply(y, s, upto);
    if (ys.low == kZeroValuation) {
        return total;
    }
    const int low = std::min(total.low == kZeroValuation ? ys.low : total.low, ys.low);
    Laurent sum;
    sum.low = low;
    sum.c.resize(static_cast<std::size_t>(std::max(upto - low + 1, 0)));
    for (const Laurent* part : std::initializer_list<const Laurent*>{&total, &ys}) {
        for (std::size_t j = 0; j < part->c.size(); ++j) {
            const int e = part->low + static_cast<int>(j);
            if (e <= upto) {
                sum.c[static_cast<std::size_t>(e - low)] += part->c[j];
            }
        }
    }
    return sum;
}

} // namespace

// ---- Scalar --------------------------------------------------------------

Scalar::Scalar(RatFunc r) : v_(Quad<RatFunc>(std::move(r)))
{
    normalize();
}

Scalar::Scalar(Quad<RatFunc> q) : v_(std::move(q))
{
    normalize();
}

Scalar::Scalar(Quad<TPoly> q, ScalingPtr ctx) : v_(ScaledValue{std::move(q), std::move(ctx)}) {}

void Scalar::normalize()
{
    if (auto* q = std::get_if<Quad<RatFunc>>(&v_); q && !q->y() && q->x().is_constant()) {
        v_ = q->x().num().constant_term();
    }
}

bool Scalar::is_zero() const noexcept
{
    return std::visit(
        [](const auto& v) {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ScaledValue>) {
                return v.value.is_zero();
            } else {
                return v.is_zero();
            }
        },
        v_);
}

int Scalar::valuation() const
{
    if (is_zero()) {
        return kZeroValuation;
    }
    if (is_constant()) {
        return 0;
    }
    if (const auto* q = multivariate()) {
        int v = q->x().valuation();
        if (q->y()) {
            v = std::min(v, q->y()->valuation() + q->radicand()->valuation() / 2);
        }
        return v;
    }
    const auto& q = scaled()->value;
    int v = q.x().is_zero() ? kZeroValuation : q.x().valuation();
    if (q.y()) {
        v = std::min(v, q.y()->valuation() + q.radicand()->valuation() / 2);
    }
    return v;
}

Scalar Scalar::conj() const
{
    if (const auto* c = constant()) {
        return c->conj();
    }
    if (const auto* q = multivariate()) {
        return q->conj();
    }
    return {scaled()->value.conj(), scaled()->ctx};
}

Scalar Scalar::inverse() const
{
    if (is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "division by zero scalar");
    }
    if (const auto* c = constant()) {
        return c->inverse();
    }
    if (const auto* q = multivariate()) {
        return q->inverse();
    }
    const auto& s = *scaled();
    const TPoly& x = s.value.x();
    if (!s.value.y() && x.valuation() > 0) {
        throw Error(ErrorCode::NotInvertibleAtTruncation,
                    x.render() + " is not a unit modulo t^" + std::to_string(s.ctx->order + 1));
    }
    return {s.value.inverse(), s.ctx};
}

namespace {

Quad<TPoly> lift(const GaussRat& c, const ScalingContext& ctx)
{
    return Quad<TPoly>(TPoly(c, ctx.order));
}

ScalingPtr same_context(const ScalingPtr& a, const ScalingPtr& b)
{
    if (a != b && !(*a == *b)) {
        throw Error(ErrorCode::ModeMismatch,
                    "Scaled values from different instantiations: " + a->render() + " vs " + b->render());
    }
    return a;
}

} // namespace

class ScalarAccess {
public:
    template <class Op>
    static void combine(Scalar& a, const Scalar& b, Op op)
    {
        using Mode = Scalar::Mode;
        const Mode ma = a.mode();
        const Mode mb = b.mode();
        if (ma == Mode::Constant && mb == Mode::Constant) {
            op(std::get<GaussRat>(a.v_), *b.constant());
            return;
        }
        if ((ma == Mode::Multivariate && mb == Mode::Scaled) ||
            (ma == Mode::Scaled && mb == Mode::Multivariate)) {
            throw Error(ErrorCode::ModeMismatch, "mixing Multivariate and Scaled scalars");
        }
        if (ma == Mode::Scaled || mb == Mode::Scaled) {
            const ScalingPtr ctx = ma == Mode::Scaled && mb == Mode::Scaled
                                       ? same_context(a.scaled()->ctx, b.scaled()->ctx)
                                       : (ma == Mode::Scaled ? a.scaled()->ctx : b.scaled()->ctx);
            Quad<TPoly> lhs = ma == Mode::Scaled ? a.scaled()->value : lift(*a.constant(), *ctx);
            const Quad<TPoly> rhs = mb == Mode::Scaled ? b.scaled()->value : lift(*b.constant(), *ctx);
            op(lhs, rhs);
            a.v_ = Scalar::ScaledValue{std::move(lhs), ctx};
            return;
        }
        Quad<RatFunc> lhs = ma == Mode::Multivariate ? *a.multivariate() : Quad<RatFunc>(RatFunc(*a.constant()));
        const Quad<RatFunc> rhs =
            mb == Mode::Multivariate ? *b.multivariate() : Quad<RatFunc>(RatFunc(*b.constant()));
        op(lhs, rhs);
        a.v_ = std::move(lhs);
        a.normalize();
    }
};

Scalar& Scalar::operator+=(const Scalar& o)
{
    ScalarAccess::combine(*this, o, [](auto& x, const auto& y) { x += y; });
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    ScalarAccess::combine(*this, o, [](auto& x, const auto& y) { x -= y; });
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    ScalarAccess::combine(*this, o, [](auto& x, const auto& y) { x *= y; });
    return *this;
}

Scalar operator-(const Scalar& a)
{
    if (const auto* c = a.constant()) {
        return -*c;
    }
    if (const auto* q = a.multivariate()) {
        return -*q;
    }
    return {-a.scaled()->value, a.scaled()->ctx};
}

std::string Scalar::render(bool as_factor) const
{
    if (const auto* c = constant()) {
        return qgal::render(*c, as_factor);
    }
    if (const auto* q = multivariate()) {
        return wrap(render_quad(*q), as_factor);
    }
    return wrap(render_quad(scaled()->value), as_factor);
}

Scalar Scalar::classical_value() const
{
    if (const auto* c = constant()) {
        return *c;
    }
    if (const auto* s = scaled()) {
        if (s->value.y()) {
            throw Error(ErrorCode::NotDefinedAtZero, "adjoined square root in " + render());
        }
        return s->value.x().coeff(0);
    }
    const auto& q = *multivariate();
    auto at_zero = [this](const RatFunc& r) -> GaussRat {
        if (r.is_zero()) {
            return {};
        }
        const int v = r.valuation();
        if (v > 0) {
            return {};
        }
        const GaussRat d = r.den().min_total_degree() == 0 ? r.den().constant_term() : GaussRat{};
        if (v < 0 || d.is_zero()) {
            throw Error(ErrorCode::NotDefinedAtZero, render() + " has no limit at zero parameters");
        }
        return r.num().constant_term() / d;
    };
    GaussRat out = at_zero(q.x());
    if (q.y()) {
        const int v = q.y()->valuation() * 2 + q.radicand()->valuation();
        if (v <= 0) {
            throw Error(ErrorCode::NotDefinedAtZero, render() + " has no limit at zero parameters");
        }
    }
    return out;
}

std::string ScalingContext::render() const
{
    std::string s;
    for (const auto& [name, c] : assignment) {
        if (!s.empty()) {
            s += " ";
        }
        s += name + ":=" + qgal::render(c) + "*t";
    }
    return s + " mod t^" + std::to_string(order + 1);
}

ScalingPtr scale_instantiate(const std::map<std::string, Rat>& assignment, int order,
                             std::span<const Denominator> denominators)
{
    if (order < 0) {
        throw Error(ErrorCode::InvalidArgument, "truncation order must be nonnegative");
    }
    for (const auto& [name, c] : assignment) {
        if (sgn(c) == 0) {
            throw Error(ErrorCode::DegenerateInstantiation, "parameter " + name + " assigned zero");
        }
    }
    for (const auto& d : denominators) {
        bool vanishes = false;
        try {
            vanishes = vanishes_under(d.value, assignment);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateInstantiation) {
                throw;
            }
            vanishes = true;
        }
        if (vanishes) {
            throw Error(ErrorCode::DegenerateInstantiation,
                        "denominator " + d.text + " vanishes under the instantiation");
        }
    }
    return std::make_shared<const ScalingContext>(ScalingContext{assignment, order});
}

bool vanishes_under(const Scalar& value, const std::map<std::string, Rat>& assignment)
{
    if (value.is_constant()) {
        return value.is_zero();
    }
    if (const auto* s = value.scaled()) {
        return s->value.is_zero();
    }
    const auto& q = *value.multivariate();
    if (!q.y()) {
        return substitute(q.x(), assignment).low == kZeroValuation;
    }
    const RatFunc norm = q.x() * q.x() - *q.y() * *q.y() * *q.radicand();
    if (substitute(norm, assignment).low != kZeroValuation) {
        return false;
    }
    // x = +-y*s exactly; the sign decides, read off a long expansion.
    const Substituted sy = substitute(*q.y(), assignment);
    const int probe = (sy.low == kZeroValuation ? 0 : std::max(sy.low, 0)) + 16;
    return expand_quad(q, assignment, probe).is_zero();
}

Scalar reduce_order(const Scalar& value, const ScalingPtr& ctx)
{
    if (const auto* c = value.constant()) {
        return {lift(*c, *ctx), ctx};
    }
    const auto* s = value.scaled();
    if (!s || s->ctx->assignment != ctx->assignment || s->ctx->order < ctx->order) {
        throw Error(ErrorCode::ModeMismatch, "cannot reduce " + value.render() + " to " + ctx->render());
    }
    const Quad<TPoly>& q = s->value;
    if (!q.y()) {
        return {Quad<TPoly>(q.x().with_order(ctx->order)), ctx};
    }
    return {Quad<TPoly>(q.x().with_order(ctx->order), q.y()->with_order(ctx->order),
                        std::make_shared<const TPoly>(q.radicand()->with_order(ctx->order))),
            ctx};
}

Scalar to_scaled(const Scalar& value, const ScalingPtr& ctx)
{
    if (const auto* c = value.constant()) {
        return {lift(*c, *ctx), ctx};
    }
    if (const auto* s = value.scaled()) {
        same_context(s->ctx, ctx);
        return value;
    }
    const Laurent l = expand_quad(*value.multivariate(), ctx->assignment, ctx->order);
    std::vector<GaussRat> coeffs(static_cast<std::size_t>(ctx->order) + 1);
    for (std::size_t j = 0; j < l.c.size(); ++j) {
        const int e = l.low + static_cast<int>(j);
        if (l.c[j].is_zero()) {
            continue;
        }
        if (e < 0) {
            throw Error(ErrorCode::NotDefinedAtZero,
                        value.render() + " has a pole at t = 0 under " + ctx->render());
        }
        if (e <= ctx->order) {
            coeffs[static_cast<std::size_t>(e)] = l.c[j];
        }
    }
    return {Quad<TPoly>(TPoly::from_coeffs(std::move(coeffs), ctx->order)), ctx};
}

Scalar sqrt_scalar(const Scalar& d, bool allow_quad)
{
    if (d.is_zero()) {
        return d;
    }
    if (const auto* c = d.constant()) {
        if (c->is_real() && sgn(c->re()) > 0) {
            if (auto r = rat_sqrt(c->re())) {
                return GaussRat(*r);
            }
        }
        if (!allow_quad) {
            throw Error(ErrorCode::NotAPerfectSquare, render(*c) + " is not a rational square");
        }
        return Quad<RatFunc>(RatFunc(0), RatFunc(1), std::make_shared<const RatFunc>(*c));
    }
    if (const auto* q = d.multivariate()) {
        if (q->y()) {
            throw Error(ErrorCode::InvalidArgument, "nested square roots are not supported");
        }
        const RatFunc& r = q->x();
        auto n = poly_sqrt(r.num());
        auto m = poly_sqrt(r.den());
        if (n && m) {
            return RatFunc(*n, *m);
        }
        return Quad<RatFunc>(RatFunc(0), RatFunc(1), std::make_shared<const RatFunc>(r));
    }
    const auto& s = *d.scaled();
    if (!s.value.y()) {
        const TPoly& x = s.value.x();
        const int v = x.valuation();
        const GaussRat lead = x.coeff(v);
        const bool monomial = static_cast<int>(x.coeffs().size()) == v + 1;
        if (monomial && v % 2 == 0 && lead.is_real() && sgn(lead.re()) > 0) {
            if (auto r = rat_sqrt(lead.re())) {
                return {Quad<TPoly>(TPoly::monomial(GaussRat(*r), v / 2, s.ctx->order)), s.ctx};
            }
        }
        if (allow_quad) {
            return {Quad<TPoly>(TPoly(s.ctx->order), TPoly(GaussRat(1), s.ctx->order),
                                std::make_shared<const TPoly>(x)),
                    s.ctx};
        }
        throw Error(ErrorCode::NotAPerfectSquare, x.render() + " is not of the form t^(2k)*q^2");
    }
    throw Error(ErrorCode::InvalidArgument, "nested square roots are not supported");
}

} // namespace qgal

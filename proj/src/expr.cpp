#include "qgal/expr.hpp"

#include "qgal/error.hpp"

#include <cctype>

namespace qgal {

// ---- construction and canonical shape ------------------------------------
//
// The parser and the builders agree on one shape so that rendering and
// re-parsing is the identity: a leading negation is hoisted out of products
// and quotients, and a quotient of two literals folds into one literal.

bool operator==(const Expr& a, const Expr& b)
{
    return a.kind == b.kind && a.number == b.number && a.name == b.name && a.exponent == b.exponent &&
           a.args == b.args;
}

Expr Expr::num(Rat r)
{
    if (sgn(r) < 0) {
        return neg(num(-r));
    }
    Expr e;
    e.kind = Kind::Number;
    e.number = std::move(r);
    return e;
}

Expr Expr::imag()
{
    Expr e;
    e.kind = Kind::Imag;
    return e;
}

Expr Expr::param(std::string n)
{
    Expr e;
    e.kind = Kind::Param;
    e.name = std::move(n);
    return e;
}

Expr Expr::gen(std::string n)
{
    Expr e;
    e.kind = Kind::Gen;
    e.name = std::move(n);
    return e;
}

Expr Expr::add(std::vector<Expr> terms)
{
    if (terms.size() == 1) {
        return std::move(terms[0]);
    }
    Expr e;
    e.kind = Kind::Add;
    e.args = std::move(terms);
    return e;
}

Expr Expr::neg(Expr a)
{
    Expr e;
    e.kind = Kind::Neg;
    e.args.push_back(std::move(a));
    return e;
}

Expr Expr::mul(std::vector<Expr> factors)
{
    if (factors.size() == 1) {
        return std::move(factors[0]);
    }
    if (factors[0].kind == Kind::Neg) {
        Expr inner = std::move(factors[0].args[0]);
        factors[0] = std::move(inner);
        return neg(mul(std::move(factors)));
    }
    Expr e;
    e.kind = Kind::Mul;
    e.args = std::move(factors);
    return e;
}

Expr Expr::div(Expr a, Expr b)
{
    if (a.kind == Kind::Neg) {
        return neg(div(std::move(a.args[0]), std::move(b)));
    }
    if (a.kind == Kind::Number && b.kind == Kind::Number && sgn(b.number) != 0) {
        return num(a.number / b.number);
    }
    Expr e;
    e.kind = Kind::Div;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
}

Expr Expr::pow(Expr base, int exponent)
{
    Expr e;
    e.kind = Kind::Pow;
    e.exponent = exponent;
    e.args.push_back(std::move(base));
    return e;
}

Expr Expr::tensor(std::vector<Expr> slots)
{
    if (slots.size() == 1) {
        return std::move(slots[0]);
    }
    Expr e;
    e.kind = Kind::Tensor;
    e.args = std::move(slots);
    return e;
}

Expr Expr::call(std::string fn, Expr arg)
{
    Expr e;
    e.kind = Kind::Call;
    e.name = std::move(fn);
    e.args.push_back(std::move(arg));
    return e;
}

// ---- parser --------------------------------------------------------------

namespace {

bool is_function(const std::string& s)
{
    return s == "sqrt" || series_fn_from_name(s).has_value();
}

class Parser {
public:
    Parser(const std::string& text, const SymbolTable& symbols, int line)
        : text_(text), symbols_(symbols), line_(line)
    {
    }

    Expr parse()
    {
        Expr e = parse_sum();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg, ErrorCode code = ErrorCode::SyntaxError) const
    {
        throw Error(code, "line " + std::to_string(line_) + ", column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    Expr parse_sum()
    {
        std::vector<Expr> terms;
        terms.push_back(parse_tensor());
        while (true) {
            if (accept('+')) {
                terms.push_back(parse_tensor());
            } else if (accept('-')) {
                terms.push_back(Expr::neg(parse_tensor()));
            } else {
                break;
            }
        }
        return Expr::add(std::move(terms));
    }

    Expr parse_tensor()
    {
        std::vector<Expr> slots;
        slots.push_back(parse_term());
        while (accept('@')) {
            slots.push_back(parse_term());
        }
        return Expr::tensor(std::move(slots));
    }

    Expr parse_term()
    {
        Expr cur = parse_unary();
        std::vector<Expr> product; // pending '*' chain
        bool in_product = false;
        while (true) {
            if (accept('*')) {
                if (!in_product) {
                    product.clear();
                    product.push_back(std::move(cur));
                    in_product = true;
                }
                product.push_back(parse_unary());
            } else if (accept('/')) {
                Expr left = in_product ? Expr::mul(std::move(product)) : std::move(cur);
                in_product = false;
                cur = Expr::div(std::move(left), parse_unary());
            } else {
                break;
            }
        }
        return in_product ? Expr::mul(std::move(product)) : cur;
    }

    Expr parse_unary()
    {
        if (accept('-')) {
            return Expr::neg(parse_unary());
        }
        if (accept('+')) {
            return parse_unary();
        }
        return parse_factor();
    }

    Expr parse_factor()
    {
        Expr base = parse_atom();
        if (accept('^')) {
            const bool negative = accept('-');
            skip_space();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            if (start == pos_) {
                fail("expected an integer exponent");
            }
            const int e = std::stoi(text_.substr(start, pos_ - start));
            return Expr::pow(std::move(base), negative ? -e : e);
        }
        return base;
    }

    Expr parse_atom()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of expression");
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            return Expr::num(Rat(text_.substr(start, pos_ - start)));
        }
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string id = text_.substr(start, pos_ - start);
            if (is_function(id)) {
                expect('(');
                Expr arg = parse_sum();
                expect(')');
                return Expr::call(std::move(id), std::move(arg));
            }
            if (id == "i") {
                return Expr::imag();
            }
            if (symbols_.params.count(id)) {
                return Expr::param(std::move(id));
            }
            if (symbols_.generators.count(id)) {
                return Expr::gen(std::move(id));
            }
            pos_ = start;
            fail("unknown symbol '" + id + "'", ErrorCode::UnknownSymbol);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& text_;
    const SymbolTable& symbols_;
    int line_;
    std::size_t pos_ = 0;
};

// ---- renderer ------------------------------------------------------------

int precedence(const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::Add: return 1;
    case Expr::Kind::Tensor: return 2;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 3;
    case Expr::Kind::Neg: return 4;
    case Expr::Kind::Pow: return 5;
    case Expr::Kind::Number: return e.number.get_den() == 1 ? 6 : 3;
    default: return 6;
    }
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string render_impl(const Expr& e);

std::string render_at_least(const Expr& e, int level)
{
    return precedence(e) < level ? paren(render_impl(e)) : render_impl(e);
}

std::string render_impl(const Expr& e)
{
    using K = Expr::Kind;
    switch (e.kind) {
    case K::Number: return render(e.number);
    case K::Imag: return "i";
    case K::Param:
    case K::Gen: return e.name;
    case K::Add: {
        std::string s = render_at_least(e.args[0], 2);
        for (std::size_t k = 1; k < e.args.size(); ++k) {
            const Expr& a = e.args[k];
            if (a.kind == K::Neg) {
                s += " - " + render_at_least(a.args[0], 2);
            } else {
                s += " + " + render_at_least(a, 2);
            }
        }
        return s;
    }
    case K::Tensor: {
        std::string s;
        for (std::size_t k = 0; k < e.args.size(); ++k) {
            s += (k ? " @ " : "") + render_at_least(e.args[k], 3);
        }
        return s;
    }
    case K::Mul: {
        std::string s;
        for (std::size_t k = 0; k < e.args.size(); ++k) {
            const Expr& a = e.args[k];
            // Anything that would re-associate or absorb a sign gets parens.
            const bool atomic_enough =
                k == 0 ? precedence(a) >= 3 && a.kind != K::Mul && a.kind != K::Neg
                       : precedence(a) >= 5;
            s += (k ? "*" : "") + (atomic_enough ? render_impl(a) : paren(render_impl(a)));
        }
        return s;
    }
    case K::Div: {
        const Expr& a = e.args[0];
        const Expr& b = e.args[1];
        const bool left_ok = precedence(a) >= 3 && a.kind != K::Neg;
        return (left_ok ? render_impl(a) : paren(render_impl(a))) + "/" + render_at_least(b, 5);
    }
    case K::Pow: {
        const Expr& b = e.args[0];
        return render_at_least(b, 6) + "^" + std::to_string(e.exponent);
    }
    case K::Neg: {
        const Expr& a = e.args[0];
        const bool bare = precedence(a) >= 3 && a.kind != K::Neg;
        return "-" + (bare ? render_impl(a) : paren(render_impl(a)));
    }
    case K::Call: return e.name + "(" + render_impl(e.args[0]) + ")";
    }
    return "?";
}

// ---- evaluation ----------------------------------------------------------

std::string kind_name(const Value& v)
{
    if (std::holds_alternative<Scalar>(v)) {
        return "scalar";
    }
    if (std::holds_alternative<NcPoly>(v)) {
        return "polynomial";
    }
    return std::to_string(std::get<TensorPoly>(v).slots()) + "-slot tensor";
}

NcPoly constant_poly(const Scalar& c, const EvalContext& ctx)
{
    NcPoly p = NcPoly::constant(c);
    p.set_truncation(ctx.truncation);
    return p;
}

TensorPoly lift_tensor(const Value& v, int slots, const EvalContext& ctx)
{
    if (const auto* s = std::get_if<Scalar>(&v)) {
        TensorPoly t = TensorPoly::unit(slots, *s);
        t.set_truncation(ctx.truncation);
        return t;
    }
    if (const auto* p = std::get_if<NcPoly>(&v)) {
        if (slots != 1) {
            throw Error(ErrorCode::SlotMismatch, "combining a polynomial with a " + std::to_string(slots) +
                                                     "-slot tensor");
        }
        return TensorPoly::from(*p);
    }
    const auto& t = std::get<TensorPoly>(v);
    if (t.slots() != slots) {
        throw Error(ErrorCode::SlotMismatch, "combining " + std::to_string(t.slots()) + "-slot and " +
                                                 std::to_string(slots) + "-slot tensors");
    }
    return t;
}

Value add_values(const Value& a, const Value& b, const EvalContext& ctx)
{
    if (std::holds_alternative<Scalar>(a) && std::holds_alternative<Scalar>(b)) {
        return std::get<Scalar>(a) + std::get<Scalar>(b);
    }
    if (const auto* t = std::get_if<TensorPoly>(&a)) {
        return *t + lift_tensor(b, t->slots(), ctx);
    }
    if (const auto* t = std::get_if<TensorPoly>(&b)) {
        return lift_tensor(a, t->slots(), ctx) + *t;
    }
    return as_ncpoly(a, "summand") + as_ncpoly(b, "summand");
}

Value mul_values(const Value& a, const Value& b, const EvalContext& ctx)
{
    if (const auto* s = std::get_if<Scalar>(&a)) {
        if (const auto* t = std::get_if<Scalar>(&b)) {
            return *s * *t;
        }
        if (const auto* p = std::get_if<NcPoly>(&b)) {
            return *p * *s;
        }
        return std::get<TensorPoly>(b) * *s;
    }
    if (std::holds_alternative<Scalar>(b)) {
        return mul_values(b, a, ctx);
    }
    if (std::holds_alternative<NcPoly>(a) && std::holds_alternative<NcPoly>(b)) {
        return multiply(std::get<NcPoly>(a), std::get<NcPoly>(b), ctx.rws);
    }
    const int slots = std::holds_alternative<TensorPoly>(a) ? std::get<TensorPoly>(a).slots()
                                                            : std::get<TensorPoly>(b).slots();
    return tensor_multiply(lift_tensor(a, slots, ctx), lift_tensor(b, slots, ctx), ctx.rws);
}

Value scale_value(const Value& v, const Scalar& s)
{
    if (const auto* c = std::get_if<Scalar>(&v)) {
        return *c * s;
    }
    if (const auto* p = std::get_if<NcPoly>(&v)) {
        return *p * s;
    }
    return std::get<TensorPoly>(v) * s;
}

Value series_value(SeriesFn f, const Value& v, const EvalContext& ctx)
{
    if (const auto* s = std::get_if<Scalar>(&v)) {
        if (!s->is_zero()) {
            throw Error(ErrorCode::InvalidArgument,
                        std::string(name(f)) + " of a nonzero scalar is not representable");
        }
        return f == SeriesFn::Log1p || f == SeriesFn::Sinh ? Scalar(0) : Scalar(1);
    }
    if (const auto* p = std::get_if<NcPoly>(&v)) {
        NcPoly x = *p;
        if (ctx.truncation) {
            x.set_truncation(ctx.truncation);
        }
        return series_apply(f, x, ctx.rws);
    }
    TensorPoly x = std::get<TensorPoly>(v);
    if (ctx.truncation) {
        x.set_truncation(ctx.truncation);
    }
    return series_apply(f, x, ctx.rws);
}

Value eval(const Expr& e, const EvalContext& ctx);

Scalar eval_divisor(const Expr& d, const EvalContext& ctx)
{
    const Value v = eval(d, ctx);
    const Scalar s = as_scalar(v, "divisor " + render(d));
    if (s.is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "divisor " + render(d) + " is zero");
    }
    if (ctx.denominators && !s.is_constant()) {
        ctx.denominators->push_back({render(d), s});
    }
    return s;
}

Value eval(const Expr& e, const EvalContext& ctx)
{
    using K = Expr::Kind;
    switch (e.kind) {
    case K::Number: return Scalar(GaussRat(e.number));
    case K::Imag: return Scalar::i();
    case K::Param: {
        auto it = ctx.params.find(e.name);
        if (it == ctx.params.end()) {
            throw Error(ErrorCode::UnknownSymbol, "parameter " + e.name + " has no value");
        }
        return it->second;
    }
    case K::Gen: {
        const int r = ctx.alphabet ? ctx.alphabet->rank_of(e.name) : -1;
        if (r < 0) {
            throw Error(ErrorCode::AlphabetMismatch, "generator " + e.name + " is not in the alphabet");
        }
        NcPoly p = NcPoly::generator(r);
        p.set_truncation(ctx.truncation);
        return p;
    }
    case K::Add: {
        Value acc = eval(e.args[0], ctx);
        for (std::size_t k = 1; k < e.args.size(); ++k) {
            acc = add_values(acc, eval(e.args[k], ctx), ctx);
        }
        return acc;
    }
    case K::Mul: {
        Value acc = eval(e.args[0], ctx);
        for (std::size_t k = 1; k < e.args.size(); ++k) {
            acc = mul_values(acc, eval(e.args[k], ctx), ctx);
        }
        return acc;
    }
    case K::Div: {
        const Value num = eval(e.args[0], ctx);
        return scale_value(num, eval_divisor(e.args[1], ctx).inverse());
    }
    case K::Pow: {
        const Value base = eval(e.args[0], ctx);
        if (const auto* s = std::get_if<Scalar>(&base)) {
            Scalar b = *s;
            if (e.exponent < 0) {
                b = eval_divisor(e.args[0], ctx).inverse();
            }
            Scalar out(1);
            for (int k = 0; k < std::abs(e.exponent); ++k) {
                out *= b;
            }
            return out;
        }
        if (e.exponent < 0) {
            throw Error(ErrorCode::InvalidArgument, "negative power of a non-scalar " + render(e.args[0]));
        }
        Value out = Scalar(1);
        for (int k = 0; k < e.exponent; ++k) {
            out = mul_values(out, base, ctx);
        }
        if (const auto* s = std::get_if<Scalar>(&out); s && std::holds_alternative<NcPoly>(base)) {
            return constant_poly(*s, ctx);
        }
        return out;
    }
    case K::Neg: return scale_value(eval(e.args[0], ctx), Scalar(-1));
    case K::Tensor: {
        TensorPoly acc = lift_tensor(eval(e.args[0], ctx), 1, ctx);
        for (std::size_t k = 1; k < e.args.size(); ++k) {
            acc = tensor(acc, lift_tensor(eval(e.args[k], ctx), 1, ctx));
        }
        acc.set_truncation(ctx.truncation);
        return acc;
    }
    case K::Call: {
        const Value arg = eval(e.args[0], ctx);
        if (e.name == "sqrt") {
            const Scalar s = as_scalar(arg, "sqrt argument");
            return sqrt_scalar(s, s.mode() != Scalar::Mode::Scaled);
        }
        return series_value(*series_fn_from_name(e.name), arg, ctx);
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown expression node");
}

} // namespace

Expr parse_expr(const std::string& text, const SymbolTable& symbols, int line)
{
    return Parser(text, symbols, line).parse();
}

std::string render(const Expr& e)
{
    return render_impl(e);
}

Value evaluate(const Expr& e, const EvalContext& ctx)
{
    return eval(e, ctx);
}

Scalar as_scalar(const Value& v, const std::string& what)
{
    if (const auto* s = std::get_if<Scalar>(&v)) {
        return *s;
    }
    if (const auto* p = std::get_if<NcPoly>(&v)) {
        if (p->is_zero() || (p->size() == 1 && p->terms().begin()->first.empty())) {
            return p->constant_term();
        }
    }
    if (const auto* t = std::get_if<TensorPoly>(&v)) {
        if (t->is_zero() || (t->size() == 1 && key_degree(t->terms().begin()->first) == 0)) {
            return t->constant_term();
        }
    }
    throw Error(ErrorCode::InvalidArgument, what + " must be a scalar, got a " + kind_name(v));
}

NcPoly as_ncpoly(const Value& v, const std::string& what)
{
    if (const auto* s = std::get_if<Scalar>(&v)) {
        return NcPoly::constant(*s);
    }
    if (const auto* p = std::get_if<NcPoly>(&v)) {
        return *p;
    }
    const auto& t = std::get<TensorPoly>(v);
    if (t.slots() == 1) {
        return t.to_ncpoly();
    }
    throw Error(ErrorCode::SlotMismatch, what + " must be a polynomial, got a " + kind_name(v));
}

TensorPoly as_tensor(const Value& v, int slots, const std::string& what)
{
    if (const auto* t = std::get_if<TensorPoly>(&v); t && t->slots() != slots) {
        throw Error(ErrorCode::SlotMismatch, what + " must have " + std::to_string(slots) + " slots, got a " +
                                                 kind_name(v));
    }
    if (std::holds_alternative<NcPoly>(v) && slots != 1) {
        throw Error(ErrorCode::SlotMismatch, what + " must have " + std::to_string(slots) + " slots, got a " +
                                                 kind_name(v));
    }
    return lift_tensor(v, slots, EvalContext{});
}

} // namespace qgal

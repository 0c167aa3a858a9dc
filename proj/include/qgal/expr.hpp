#pragma once

#include "qgal/series.hpp"

#include <set>
#include <string>
#include <variant>
#include <vector>

namespace qgal {

/// Expression tree for the case-file and command-line surface syntax.
struct Expr {
    enum class Kind {
        Number, // rational literal
        Imag,   // i
        Param,
        Gen,
        Add,    // n-ary
        Mul,    // n-ary
        Div,    // binary; the divisor must evaluate to a scalar
        Pow,    // base ^ exponent (negative only for scalars)
        Neg,
        Tensor, // n-ary, @
        Call,   // exp log1p inv1p cosh sinh sqrt
    };

    Kind kind = Kind::Number;
    Rat number;
    std::string name; // Param, Gen, Call
    int exponent = 0; // Pow
    std::vector<Expr> args;

    friend bool operator==(const Expr& a, const Expr& b);

    static Expr num(Rat r);
    static Expr imag();
    static Expr param(std::string n);
    static Expr gen(std::string n);
    static Expr add(std::vector<Expr> terms);
    static Expr mul(std::vector<Expr> factors);
    static Expr div(Expr a, Expr b);
    static Expr pow(Expr base, int e);
    static Expr neg(Expr a);
    static Expr tensor(std::vector<Expr> slots);
    static Expr call(std::string fn, Expr arg);
};

/// Names an expression may refer to.
struct SymbolTable {
    std::set<std::string> params;
    std::set<std::string> generators;
};

/// Parses one expression. Errors carry "line L, column C". `line` is the
/// source line of the first character (for diagnostics only).
Expr parse_expr(const std::string& text, const SymbolTable& symbols, int line = 1);

/// Canonical text; parse_expr(render(e)) == e.
std::string render(const Expr& e);

using Value = std::variant<Scalar, NcPoly, TensorPoly>;

struct EvalContext {
    const Alphabet* alphabet = nullptr;
    std::map<std::string, Scalar> params;
    /// Null: free algebra (no relations applied).
    const RewriteSystem* rws = nullptr;
    /// Generator-degree truncation applied to every polynomial value.
    std::optional<int> truncation;
    /// When set, every scalar divisor (and negative-power base) is appended.
    std::vector<Denominator>* denominators = nullptr;
};

Value evaluate(const Expr& e, const EvalContext& ctx);

/// Coercions used by callers that know the expected kind.
Scalar as_scalar(const Value& v, const std::string& what);
NcPoly as_ncpoly(const Value& v, const std::string& what);
TensorPoly as_tensor(const Value& v, int slots, const std::string& what);

} // namespace qgal

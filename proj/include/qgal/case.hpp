#pragma once

#include "qgal/expr.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qgal {

enum class Side { Group, Dual };

std::string_view to_string(Side s);
Side side_from_string(const std::string& s);

/// One case file, as written. Everything is kept as expressions; compiling
/// to polynomials happens per scalar mode.
struct CaseDef {
    struct Relation {
        std::string x, y; // [x, y] = rhs
        Expr rhs;
        friend bool operator==(const Relation&, const Relation&) = default;
    };

    int id = 0;
    Side side = Side::Group;
    std::vector<std::string> order; // generator names by rank
    std::vector<std::string> alt_order;
    std::string provenance;
    std::vector<std::string> params;
    std::vector<Relation> relations;
    std::map<std::string, Expr> coproduct;
    std::map<std::string, Expr> antipode;
    std::map<std::string, Expr> counit;
    std::map<std::string, Expr> star;
    /// Expressions that must not vanish under an instantiation.
    std::vector<Expr> avoid;
    /// Instantiations must make this a nonzero rational square.
    std::optional<Expr> square;

    friend bool operator==(const CaseDef&, const CaseDef&) = default;

    SymbolTable symbols() const;
    std::string label() const; // "group case 9"
};

CaseDef parse_case(const std::string& text);
std::string render_case(const CaseDef& c);

/// The shipped transcriptions (cases/group, cases/dual), parsed once.
const CaseDef& builtin(int id, Side side);

/// Generator images of a compiled case, indexed by rank.
struct Presentation {
    CaseDef def;
    Alphabet alphabet;
    std::shared_ptr<const RewriteSystem> rws;
    std::vector<TensorPoly> coproduct;
    std::vector<NcPoly> antipode;
    std::vector<Scalar> counit;
    std::vector<NcPoly> star; // empty when the case has no star

    Scalar::Mode mode = Scalar::Mode::Multivariate;
    ScalingPtr scaling; // Scaled only
    std::optional<int> degree; // generator-degree bound N of the checks

    bool has_star() const { return !star.empty(); }
    std::string render_instantiation() const;
};

/// Exact compile with symbolic parameters. Only cases whose images are
/// polynomial (the group side) compile this way.
Presentation compile_multivariate(const CaseDef& c, bool alternate_order = false);

/// Compile with l_i := c_i * t, exact in Q(i)[t]/(t^N). Formulas are first
/// expanded in the free algebra to generator degree N + 2 with symbolic
/// parameters, checked for the tail-order property, then scaled and
/// normal-ordered.
Presentation compile_scaled(const CaseDef& c, const std::map<std::string, Rat>& assignment, int N,
                            bool alternate_order = false);

/// Every divisor of the case formulas plus its [avoid] list, as symbolic
/// values.
std::vector<Denominator> case_denominators(const CaseDef& c);

/// Parameter limit l_i -> 0 along the ray l_i = c_i * t, as a case file
/// with no parameters. Poles that survive cancellation raise
/// NotDefinedAtZero.
CaseDef classical_limit(const CaseDef& c, const std::map<std::string, Rat>& ray);

/// Converts compiled images back into a case file (used by derive --emit and
/// classical_limit). Scaled coefficients appear as polynomials in `t`.
CaseDef to_case(const Presentation& p, int id, Side side, const std::string& provenance);

struct Instantiation {
    std::map<std::string, Rat> values;
    std::uint64_t seed = 0;
    int draws = 0; // attempts including rejected ones

    std::string render() const;
};

/// Reproducible admissible draws: c_i = p/q with 1 <= |p| <= 6, 1 <= q <= 3;
/// draws that zero a denominator or miss the [family] square are rejected.
std::vector<Instantiation> sample_instantiations(const CaseDef& c, std::uint64_t seed, int count);

/// Parses an expression over `alpha` and the presentation's parameters and
/// evaluates it, normal-ordered by `rws` when given. In Scaled mode
/// parameters become c_i * t and the result is truncated at generator
/// degree `truncation`.
NcPoly evaluate_poly(const std::string& text, const Alphabet& alpha, const Presentation& params_of,
                     const RewriteSystem* rws, std::optional<int> truncation = std::nullopt);

/// Sign sites of a case: every summand of a relation, coproduct or antipode
/// formula (a formula that is not a sum is one site). Sites are numbered in
/// file order.
std::size_t sign_sites(const CaseDef& c);

/// The case with the summand at `site` negated; `description` receives
/// e.g. "D(a), term 3".
CaseDef flip_sign(const CaseDef& c, std::size_t site, std::string* description = nullptr);

} // namespace qgal

#include "qgal/case.hpp"

#include "qgal/error.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <regex>
#include <set>
#include <sstream>

namespace qgal {

std::string_view to_string(Side s)
{
    return s == Side::Group ? "group" : "dual";
}

Side side_from_string(const std::string& s)
{
    if (s == "group") {
        return Side::Group;
    }
    if (s == "dual") {
        return Side::Dual;
    }
    throw Error(ErrorCode::InvalidArgument, "side must be group or dual, got '" + s + "'");
}

SymbolTable CaseDef::symbols() const
{
    SymbolTable s;
    s.params.insert(params.begin(), params.end());
    s.generators.insert(order.begin(), order.end());
    return s;
}

std::string CaseDef::label() const
{
    return std::string(to_string(side)) + " case " + std::to_string(id);
}

// ---- case-file text ------------------------------------------------------

namespace {

const std::set<std::string> kSections = {"meta",    "params", "relations", "coproduct", "antipode",
                                         "counit",  "star",   "avoid",     "family"};

struct Statement {
    std::string section;
    std::string text;
    int line = 0;
};

[[noreturn]] void syntax(int line, const std::string& msg)
{
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(trim(cur));
    }
    return out;
}

// Strips comments, joins continuation lines (leading whitespace) onto the
// previous statement and tags every statement with its section.
std::vector<Statement> statements(const std::string& text)
{
    std::vector<Statement> out;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) {
            raw.erase(h);
        }
        const std::string body = trim(raw);
        if (body.empty()) {
            continue;
        }
        const bool continuation = raw[0] == ' ' || raw[0] == '\t';
        if (continuation) {
            if (out.empty() || out.back().section != section) {
                syntax(line, "continuation line without a statement");
            }
            out.back().text += " " + body;
            continue;
        }
        std::string rest = body;
        if (body[0] == '[') {
            const auto close = body.find(']');
            const std::string name = close == std::string::npos ? "" : body.substr(1, close - 1);
            if (kSections.count(name)) {
                section = name;
                rest = trim(body.substr(close + 1));
                if (rest.empty()) {
                    continue;
                }
            }
        }
        if (section.empty()) {
            syntax(line, "statement before the first section header");
        }
        out.push_back({section, rest, line});
    }
    return out;
}

std::string split_assignment(const Statement& st, std::string& rhs)
{
    const auto eq = st.text.find('=');
    if (eq == std::string::npos) {
        syntax(st.line, "expected '=' in '" + st.text + "'");
    }
    rhs = trim(st.text.substr(eq + 1));
    return trim(st.text.substr(0, eq));
}

void parse_meta(CaseDef& c, const Statement& st)
{
    if (st.text.rfind("provenance", 0) == 0) {
        std::string rhs;
        split_assignment(st, rhs);
        c.provenance = rhs;
        return;
    }
    std::istringstream in(st.text);
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
            syntax(st.line, "expected key=value, got '" + tok + "'");
        }
        const std::string key = tok.substr(0, eq);
        const std::string value = tok.substr(eq + 1);
        if (key == "id") {
            try {
                c.id = std::stoi(value);
            } catch (const std::exception&) {
                syntax(st.line, "id must be an integer");
            }
        } else if (key == "side") {
            try {
                c.side = side_from_string(value);
            } catch (const Error&) {
                syntax(st.line, "side must be group or dual");
            }
        } else if (key == "order") {
            c.order = split(value, ',');
        } else if (key == "alt_order") {
            c.alt_order = split(value, ',');
        } else {
            syntax(st.line, "unknown meta key '" + key + "'");
        }
    }
}

void check_symbols(const CaseDef& c)
{
    std::set<std::string> seen;
    auto claim = [&](const std::string& n, const char* what) {
        static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
        if (!std::regex_match(n, ident) || n == "i" || n == "sqrt" || series_fn_from_name(n)) {
            throw Error(ErrorCode::SyntaxError, std::string("invalid ") + what + " name '" + n + "'");
        }
        if (!seen.insert(n).second) {
            throw Error(ErrorCode::SyntaxError, "name '" + n + "' declared twice");
        }
    };
    for (const auto& g : c.order) {
        claim(g, "generator");
    }
    for (const auto& p : c.params) {
        claim(p, "parameter");
    }
    if (!c.alt_order.empty()) {
        std::vector<std::string> a = c.alt_order, b = c.order;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) {
            throw Error(ErrorCode::SyntaxError, "alt_order must permute the generators");
        }
    }
}

Expr parse_at(const std::string& expr, const Statement& st, const SymbolTable& sym)
{
    return parse_expr(expr, sym, st.line);
}

std::string generator_arg(const Statement& st, const std::string& lhs, char fn, const CaseDef& c)
{
    const std::string prefix = std::string(1, fn) + "(";
    if (lhs.size() < 4 || lhs.rfind(prefix, 0) != 0 || lhs.back() != ')') {
        syntax(st.line, "expected " + prefix + "x) on the left, got '" + lhs + "'");
    }
    const std::string g = trim(lhs.substr(2, lhs.size() - 3));
    if (std::find(c.order.begin(), c.order.end(), g) == c.order.end()) {
        throw Error(ErrorCode::UnknownSymbol, "line " + std::to_string(st.line) + ": unknown generator '" + g + "'");
    }
    return g;
}

void put_image(std::map<std::string, Expr>& target, const std::string& g, Expr e, const Statement& st)
{
    if (!target.emplace(g, std::move(e)).second) {
        syntax(st.line, "image of " + g + " given twice");
    }
}

} // namespace

CaseDef parse_case(const std::string& text)
{
    CaseDef c;
    const auto sts = statements(text);
    for (const auto& st : sts) {
        if (st.section == "meta") {
            parse_meta(c, st);
        } else if (st.section == "params") {
            std::istringstream in(st.text);
            std::string p;
            while (in >> p) {
                c.params.push_back(p);
            }
        }
    }
    if (c.order.empty()) {
        throw Error(ErrorCode::SyntaxError, "missing order= in [meta]");
    }
    if (c.id <= 0) {
        throw Error(ErrorCode::SyntaxError, "missing or invalid id= in [meta]");
    }
    check_symbols(c);
    const SymbolTable sym = c.symbols();

    static const std::regex relation(R"(^\[\s*([A-Za-z_]\w*)\s*,\s*([A-Za-z_]\w*)\s*\]$)");
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& st : sts) {
        if (st.section == "meta" || st.section == "params") {
            continue;
        }
        if (st.section == "avoid") {
            c.avoid.push_back(parse_at(st.text, st, sym));
            continue;
        }
        std::string rhs;
        const std::string lhs = split_assignment(st, rhs);
        if (st.section == "relations") {
            std::smatch m;
            if (!std::regex_match(lhs, m, relation)) {
                syntax(st.line, "expected [x,y] on the left, got '" + lhs + "'");
            }
            const std::string x = m[1], y = m[2];
            for (const auto& g : {x, y}) {
                if (!sym.generators.count(g)) {
                    throw Error(ErrorCode::UnknownSymbol,
                                "line " + std::to_string(st.line) + ": unknown generator '" + g + "'");
                }
            }
            if (x == y) {
                syntax(st.line, "[" + x + "," + x + "] is not a relation");
            }
            if (!pairs.insert(std::minmax(x, y)).second) {
                syntax(st.line, "relation for {" + x + "," + y + "} given twice");
            }
            c.relations.push_back({x, y, parse_at(rhs, st, sym)});
        } else if (st.section == "coproduct") {
            put_image(c.coproduct, generator_arg(st, lhs, 'D', c), parse_at(rhs, st, sym), st);
        } else if (st.section == "antipode") {
            put_image(c.antipode, generator_arg(st, lhs, 'S', c), parse_at(rhs, st, sym), st);
        } else if (st.section == "counit") {
            put_image(c.counit, generator_arg(st, lhs, 'e', c), parse_at(rhs, st, sym), st);
        } else if (st.section == "star") {
            if (lhs.empty() || lhs.back() != '*') {
                syntax(st.line, "expected x* on the left, got '" + lhs + "'");
            }
            const std::string g = trim(lhs.substr(0, lhs.size() - 1));
            if (!sym.generators.count(g)) {
                throw Error(ErrorCode::UnknownSymbol,
                            "line " + std::to_string(st.line) + ": unknown generator '" + g + "'");
            }
            put_image(c.star, g, parse_at(rhs, st, sym), st);
        } else if (st.section == "family") {
            if (lhs != "square") {
                syntax(st.line, "the only [family] constraint is square = <expr>");
            }
            c.square = parse_at(rhs, st, sym);
        }
    }
    return c;
}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        s += (k ? sep : "") + v[k];
    }
    return s;
}

void render_images(std::ostringstream& out, const CaseDef& c, const std::map<std::string, Expr>& images,
                   const std::string& section, const std::string& pre, const std::string& post)
{
    if (images.empty()) {
        return;
    }
    out << "\n[" << section << "]\n";
    for (const auto& g : c.order) {
        if (auto it = images.find(g); it != images.end()) {
            out << pre << g << post << " = " << render(it->second) << "\n";
        }
    }
}

} // namespace

std::string render_case(const CaseDef& c)
{
    std::ostringstream out;
    out << "[meta]\nid=" << c.id << " side=" << to_string(c.side) << " order=" << join(c.order, ",");
    if (!c.alt_order.empty()) {
        out << " alt_order=" << join(c.alt_order, ",");
    }
    out << "\n";
    if (!c.provenance.empty()) {
        out << "provenance=" << c.provenance << "\n";
    }
    if (!c.params.empty()) {
        out << "\n[params]\n" << join(c.params, " ") << "\n";
    }
    if (!c.relations.empty()) {
        out << "\n[relations]\n";
        for (const auto& r : c.relations) {
            out << "[" << r.x << "," << r.y << "] = " << render(r.rhs) << "\n";
        }
    }
    render_images(out, c, c.coproduct, "coproduct", "D(", ")");
    render_images(out, c, c.antipode, "antipode", "S(", ")");
    render_images(out, c, c.counit, "counit", "e(", ")");
    render_images(out, c, c.star, "star", "", "*");
    if (!c.avoid.empty()) {
        out << "\n[avoid]\n";
        for (const auto& e : c.avoid) {
            out << render(e) << "\n";
        }
    }
    if (c.square) {
        out << "\n[family]\nsquare = " << render(*c.square) << "\n";
    }
    return out.str();
}

// ---- built-ins -----------------------------------------------------------

namespace {

struct BuiltinEntry {
    const char* side;
    int id;
    const char* text;
};

const BuiltinEntry kBuiltins[] = {
#include "builtin_cases.inc"
};

} // namespace

const CaseDef& builtin(int id, Side side)
{
    static std::once_flag once;
    static std::map<std::pair<int, Side>, CaseDef> table;
    std::call_once(once, [] {
        for (const auto& e : kBuiltins) {
            const Side s = side_from_string(e.side);
            CaseDef c;
            try {
                c = parse_case(e.text);
            } catch (const Error& err) {
                throw Error(err.code(), std::string("built-in ") + e.side + " case " + std::to_string(e.id) +
                                            ": " + err.what());
            }
            if (c.id != e.id || c.side != s) {
                throw Error(ErrorCode::InvalidArgument, std::string("built-in file ") + e.side + "/case" +
                                                            std::to_string(e.id) + " declares another case");
            }
            table.emplace(std::pair{e.id, s}, std::move(c));
        }
    });
    auto it = table.find({id, side});
    if (it == table.end()) {
        throw Error(ErrorCode::UnknownCase, "no built-in " + std::string(to_string(side)) + " case " +
                                                std::to_string(id));
    }
    return it->second;
}

// ---- compilation ---------------------------------------------------------

namespace {

Alphabet alphabet_for(const CaseDef& c, bool alternate)
{
    if (!alternate) {
        return Alphabet(c.order);
    }
    if (c.alt_order.empty()) {
        throw Error(ErrorCode::InvalidArgument, c.label() + " declares no alternate order");
    }
    return Alphabet(c.alt_order);
}

EvalContext symbolic_context(const CaseDef& c, const Alphabet& alpha)
{
    EvalContext ctx;
    ctx.alphabet = &alpha;
    for (const auto& p : c.params) {
        ctx.params.emplace(p, Scalar::param(p));
    }
    return ctx;
}

// Expressions of a case evaluated one way, all images by rank.
struct Images {
    std::vector<RewriteSystem::Rule> rules;
    std::vector<TensorPoly> coproduct;
    std::vector<NcPoly> antipode;
    std::vector<Scalar> counit;
    std::vector<NcPoly> star;
};

std::string what_image(const std::string& map, const std::string& g)
{
    return map + "(" + g + ")";
}

std::vector<RewriteSystem::Rule> evaluate_rules(const CaseDef& c, const Alphabet& alpha, const EvalContext& ctx)
{
    std::vector<RewriteSystem::Rule> rules;
    for (const auto& r : c.relations) {
        const int x = alpha.rank_of(r.x);
        const int y = alpha.rank_of(r.y);
        NcPoly f = as_ncpoly(evaluate(r.rhs, ctx), "[" + r.x + "," + r.y + "]");
        if (x > y) {
            rules.push_back({x, y, std::move(f)});
        } else {
            rules.push_back({y, x, -f});
        }
    }
    return rules;
}

Images evaluate_images(const CaseDef& c, const Alphabet& alpha, const EvalContext& ctx)
{
    Images im;
    const int n = alpha.size();
    for (int r = 0; r < n; ++r) {
        const std::string& g = alpha.name(r);
        auto need = [&](const std::map<std::string, Expr>& m, const char* map) -> const Expr& {
            auto it = m.find(g);
            if (it == m.end()) {
                throw Error(ErrorCode::InvalidArgument, c.label() + " lacks " + what_image(map, g));
            }
            return it->second;
        };
        im.coproduct.push_back(as_tensor(evaluate(need(c.coproduct, "D"), ctx), 2, what_image("D", g)));
        im.antipode.push_back(as_ncpoly(evaluate(need(c.antipode, "S"), ctx), what_image("S", g)));
        if (auto it = c.counit.find(g); it != c.counit.end()) {
            im.counit.push_back(as_scalar(evaluate(it->second, ctx), what_image("e", g)));
        } else {
            im.counit.push_back(Scalar(0));
        }
        if (!c.star.empty()) {
            im.star.push_back(as_ncpoly(evaluate(need(c.star, "star"), ctx), g + "*"));
        }
    }
    return im;
}

void finish(Presentation& p, Images&& im)
{
    const auto& rws = *p.rws;
    for (auto& d : im.coproduct) {
        p.coproduct.push_back(rws.normal_order(d));
    }
    for (auto& s : im.antipode) {
        p.antipode.push_back(rws.normal_order(s));
    }
    p.counit = std::move(im.counit);
    for (auto& s : im.star) {
        p.star.push_back(rws.normal_order(s));
    }
}

std::string render_key(const Word& w, const Alphabet& a) { return render_word(w, a); }

std::string render_key(const TensorKey& k, const Alphabet& a)
{
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i) {
        s += (i ? "@" : "") + render_word(k[i], a);
    }
    return s;
}

// Scales every coefficient; on the dual side every degree-L term must have
// parameter valuation >= L - 1 (terms beyond reach of the order must vanish).
template <class P>
P scale_poly(const P& p, const ScalingPtr& ctx, bool tail_check, const Alphabet& alpha, const std::string& what)
{
    P out = p.degree_at_most(-1);
    out.set_truncation(std::nullopt);
    for (const auto& [k, c] : p.terms()) {
        Scalar s;
        try {
            s = to_scaled(c, ctx);
        } catch (const Error& e) {
            throw Error(e.code(), what + ", term " + render_key(k, alpha) + ": " + e.what());
        }
        if (tail_check && !s.is_zero() && s.valuation() < key_degree(k) - 1) {
            throw Error(ErrorCode::TailOrderViolation,
                        what + ": term " + render_key(k, alpha) + " of degree " + std::to_string(key_degree(k)) +
                            " has coefficient " + s.render() + " of order " + std::to_string(s.valuation()));
        }
        out.add(k, s);
    }
    return out;
}

} // namespace

Presentation compile_multivariate(const CaseDef& c, bool alternate_order)
{
    Presentation p;
    p.def = c;
    p.alphabet = alphabet_for(c, alternate_order);
    EvalContext ctx = symbolic_context(c, p.alphabet);
    p.rws = std::make_shared<const RewriteSystem>(p.alphabet, evaluate_rules(c, p.alphabet, ctx));
    ctx.rws = p.rws.get();
    finish(p, evaluate_images(c, p.alphabet, ctx));
    p.mode = Scalar::Mode::Multivariate;
    return p;
}

std::vector<Denominator> case_denominators(const CaseDef& c)
{
    const Alphabet alpha(c.order);
    std::vector<Denominator> dens;
    EvalContext ctx = symbolic_context(c, alpha);
    ctx.denominators = &dens;
    ctx.truncation = 1;
    evaluate_rules(c, alpha, ctx);
    evaluate_images(c, alpha, ctx);
    for (const auto& e : c.avoid) {
        dens.push_back({render(e), as_scalar(evaluate(e, ctx), "avoid entry " + render(e))});
    }
    // Same divisor text may appear many times.
    std::vector<Denominator> unique;
    std::set<std::string> seen;
    for (auto& d : dens) {
        if (seen.insert(d.text).second) {
            unique.push_back(std::move(d));
        }
    }
    return unique;
}

Presentation compile_scaled(const CaseDef& c, const std::map<std::string, Rat>& assignment, int N,
                            bool alternate_order)
{
    if (N < 1) {
        throw Error(ErrorCode::InvalidArgument, "degree must be at least 1");
    }
    for (const auto& name : c.params) {
        if (!assignment.count(name)) {
            throw Error(ErrorCode::InvalidArgument, "instantiation lacks a value for " + name);
        }
    }
    Presentation p;
    p.def = c;
    p.alphabet = alphabet_for(c, alternate_order);
    p.mode = Scalar::Mode::Scaled;
    p.degree = N;

    const bool dual = c.side == Side::Dual;
    std::vector<Denominator> dens;
    EvalContext ctx = symbolic_context(c, p.alphabet);
    ctx.denominators = &dens;
    if (dual) {
        ctx.truncation = N + 2;
    }
    auto rules = evaluate_rules(c, p.alphabet, ctx);
    Images im = evaluate_images(c, p.alphabet, ctx);
    for (const auto& e : c.avoid) {
        dens.push_back({render(e), as_scalar(evaluate(e, ctx), "avoid entry " + render(e))});
    }

    std::map<std::string, Rat> used;
    for (const auto& name : c.params) {
        used[name] = assignment.at(name);
    }
    p.scaling = scale_instantiate(used, N - 1, dens);
    const auto& sc = p.scaling;
    const Alphabet& a = p.alphabet;

    for (auto& r : rules) {
        const std::string what = c.label() + " [" + a.name(r.x) + "," + a.name(r.y) + "]";
        r.correction = scale_poly(r.correction, sc, dual, a, what);
    }
    p.rws = std::make_shared<const RewriteSystem>(a, std::move(rules));
    for (int r = 0; r < a.size(); ++r) {
        const auto& g = a.name(r);
        auto& d = im.coproduct[static_cast<std::size_t>(r)];
        d = scale_poly(d, sc, dual, a, c.label() + " " + what_image("D", g));
        auto& s = im.antipode[static_cast<std::size_t>(r)];
        s = scale_poly(s, sc, dual, a, c.label() + " " + what_image("S", g));
        auto& e = im.counit[static_cast<std::size_t>(r)];
        e = to_scaled(e, sc);
        if (!im.star.empty()) {
            auto& st = im.star[static_cast<std::size_t>(r)];
            st = scale_poly(st, sc, dual, a, c.label() + " " + g + "*");
        }
    }
    finish(p, std::move(im));
    return p;
}

std::string Presentation::render_instantiation() const
{
    return scaling ? scaling->render() : "symbolic";
}

CaseDef to_case(const Presentation& p, int id, Side side, const std::string& provenance)
{
    CaseDef c;
    c.id = id;
    c.side = side;
    c.order = p.alphabet.names();
    c.provenance = provenance;
    if (p.mode == Scalar::Mode::Scaled) {
        if (p.scaling->order > 0) {
            c.params = {"t"};
        }
    } else {
        c.params = p.def.params;
    }
    const SymbolTable sym = c.symbols();
    const Alphabet& a = p.alphabet;
    for (const auto& r : p.rws->rules()) {
        if (!r.correction.is_zero()) {
            c.relations.push_back({a.name(r.x), a.name(r.y), parse_expr(render(r.correction, a), sym)});
        }
    }
    for (int r = 0; r < a.size(); ++r) {
        const auto k = static_cast<std::size_t>(r);
        const auto& g = a.name(r);
        c.coproduct.emplace(g, parse_expr(render(p.coproduct[k], a), sym));
        c.antipode.emplace(g, parse_expr(render(p.antipode[k], a), sym));
        c.counit.emplace(g, parse_expr(p.counit[k].render(), sym));
        if (p.has_star()) {
            c.star.emplace(g, parse_expr(render(p.star[k], a), sym));
        }
    }
    return c;
}

CaseDef classical_limit(const CaseDef& c, const std::map<std::string, Rat>& ray)
{
    const Presentation p = compile_scaled(c, ray, 1);
    return to_case(p, c.id, c.side, "parameter limit of " + c.label());
}

// ---- sampling ------------------------------------------------------------

std::string Instantiation::render() const
{
    std::string s;
    for (const auto& [k, v] : values) {
        s += (s.empty() ? "" : ", ") + k + "=" + qgal::render(v);
    }
    return "{" + s + "} seed=" + std::to_string(seed) + " draws=" + std::to_string(draws);
}

std::vector<Instantiation> sample_instantiations(const CaseDef& c, std::uint64_t seed, int count)
{
    const auto dens = case_denominators(c);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(1, 6), den(1, 3), sign(0, 1);
    const Alphabet alpha(c.order);

    std::vector<Instantiation> out;
    int draws = 0;
    constexpr int kMaxDraws = 100000;
    while (static_cast<int>(out.size()) < count) {
        if (++draws > kMaxDraws) {
            throw Error(ErrorCode::DegenerateInstantiation,
                        "no admissible instantiation found for " + c.label());
        }
        std::map<std::string, Rat> values;
        for (const auto& p : c.params) {
            const int n = num(rng) * (sign(rng) ? -1 : 1);
            Rat r(n, den(rng));
            r.canonicalize();
            values[p] = r;
        }
        if (c.square) {
            EvalContext ctx;
            ctx.alphabet = &alpha;
            for (const auto& [k, v] : values) {
                ctx.params.emplace(k, Scalar(GaussRat(v)));
            }
            const Scalar d = as_scalar(evaluate(*c.square, ctx), "[family] square");
            const GaussRat* g = d.constant();
            if (!g || !g->is_real() || sgn(g->re()) <= 0 || !rat_sqrt(g->re())) {
                continue;
            }
        }
        const bool degenerate = std::any_of(dens.begin(), dens.end(), [&](const Denominator& d) {
            try {
                return vanishes_under(d.value, values);
            } catch (const Error&) {
                return true;
            }
        });
        const bool repeated = std::any_of(out.begin(), out.end(), [&](const Instantiation& i) {
            return i.values == values;
        });
        if (degenerate || repeated) {
            continue;
        }
        out.push_back({std::move(values), seed, draws});
    }
    return out;
}

NcPoly evaluate_poly(const std::string& text, const Alphabet& alpha, const Presentation& params_of,
                     const RewriteSystem* rws, std::optional<int> truncation)
{
    SymbolTable sym;
    for (const auto& n : alpha.names()) {
        sym.generators.insert(n);
    }
    EvalContext ctx;
    ctx.alphabet = &alpha;
    ctx.rws = rws;
    ctx.truncation = truncation;
    for (const auto& name : params_of.def.params) {
        sym.params.insert(name);
        const Scalar sym_value = Scalar::param(name);
        ctx.params.emplace(name, params_of.scaling ? to_scaled(sym_value, params_of.scaling) : sym_value);
    }
    NcPoly out = as_ncpoly(evaluate(parse_expr(text, sym), ctx), "expression");
    return rws ? rws->normal_order(out) : out;
}

// ---- mutations -----------------------------------------------------------

namespace {

// Visits the sign sites of every formula in file order; `f` returns true to
// stop.
template <class F>
void for_each_site(CaseDef& c, F&& f)
{
    auto visit = [&](Expr& e, const std::string& where) {
        if (e.kind != Expr::Kind::Add) {
            return f(e, where + ", term 1");
        }
        for (std::size_t k = 0; k < e.args.size(); ++k) {
            if (f(e.args[k], where + ", term " + std::to_string(k + 1))) {
                return true;
            }
        }
        return false;
    };
    for (auto& r : c.relations) {
        if (visit(r.rhs, "[" + r.x + "," + r.y + "]")) {
            return;
        }
    }
    for (const char* map : {"D", "S"}) {
        auto& images = map[0] == 'D' ? c.coproduct : c.antipode;
        for (const auto& g : c.order) {
            if (auto it = images.find(g); it != images.end() && visit(it->second, what_image(map, g))) {
                return;
            }
        }
    }
}

} // namespace

std::size_t sign_sites(const CaseDef& c)
{
    CaseDef copy = c;
    std::size_t n = 0;
    for_each_site(copy, [&](Expr&, const std::string&) {
        ++n;
        return false;
    });
    return n;
}

CaseDef flip_sign(const CaseDef& c, std::size_t site, std::string* description)
{
    CaseDef out = c;
    std::size_t k = 0;
    bool done = false;
    for_each_site(out, [&](Expr& e, const std::string& where) {
        if (k++ != site) {
            return false;
        }
        e = e.kind == Expr::Kind::Neg ? e.args[0] : Expr::neg(e);
        if (description) {
            *description = where;
        }
        done = true;
        return true;
    });
    if (!done) {
        throw Error(ErrorCode::InvalidArgument,
                    c.label() + " has " + std::to_string(k) + " sign sites, no site " + std::to_string(site));
    }
    return out;
}

} // namespace qgal

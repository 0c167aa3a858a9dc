#include "qgal/mpoly.hpp"

#include "qgal/error.hpp"

#include <algorithm>
#include <numeric>

namespace qgal {

namespace {

int degree_of(const Exponents& e)
{
    return std::accumulate(e.begin(), e.end(), 0);
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b)
{
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool divides(const Exponents& a, const Exponents& b)
{
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) {
            return false;
        }
    }
    return true;
}

} // namespace

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const
{
    const int da = degree_of(a);
    const int db = degree_of(b);
    if (da != db) {
        return da < db;
    }
    return a < b;
}

MPoly::MPoly(GaussRat c)
{
    if (!c.is_zero()) {
        terms_.emplace(Exponents{}, std::move(c));
    }
}

MPoly MPoly::variable(const std::string& name)
{
    MPoly p;
    p.vars_ = {name};
    p.terms_.emplace(Exponents{1}, GaussRat(1));
    return p;
}

MPoly MPoly::from_terms(std::vector<std::string> vars, TermMap terms)
{
    MPoly p;
    p.vars_ = std::move(vars);
    for (auto& [e, c] : terms) {
        if (!c.is_zero()) {
            p.terms_.emplace(e, c);
        }
    }
    return p;
}

bool MPoly::is_constant() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

GaussRat MPoly::constant_term() const
{
    if (terms_.empty()) {
        return {};
    }
    const auto& [e, c] = *terms_.begin();
    return degree_of(e) == 0 ? c : GaussRat{};
}

int MPoly::total_degree() const
{
    return terms_.empty() ? -1 : degree_of(terms_.rbegin()->first);
}

int MPoly::min_total_degree() const
{
    return terms_.empty() ? -1 : degree_of(terms_.begin()->first);
}

int MPoly::degree_in(std::size_t var) const
{
    int d = 0;
    for (const auto& [e, c] : terms_) {
        d = std::max(d, e[var]);
    }
    return d;
}

const Exponents& MPoly::leading_exponents() const
{
    if (terms_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "leading term of zero polynomial");
    }
    return terms_.rbegin()->first;
}

const GaussRat& MPoly::leading_coeff() const
{
    if (terms_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "leading term of zero polynomial");
    }
    return terms_.rbegin()->second;
}

MPoly MPoly::monic() const
{
    if (terms_.empty()) {
        return *this;
    }
    return *this * leading_coeff().inverse();
}

MPoly MPoly::conj() const
{
    MPoly out;
    out.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        out.terms_.emplace(e, c.conj());
    }
    return out;
}

MPoly MPoly::with_vars(const std::vector<std::string>& superset) const
{
    if (superset == vars_) {
        return *this;
    }
    std::vector<std::size_t> where(vars_.size());
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = std::lower_bound(superset.begin(), superset.end(), vars_[k]);
        if (it == superset.end() || *it != vars_[k]) {
            throw Error(ErrorCode::InvalidArgument, "variable list is not a superset");
        }
        where[k] = static_cast<std::size_t>(it - superset.begin());
    }
    MPoly out;
    out.vars_ = superset;
    for (const auto& [e, c] : terms_) {
        Exponents f(superset.size(), 0);
        for (std::size_t k = 0; k < e.size(); ++k) {
            f[where[k]] = e[k];
        }
        out.terms_.emplace(std::move(f), c);
    }
    return out;
}

void MPoly::unify_with(MPoly& other)
{
    if (vars_ == other.vars_) {
        return;
    }
    auto merged = merge_vars(vars_, other.vars_);
    *this = with_vars(merged);
    other = other.with_vars(merged);
}

void MPoly::add_term(const Exponents& e, const GaussRat& c)
{
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

MPoly& MPoly::operator+=(const MPoly& o)
{
    if (o.terms_.empty()) {
        return *this;
    }
    if (vars_ != o.vars_) {
        MPoly rhs = o;
        unify_with(rhs);
        return *this += rhs;
    }
    for (const auto& [e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o)
{
    return *this += -o;
}

MPoly& MPoly::operator*=(const GaussRat& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) {
        v *= c;
    }
    return *this;
}

MPoly& MPoly::operator*=(const MPoly& o)
{
    if (terms_.empty() || o.terms_.empty()) {
        terms_.clear();
        return *this;
    }
    if (vars_ != o.vars_) {
        MPoly rhs = o;
        unify_with(rhs);
        return *this *= rhs;
    }
    TermMap out;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(ea.size());
            for (std::size_t k = 0; k < e.size(); ++k) {
                e[k] = ea[k] + eb[k];
            }
            auto [it, inserted] = out.try_emplace(std::move(e), ca * cb);
            if (!inserted) {
                it->second += ca * cb;
            }
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    terms_ = std::move(out);
    return *this;
}

bool operator==(const MPoly& a, const MPoly& b)
{
    if (a.vars_ == b.vars_) {
        return a.terms_ == b.terms_;
    }
    MPoly x = a;
    MPoly y = b;
    x.unify_with(y);
    return x.terms_ == y.terms_;
}

MPoly MPoly::pow(int e) const
{
    if (e < 0) {
        throw Error(ErrorCode::InvalidArgument, "negative power of a polynomial");
    }
    MPoly out(1);
    MPoly base = *this;
    while (e > 0) {
        if (e & 1) {
            out *= base;
        }
        e >>= 1;
        if (e > 0) {
            base *= base;
        }
    }
    return out;
}

std::vector<GaussRat> MPoly::scale_substitute(const std::map<std::string, Rat>& c) const
{
    std::vector<Rat> factor(vars_.size());
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = c.find(vars_[k]);
        if (it == c.end()) {
            throw Error(ErrorCode::UnknownSymbol, "no instantiation for parameter '" + vars_[k] + "'");
        }
        factor[k] = it->second;
    }
    std::vector<GaussRat> out(static_cast<std::size_t>(std::max(total_degree(), 0)) + 1);
    for (const auto& [e, coef] : terms_) {
        Rat w = 1;
        for (std::size_t k = 0; k < e.size(); ++k) {
            for (int j = 0; j < e[k]; ++j) {
                w *= factor[k];
            }
        }
        out[static_cast<std::size_t>(degree_of(e))] += coef * GaussRat(w);
    }
    return out;
}

std::string MPoly::render() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += vars_[k];
            if (e[k] > 1) {
                mono += "^" + std::to_string(e[k]);
            }
        }
        std::string term;
        if (mono.empty()) {
            term = qgal::render(c);
        } else if (c.is_one()) {
            term = mono;
        } else if (c == GaussRat(-1)) {
            term = "-" + mono;
        } else {
            term = qgal::render(c, true) + "*" + mono;
        }
        if (!s.empty() && term[0] != '-') {
            s += "+";
        }
        s += term;
    }
    return s;
}

MPoly MPoly::coefficient_of(std::size_t var, int power) const
{
    MPoly out;
    out.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        if (e[var] == power) {
            Exponents f = e;
            f[var] = 0;
            out.terms_.emplace(std::move(f), c);
        }
    }
    return out;
}

std::optional<MPoly> exact_divide(const MPoly& a, const MPoly& b)
{
    if (b.is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    }
    auto vars = merge_vars(a.vars(), b.vars());
    MPoly rem = a.with_vars(vars);
    const MPoly div = b.with_vars(vars);
    if (div.is_constant()) {
        return rem * div.constant_term().inverse();
    }
    const Exponents& lead = div.leading_exponents();
    const GaussRat lead_inv = div.leading_coeff().inverse();
    MPoly::TermMap quotient;
    while (!rem.is_zero()) {
        const Exponents& r = rem.leading_exponents();
        if (!divides(lead, r)) {
            return std::nullopt;
        }
        Exponents q(r.size());
        for (std::size_t k = 0; k < q.size(); ++k) {
            q[k] = r[k] - lead[k];
        }
        GaussRat qc = rem.leading_coeff() * lead_inv;
        MPoly::TermMap single;
        single.emplace(q, qc);
        rem -= div * MPoly::from_terms(vars, single);
        quotient.emplace(std::move(q), std::move(qc));
    }
    return MPoly::from_terms(vars, std::move(quotient));
}

namespace {

MPoly gcd_same_vars(const MPoly& a, const MPoly& b);

MPoly content_in(const MPoly& p, std::size_t var)
{
    MPoly g;
    for (int k = p.degree_in(var); k >= 0; --k) {
        MPoly c = p.coefficient_of(var, k);
        if (c.is_zero()) {
            continue;
        }
        g = g.is_zero() ? c.monic() : gcd_same_vars(g, c);
        if (g.is_constant()) {
            break;
        }
    }
    return g;
}

MPoly primitive_in(const MPoly& p, std::size_t var)
{
    if (p.is_zero()) {
        return p;
    }
    return *exact_divide(p, content_in(p, var));
}

MPoly var_power(const std::vector<std::string>& vars, std::size_t var, int power)
{
    Exponents e(vars.size(), 0);
    e[var] = power;
    MPoly::TermMap t;
    t.emplace(std::move(e), GaussRat(1));
    return MPoly::from_terms(vars, std::move(t));
}

MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var)
{
    const int db = b.degree_in(var);
    const MPoly lcb = b.coefficient_of(var, db);
    MPoly r = a;
    int e = a.degree_in(var) - db + 1;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        const int dr = r.degree_in(var);
        MPoly lcr = r.coefficient_of(var, dr);
        r = lcb * r - lcr * var_power(a.vars(), var, dr - db) * b;
        --e;
    }
    return e > 0 ? lcb.pow(e) * r : r;
}

MPoly gcd_same_vars(const MPoly& a, const MPoly& b)
{
    if (a.is_zero()) {
        return b.monic();
    }
    if (b.is_zero()) {
        return a.monic();
    }
    if (a.is_constant() || b.is_constant()) {
        return MPoly(1);
    }
    std::size_t var = 0;
    const auto n = a.vars().size();
    while (var < n && a.degree_in(var) == 0 && b.degree_in(var) == 0) {
        ++var;
    }
    if (a.degree_in(var) == 0) {
        return gcd_same_vars(a, content_in(b, var));
    }
    if (b.degree_in(var) == 0) {
        return gcd_same_vars(content_in(a, var), b);
    }
    const MPoly ca = content_in(a, var);
    const MPoly cb = content_in(b, var);
    const MPoly c = gcd_same_vars(ca, cb);
    MPoly p = *exact_divide(a, ca);
    MPoly q = *exact_divide(b, cb);
    if (p.degree_in(var) < q.degree_in(var)) {
        std::swap(p, q);
    }
    while (!q.is_zero()) {
        MPoly r = pseudo_remainder(p, q, var);
        p = std::move(q);
        q = primitive_in(r, var);
    }
    return (c * primitive_in(p, var)).monic();
}

} // namespace

MPoly gcd(const MPoly& a, const MPoly& b)
{
    auto vars = merge_vars(a.vars(), b.vars());
    return gcd_same_vars(a.with_vars(vars), b.with_vars(vars));
}

std::optional<MPoly> poly_sqrt(const MPoly& p)
{
    if (p.is_zero()) {
        return p;
    }
    const Exponents& lead = p.leading_exponents();
    const GaussRat& lc = p.leading_coeff();
    if (!lc.is_real()) {
        return std::nullopt;
    }
    auto root_lc = rat_sqrt(lc.re());
    if (!root_lc) {
        return std::nullopt;
    }
    Exponents half(lead.size());
    for (std::size_t k = 0; k < lead.size(); ++k) {
        if (lead[k] % 2 != 0) {
            return std::nullopt;
        }
        half[k] = lead[k] / 2;
    }
    MPoly::TermMap t;
    t.emplace(half, GaussRat(*root_lc));
    const MPoly head = MPoly::from_terms(p.vars(), t);
    MPoly root = head;
    const MPoly twice_head = head * GaussRat(2);
    for (int guard = 0; guard < 4096; ++guard) {
        MPoly rem = p - root * root;
        if (rem.is_zero()) {
            return root;
        }
        const Exponents& r = rem.leading_exponents();
        if (!divides(half, r)) {
            return std::nullopt;
        }
        Exponents next(r.size());
        for (std::size_t k = 0; k < r.size(); ++k) {
            next[k] = r[k] - half[k];
        }
        if (!GrlexLess{}(next, half)) {
            return std::nullopt;
        }
        MPoly::TermMap nt;
        nt.emplace(next, rem.leading_coeff() / twice_head.leading_coeff());
        root += MPoly::from_terms(p.vars(), nt);
    }
    return std::nullopt;
}

} // namespace qgal

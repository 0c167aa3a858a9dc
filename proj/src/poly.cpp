#include "qgal/poly.hpp"

#include "qgal/error.hpp"

#include <algorithm>

namespace qgal {

Alphabet::Alphabet(std::vector<std::string> names_by_rank) : names_(std::move(names_by_rank))
{
    for (std::size_t i = 0; i < names_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (names_[i] == names_[j]) {
                throw Error(ErrorCode::InvalidArgument, "duplicate generator " + names_[i]);
            }
        }
    }
}

int Alphabet::rank_of(const std::string& name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

bool is_ordered(const Word& w)
{
    return std::is_sorted(w.begin(), w.end());
}

int inversions(const Word& w)
{
    int n = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            n += w[i] > w[j];
        }
    }
    return n;
}

int key_degree(const TensorKey& k)
{
    int d = 0;
    for (const auto& w : k) {
        d += static_cast<int>(w.size());
    }
    return d;
}

bool TensorKeyLess::operator()(const TensorKey& a, const TensorKey& b) const
{
    const int da = key_degree(a);
    const int db = key_degree(b);
    if (da != db) {
        return da < db;
    }
    WordLess less;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] != b[i]) {
            return less(a[i], b[i]);
        }
    }
    return a.size() < b.size();
}

NcPoly NcPoly::constant(const Scalar& c)
{
    return word(Word{}, c);
}

NcPoly NcPoly::word(const Word& w, const Scalar& c)
{
    NcPoly p;
    p.add(w, c);
    return p;
}

bool NcPoly::is_canonical() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return is_ordered(kv.first); });
}

TensorPoly TensorPoly::unit(int slots, const Scalar& c)
{
    TensorPoly p(slots);
    p.add(TensorKey(static_cast<std::size_t>(slots)), c);
    return p;
}

TensorPoly TensorPoly::embed(const NcPoly& p, int slot, int slots)
{
    TensorPoly out(slots);
    out.trunc_ = p.truncation();
    for (const auto& [w, c] : p.terms()) {
        TensorKey k(static_cast<std::size_t>(slots));
        k[static_cast<std::size_t>(slot)] = w;
        out.terms_.emplace(std::move(k), c);
    }
    return out;
}

bool TensorPoly::is_canonical() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) {
        return std::all_of(kv.first.begin(), kv.first.end(), [](const Word& w) { return is_ordered(w); });
    });
}

NcPoly TensorPoly::to_ncpoly() const
{
    if (slots_ != 1) {
        throw Error(ErrorCode::SlotMismatch,
                    "expected a 1-slot value, got " + std::to_string(slots_) + " slots");
    }
    NcPoly out;
    out.set_truncation(trunc_);
    for (const auto& [k, c] : terms_) {
        out.add(k[0], c);
    }
    return out;
}

void TensorPoly::check_slots(const TensorPoly& o) const
{
    if (slots_ != o.slots_) {
        throw Error(ErrorCode::SlotMismatch,
                    std::to_string(slots_) + "-slot and " + std::to_string(o.slots_) + "-slot tensors");
    }
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o)
{
    check_slots(o);
    Poly::operator+=(o);
    return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o)
{
    check_slots(o);
    Poly::operator-=(o);
    return *this;
}

TensorPoly tensor(const TensorPoly& a, const TensorPoly& b)
{
    TensorPoly out(a.slots() + b.slots());
    if (a.truncation() || b.truncation()) {
        // Total degree of the outer product is bounded by the sum.
        out.set_truncation(std::min(a.truncation().value_or(1 << 20), b.truncation().value_or(1 << 20)));
    }
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            TensorKey k = ka;
            k.insert(k.end(), kb.begin(), kb.end());
            out.add(k, ca * cb);
        }
    }
    return out;
}

std::string render_word(const Word& w, const Alphabet& alpha)
{
    if (w.empty()) {
        return "1";
    }
    std::string s;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) {
            ++j;
        }
        if (!s.empty()) {
            s += "*";
        }
        s += alpha.name(w[i]);
        if (j - i > 1) {
            s += "^" + std::to_string(j - i);
        }
        i = j;
    }
    return s;
}

namespace {

std::string render_term(const Scalar& c, const std::string& body, bool body_is_unit)
{
    if (body_is_unit) {
        return c.render();
    }
    if (c == Scalar(1)) {
        return body;
    }
    if (c == Scalar(-1)) {
        return "-" + body;
    }
    return c.render(true) + "*" + body;
}

std::string join_terms(const std::vector<std::string>& terms)
{
    if (terms.empty()) {
        return "0";
    }
    std::string s;
    for (const auto& t : terms) {
        if (!s.empty() && t[0] != '-') {
            s += "+";
        }
        s += t;
    }
    return s;
}

} // namespace

std::string render(const NcPoly& p, const Alphabet& alpha)
{
    std::vector<std::string> terms;
    for (const auto& [w, c] : p.terms()) {
        terms.push_back(render_term(c, render_word(w, alpha), w.empty()));
    }
    return join_terms(terms);
}

std::string render(const TensorPoly& p, const Alphabet& alpha)
{
    std::vector<std::string> terms;
    for (const auto& [k, c] : p.terms()) {
        std::string body;
        bool unit = true;
        for (std::size_t s = 0; s < k.size(); ++s) {
            body += (s ? "@" : "") + render_word(k[s], alpha);
            unit = unit && k[s].empty();
        }
        // A pure scalar still shows its slots so the slot count survives.
        if (unit && k.size() > 1) {
            terms.push_back(render_term(c, body, false));
        } else {
            terms.push_back(render_term(c, body, unit));
        }
    }
    return join_terms(terms);
}

} // namespace qgal

#pragma once

#include "qgal/scalar.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qgal {

/// Generator names indexed by rank. Words store ranks as raw chars, so a
/// word is ordered exactly when its chars are nondecreasing.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names_by_rank);

    int size() const noexcept { return static_cast<int>(names_.size()); }
    const std::string& name(int rank) const { return names_.at(static_cast<std::size_t>(rank)); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    /// -1 when absent.
    int rank_of(const std::string& name) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> names_;
};

using Word = std::string;
using TensorKey = std::vector<Word>;

bool is_ordered(const Word& w);
int inversions(const Word& w);

/// Shorter words first, then lexicographic by rank.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const
    {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    }
};

/// Total length first, then slotwise.
struct TensorKeyLess {
    bool operator()(const TensorKey& a, const TensorKey& b) const;
};

inline int key_degree(const Word& w) { return static_cast<int>(w.size()); }
int key_degree(const TensorKey& k);

/// Finite linear combination of keys with Scalar coefficients; zero
/// coefficients are never stored. An optional truncation drops every key
/// of total degree above it.
template <class Key, class Less>
class Poly {
public:
    using Terms = std::map<Key, Scalar, Less>;

    Poly() = default;

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    const std::optional<int>& truncation() const noexcept { return trunc_; }
    void set_truncation(std::optional<int> n)
    {
        trunc_ = n;
        if (n) {
            std::erase_if(terms_, [&](const auto& kv) { return key_degree(kv.first) > *n; });
        }
    }

    Scalar coeff(const Key& k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar{} : it->second;
    }

    void add(const Key& k, const Scalar& c)
    {
        if (c.is_zero() || (trunc_ && key_degree(k) > *trunc_)) {
            return;
        }
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    int degree() const
    {
        int d = -1;
        for (const auto& [k, c] : terms_) {
            d = std::max(d, key_degree(k));
        }
        return d;
    }

    Poly& operator+=(const Poly& o)
    {
        merge_truncation(o);
        for (const auto& [k, c] : o.terms_) {
            add(k, c);
        }
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        merge_truncation(o);
        for (const auto& [k, c] : o.terms_) {
            add(k, -c);
        }
        return *this;
    }
    Poly& operator*=(const Scalar& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second *= s;
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
        }
        return *this;
    }

    friend bool operator==(const Poly& a, const Poly& b)
    {
        if (a.terms_.size() != b.terms_.size()) {
            return false;
        }
        for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j) {
            if (i->first != j->first || !(i->second == j->second)) {
                return false;
            }
        }
        return true;
    }

    /// Applies `f` to every coefficient, dropping results that vanish.
    Poly map_coefficients(const std::function<Scalar(const Scalar&)>& f) const
    {
        Poly out = empty_like();
        for (const auto& [k, c] : terms_) {
            out.add(k, f(c));
        }
        return out;
    }

    /// Keeps only terms of degree <= n (without recording a truncation).
    Poly degree_at_most(int n) const
    {
        Poly out = empty_like();
        for (const auto& [k, c] : terms_) {
            if (key_degree(k) <= n) {
                out.terms_.emplace(k, c);
            }
        }
        return out;
    }

    Poly empty_like() const
    {
        Poly out = *this;
        out.terms_.clear();
        return out;
    }

protected:
    void merge_truncation(const Poly& o)
    {
        if (o.trunc_ && (!trunc_ || *o.trunc_ < *trunc_)) {
            set_truncation(o.trunc_);
        }
    }

    Terms terms_;
    std::optional<int> trunc_;
};

class NcPoly : public Poly<Word, WordLess> {
public:
    NcPoly() = default;
    NcPoly(const Poly<Word, WordLess>& p) : Poly<Word, WordLess>(p) {}

    static NcPoly constant(const Scalar& c);
    static NcPoly word(const Word& w, const Scalar& c = Scalar(1));
    static NcPoly generator(int rank) { return word(Word(1, static_cast<char>(rank))); }

    Scalar constant_term() const { return coeff(Word{}); }
    bool is_canonical() const;

    NcPoly map_coefficients(const std::function<Scalar(const Scalar&)>& f) const
    {
        return Poly::map_coefficients(f);
    }
    NcPoly degree_at_most(int n) const { return Poly::degree_at_most(n); }

    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    friend NcPoly operator*(NcPoly a, const Scalar& s) { return a *= s; }
    friend NcPoly operator*(const Scalar& s, NcPoly a) { return a *= s; }
    friend NcPoly operator-(NcPoly a) { return a *= Scalar(-1); }
};

class TensorPoly : public Poly<TensorKey, TensorKeyLess> {
public:
    explicit TensorPoly(int slots = 1) : slots_(slots) {}
    TensorPoly(const Poly<TensorKey, TensorKeyLess>& p, int slots)
        : Poly<TensorKey, TensorKeyLess>(p), slots_(slots)
    {
    }

    /// c * 1 @ ... @ 1.
    static TensorPoly unit(int slots, const Scalar& c = Scalar(1));
    /// Embeds an NcPoly into slot `slot` of a k-slot tensor (1 elsewhere).
    static TensorPoly embed(const NcPoly& p, int slot, int slots);
    static TensorPoly from(const NcPoly& p) { return embed(p, 0, 1); }

    int slots() const noexcept { return slots_; }
    Scalar constant_term() const { return coeff(TensorKey(static_cast<std::size_t>(slots_))); }
    bool is_canonical() const;
    /// Single-slot tensors convert back to NcPoly.
    NcPoly to_ncpoly() const;

    TensorPoly map_coefficients(const std::function<Scalar(const Scalar&)>& f) const
    {
        return {Poly::map_coefficients(f), slots_};
    }
    TensorPoly degree_at_most(int n) const { return {Poly::degree_at_most(n), slots_}; }

    TensorPoly& operator+=(const TensorPoly& o);
    TensorPoly& operator-=(const TensorPoly& o);
    TensorPoly& operator*=(const Scalar& s)
    {
        Poly::operator*=(s);
        return *this;
    }

    friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
    friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
    friend TensorPoly operator*(TensorPoly a, const Scalar& s) { return a *= s; }
    friend TensorPoly operator*(const Scalar& s, TensorPoly a) { return a *= s; }
    friend TensorPoly operator-(TensorPoly a) { return a *= Scalar(-1); }
    friend bool operator==(const TensorPoly& a, const TensorPoly& b)
    {
        return a.slots_ == b.slots_ &&
               static_cast<const Poly<TensorKey, TensorKeyLess>&>(a) ==
                   static_cast<const Poly<TensorKey, TensorKeyLess>&>(b);
    }

private:
    void check_slots(const TensorPoly& o) const;
    int slots_;
};

/// Outer product a @ b (slot counts add).
TensorPoly tensor(const TensorPoly& a, const TensorPoly& b);

/// "m^2*t*a*v^3"; "1" for the empty word.
std::string render_word(const Word& w, const Alphabet& alpha);
/// Terms in (length, lex) order: "m@1+1@m-1/2*v^2@t".
std::string render(const NcPoly& p, const Alphabet& alpha);
std::string render(const TensorPoly& p, const Alphabet& alpha);

} // namespace qgal

#include "qgal/rewrite.hpp"

#include "qgal/error.hpp"

#include <algorithm>
#include <array>

namespace qgal {

namespace {

constexpr std::size_t kMaxWordLength = 256;

// Per-letter counts, highest rank first, so lexicographic comparison of the
// vectors is the letter-count measure.
std::vector<int> letter_counts(const Word& w, int n)
{
    std::vector<int> c(static_cast<std::size_t>(n));
    for (char ch : w) {
        ++c[static_cast<std::size_t>(n - 1 - ch)];
    }
    return c;
}

int weight(const Word& w, const std::vector<int>& wt)
{
    int s = 0;
    for (char ch : w) {
        s += wt[static_cast<std::size_t>(ch)];
    }
    return s;
}

} // namespace

RewriteSystem::RewriteSystem(Alphabet alpha, std::vector<Rule> rules, bool validate)
    : alpha_(std::move(alpha)), rules_(std::move(rules))
{
    const int n = alpha_.size();
    table_.resize(static_cast<std::size_t>(n * n));
    for (const auto& r : rules_) {
        if (r.x <= r.y || r.x >= n || r.y < 0) {
            throw Error(ErrorCode::InvalidArgument, "rule " + render_word(Word{static_cast<char>(r.x)}, alpha_) +
                                                        render_word(Word{static_cast<char>(r.y)}, alpha_) +
                                                        " is not an inversion");
        }
        for (const auto& [w, c] : r.correction.terms()) {
            for (char ch : w) {
                if (ch < 0 || ch >= n) {
                    throw Error(ErrorCode::AlphabetMismatch, "correction letter outside the alphabet");
                }
            }
        }
        table_[static_cast<std::size_t>(r.x * n + r.y)] += r.correction;
    }
    certificate_ = validate ? validate_termination() : "unchecked";
}

RewriteSystem::RewriteSystem(const RewriteSystem& o)
    : alpha_(o.alpha_), rules_(o.rules_), table_(o.table_), certificate_(o.certificate_), budget_(o.budget_)
{
    std::lock_guard lock(o.memo_mutex_);
    memo_ = o.memo_;
}

const NcPoly& RewriteSystem::correction(int x, int y) const
{
    static const NcPoly zero;
    if (x <= y) {
        return zero;
    }
    return table_[static_cast<std::size_t>(x * alpha_.size() + y)];
}

NcPoly RewriteSystem::bracket(int x, int y) const
{
    if (x > y) {
        return correction(x, y);
    }
    if (x < y) {
        return -correction(y, x);
    }
    return {};
}

// Two independent certificates; either proves termination.
//  1. Letter counts (highest rank first, lexicographic), then inversions:
//     every correction word has a smaller count vector than xy.
//  2. A weighted admissible order (weight, length, lex) with small positive
//     integer weights under which every correction word is below xy.
std::string RewriteSystem::validate_termination() const
{
    const int n = alpha_.size();
    bool counts_ok = true;
    for (const auto& r : rules_) {
        const Word xy{static_cast<char>(r.x), static_cast<char>(r.y)};
        const auto cxy = letter_counts(xy, n);
        for (const auto& [u, c] : table_[static_cast<std::size_t>(r.x * n + r.y)].terms()) {
            const auto cu = letter_counts(u, n);
            if (!(cu < cxy || (cu == cxy && inversions(u) < inversions(xy)))) {
                counts_ok = false;
            }
        }
    }
    if (counts_ok) {
        return "letter-count measure (highest rank first), then inversions";
    }

    constexpr int kMaxWeight = 6;
    std::vector<int> wt(static_cast<std::size_t>(n), 1);
    auto fits = [&]() {
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < x; ++y) {
                const Word xy{static_cast<char>(x), static_cast<char>(y)};
                const int wxy = weight(xy, wt);
                for (const auto& [u, c] : correction(x, y).terms()) {
                    const int wu = weight(u, wt);
                    const bool below = wu != wxy ? wu < wxy
                                                 : (u.size() != 2 ? u.size() < 2 : u < xy);
                    if (!below) {
                        return false;
                    }
                }
            }
        }
        return true;
    };
    // Odometer over weight vectors in 1..kMaxWeight.
    while (true) {
        if (fits()) {
            std::string s = "weighted order (weight, length, lex) with weights";
            for (int k = 0; k < n; ++k) {
                s += " " + alpha_.name(k) + "=" + std::to_string(wt[static_cast<std::size_t>(k)]);
            }
            return s;
        }
        int k = 0;
        while (k < n && wt[static_cast<std::size_t>(k)] == kMaxWeight) {
            wt[static_cast<std::size_t>(k++)] = 1;
        }
        if (k == n) {
            break;
        }
        ++wt[static_cast<std::size_t>(k)];
    }

    for (const auto& r : rules_) {
        if (!r.correction.is_zero()) {
            const Word xy{static_cast<char>(r.x), static_cast<char>(r.y)};
            for (const auto& [u, c] : correction(r.x, r.y).terms()) {
                if (letter_counts(u, n) >= letter_counts(xy, n)) {
                    throw Error(ErrorCode::TerminationViolation,
                                "rule " + render_word(xy, alpha_) + " -> ... + " + render_word(u, alpha_) +
                                    " admits no termination certificate");
                }
            }
        }
    }
    throw Error(ErrorCode::TerminationViolation, "rule set admits no termination certificate");
}

NcPoly RewriteSystem::reduce(const Word& w, std::size_t& steps, std::vector<Word>& stack) const
{
    if (is_ordered(w)) {
        return NcPoly::word(w);
    }
    {
        std::lock_guard lock(memo_mutex_);
        if (auto it = memo_.find(w); it != memo_.end()) {
            return it->second;
        }
    }
    if (++steps > budget_ || w.size() > kMaxWordLength ||
        std::find(stack.begin(), stack.end(), w) != stack.end()) {
        throw Error(ErrorCode::TerminationBudgetExceeded,
                    "normal ordering of " + render_word(stack.empty() ? w : stack.front(), alpha_) +
                        " did not terminate");
    }
    stack.push_back(w);
    std::size_t i = 0;
    while (w[i] <= w[i + 1]) {
        ++i;
    }
    const Word pre = w.substr(0, i);
    const Word suf = w.substr(i + 2);
    NcPoly out = reduce(pre + w[i + 1] + w[i] + suf, steps, stack);
    for (const auto& [u, c] : correction(w[i], w[i + 1]).terms()) {
        NcPoly sub = reduce(pre + u + suf, steps, stack);
        sub *= c;
        out += sub;
    }
    stack.pop_back();
    std::lock_guard lock(memo_mutex_);
    memo_.emplace(w, out);
    return out;
}

NcPoly RewriteSystem::normal_form(const Word& w) const
{
    std::size_t steps = 0;
    std::vector<Word> stack;
    return reduce(w, steps, stack);
}

NcPoly RewriteSystem::normal_order(const NcPoly& p) const
{
    NcPoly out;
    for (const auto& [w, c] : p.terms()) {
        if (is_ordered(w)) {
            out.add(w, c);
            continue;
        }
        const NcPoly nf = normal_form(w);
        for (const auto& [u, d] : nf.terms()) {
            out.add(u, c * d);
        }
    }
    out.set_truncation(p.truncation());
    return out;
}

TensorPoly RewriteSystem::normal_order(const TensorPoly& p) const
{
    TensorPoly out(p.slots());
    for (const auto& [k, c] : p.terms()) {
        // Slotwise normal forms, then their outer product.
        std::vector<std::pair<TensorKey, Scalar>> acc{{TensorKey{}, c}};
        for (const auto& w : k) {
            const NcPoly nf = is_ordered(w) ? NcPoly::word(w) : normal_form(w);
            std::vector<std::pair<TensorKey, Scalar>> next;
            next.reserve(acc.size() * nf.size());
            for (const auto& [pk, pc] : acc) {
                for (const auto& [u, d] : nf.terms()) {
                    TensorKey nk = pk;
                    nk.push_back(u);
                    next.emplace_back(std::move(nk), pc * d);
                }
            }
            acc = std::move(next);
        }
        for (const auto& [nk, nc] : acc) {
            out.add(nk, nc);
        }
    }
    out.set_truncation(p.truncation());
    return out;
}

RewriteSystem RewriteSystem::map_coefficients(const std::function<Scalar(const Scalar&)>& f) const
{
    std::vector<Rule> mapped;
    mapped.reserve(rules_.size());
    for (const auto& r : rules_) {
        mapped.push_back({r.x, r.y, r.correction.map_coefficients(f)});
    }
    RewriteSystem out(alpha_, std::move(mapped), false);
    out.certificate_ = certificate_;
    out.budget_ = budget_;
    return out;
}

namespace {

std::optional<int> min_truncation(const std::optional<int>& a, const std::optional<int>& b)
{
    if (a && b) {
        return std::min(*a, *b);
    }
    return a ? a : b;
}

} // namespace

NcPoly multiply(const NcPoly& p, const NcPoly& q, const RewriteSystem* rws)
{
    // With relations the truncation is applied only after normal ordering:
    // corrections can lower the degree, so a long free word may still
    // contribute below the cutoff.
    const auto trunc = min_truncation(p.truncation(), q.truncation());
    NcPoly out;
    if (!rws) {
        out.set_truncation(trunc);
    }
    for (const auto& [a, ca] : p.terms()) {
        for (const auto& [b, cb] : q.terms()) {
            out.add(a + b, ca * cb);
        }
    }
    if (!rws) {
        return out;
    }
    NcPoly nf = rws->normal_order(out);
    nf.set_truncation(trunc);
    return nf;
}

TensorPoly tensor_multiply(const TensorPoly& p, const TensorPoly& q, const RewriteSystem* rws)
{
    if (p.slots() != q.slots()) {
        throw Error(ErrorCode::SlotMismatch, "tensor product of " + std::to_string(p.slots()) + "-slot and " +
                                                 std::to_string(q.slots()) + "-slot values");
    }
    const auto trunc = min_truncation(p.truncation(), q.truncation());
    TensorPoly out(p.slots());
    if (!rws) {
        out.set_truncation(trunc);
    }
    for (const auto& [a, ca] : p.terms()) {
        for (const auto& [b, cb] : q.terms()) {
            if (!rws && trunc && key_degree(a) + key_degree(b) > *trunc) {
                continue;
            }
            TensorKey k(a.size());
            for (std::size_t s = 0; s < a.size(); ++s) {
                k[s] = a[s] + b[s];
            }
            out.add(k, ca * cb);
        }
    }
    if (!rws) {
        return out;
    }
    TensorPoly nf = rws->normal_order(out);
    nf.set_truncation(trunc);
    return nf;
}

NcPoly commutator(const NcPoly& p, const NcPoly& q, const RewriteSystem* rws)
{
    return multiply(p, q, rws) - multiply(q, p, rws);
}

NcPoly power(const NcPoly& p, int e, const RewriteSystem* rws)
{
    NcPoly out = NcPoly::constant(Scalar(1));
    out.set_truncation(p.truncation());
    for (int k = 0; k < e; ++k) {
        out = multiply(out, p, rws);
    }
    return out;
}

OverlapReport check_overlaps(const RewriteSystem& rws)
{
    OverlapReport report;
    const int n = rws.alphabet().size();
    for (int x = n - 1; x >= 0; --x) {
        for (int y = x - 1; y >= 0; --y) {
            for (int z = y - 1; z >= 0; --z) {
                const NcPoly gx = NcPoly::generator(x);
                const NcPoly gy = NcPoly::generator(y);
                const NcPoly gz = NcPoly::generator(z);
                OverlapResult r;
                r.triple = Word{static_cast<char>(x), static_cast<char>(y), static_cast<char>(z)};
                r.left = rws.normal_form(Word{static_cast<char>(y), static_cast<char>(x), static_cast<char>(z)}) +
                         multiply(rws.correction(x, y), gz, &rws);
                r.right = rws.normal_form(Word{static_cast<char>(x), static_cast<char>(z), static_cast<char>(y)}) +
                          multiply(gx, rws.correction(y, z), &rws);
                r.jacobi = commutator(rws.bracket(x, y), gz, &rws) + commutator(rws.bracket(y, z), gx, &rws) +
                           commutator(rws.bracket(z, x), gy, &rws);
                r.ok = r.left == r.right && r.jacobi.is_zero();
                if (!r.ok && !report.first_failure) {
                    report.first_failure = report.triples.size();
                    report.ok = false;
                }
                report.triples.push_back(std::move(r));
            }
        }
    }
    return report;
}

} // namespace qgal

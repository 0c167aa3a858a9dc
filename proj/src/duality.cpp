#include "qgal/duality.hpp"

#include "qgal/error.hpp"

#include <algorithm>
#include <mutex>

namespace qgal {

namespace {

const std::map<std::string, std::string>& partners()
{
    static const std::map<std::string, std::string> p{{"M", "m"}, {"H", "t"}, {"P", "a"}, {"K", "v"}};
    return p;
}

Word letter(int r) { return Word(1, static_cast<char>(r)); }
int rank_at(const Word& w, std::size_t i) { return static_cast<unsigned char>(w[i]); }

// Ordered words over `letters` ranks of length <= n, by (length, lex).
std::vector<Word> ordered_words(int letters, int n)
{
    std::vector<Word> out{Word{}};
    std::vector<Word> frontier{Word{}};
    for (int len = 1; len <= n; ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            const int from = w.empty() ? 0 : rank_at(w, w.size() - 1);
            for (int r = from; r < letters; ++r) {
                next.push_back(w + letter(r));
            }
        }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

std::array<int, 4> exponents(const Word& w)
{
    std::array<int, 4> e{};
    for (std::size_t i = 0; i < w.size(); ++i) {
        ++e.at(static_cast<std::size_t>(rank_at(w, i)));
    }
    return e;
}

Scalar scalar_pow(const Scalar& s, int e)
{
    Scalar out(1);
    for (int k = 0; k < e; ++k) {
        out *= s;
    }
    return out;
}

bool is_zero_functional(const std::vector<Scalar>& values)
{
    return std::all_of(values.begin(), values.end(), [](const Scalar& s) { return s.is_zero(); });
}

// Group basis with v before a, for the second derive ordering.
CaseDef with_alternate_order(const CaseDef& c)
{
    CaseDef out = c;
    if (out.alt_order.empty()) {
        out.alt_order = out.order;
        auto a = std::find(out.alt_order.begin(), out.alt_order.end(), "a");
        auto v = std::find(out.alt_order.begin(), out.alt_order.end(), "v");
        if (a == out.alt_order.end() || v == out.alt_order.end()) {
            throw Error(ErrorCode::InvalidArgument, c.label() + " has no a/v pair to reorder");
        }
        std::iter_swap(a, v);
    }
    return out;
}

} // namespace

const Alphabet& dual_alphabet()
{
    static const Alphabet a({"M", "H", "P", "K"});
    return a;
}

Scalar base_pairing(const std::string& dual, const std::string& group)
{
    auto it = partners().find(dual);
    if (it == partners().end() || it->second != group) {
        return Scalar();
    }
    return dual == "H" ? Scalar::i() : -Scalar::i();
}

TensorPoly iterated_coproduct(const Presentation& group, const NcPoly& phi, int k)
{
    if (k < 1) {
        throw Error(ErrorCode::InvalidArgument, "iterated coproduct needs at least one slot");
    }
    const RewriteSystem* rws = group.rws.get();
    if (k == 1) {
        return TensorPoly::from(rws->normal_order(phi));
    }
    const MorphismSpec delta = coproduct_map(group);
    TensorPoly out = apply_morphism(delta, phi, rws);
    for (int s = 2; s < k; ++s) {
        out = apply_on_slot(delta, out, s - 1, rws);
    }
    return out;
}

Duality::Duality(Presentation group) : group_(std::move(group)), delta_(coproduct_map(group_))
{
    const Alphabet& d = dual_alphabet();
    base_.assign(static_cast<std::size_t>(d.size()), std::vector<Scalar>(static_cast<std::size_t>(group_.alphabet.size())));
    for (int x = 0; x < d.size(); ++x) {
        for (int g = 0; g < group_.alphabet.size(); ++g) {
            base_[static_cast<std::size_t>(x)][static_cast<std::size_t>(g)] =
                base_pairing(d.name(x), group_.alphabet.name(g));
        }
    }
}

std::vector<Word> Duality::monomials(int n) const { return ordered_words(group_.alphabet.size(), n); }

const TensorPoly& Duality::coproduct_of(const Word& w)
{
    if (auto it = coproducts_.find(w); it != coproducts_.end()) {
        return it->second;
    }
    TensorPoly d = w.empty() ? TensorPoly::unit(2)
                             : tensor_multiply(coproduct_of(w.substr(0, w.size() - 1)),
                                               delta_.images.at(static_cast<std::size_t>(rank_at(w, w.size() - 1))),
                                               group_.rws.get());
    return coproducts_.emplace(w, std::move(d)).first->second;
}

const NcPoly& Duality::left_action(int x, const Word& w)
{
    const auto key = std::make_pair(x, w);
    if (auto it = actions_.find(key); it != actions_.end()) {
        return it->second;
    }
    NcPoly out;
    const auto& row = base_.at(static_cast<std::size_t>(x));
    for (const auto& [k, c] : coproduct_of(w).terms()) {
        if (k[0].size() == 1) {
            const Scalar& b = row[static_cast<std::size_t>(rank_at(k[0], 0))];
            if (!b.is_zero()) {
                out.add(k[1], b * c);
            }
        }
    }
    return actions_.emplace(key, std::move(out)).first->second;
}

Scalar Duality::pair(const Word& u, const Word& w)
{
    if (u.empty()) {
        Scalar e(1);
        for (std::size_t i = 0; i < w.size(); ++i) {
            e *= group_.counit.at(static_cast<std::size_t>(rank_at(w, i)));
        }
        return e;
    }
    const auto key = std::make_pair(u, w);
    if (auto it = pairs_.find(key); it != pairs_.end()) {
        return it->second;
    }
    const Word rest = u.substr(1);
    Scalar out;
    // std::map nodes are stable, so the reference survives the recursion.
    const NcPoly& psi = left_action(rank_at(u, 0), w);
    for (const auto& [v, c] : psi.terms()) {
        out += c * pair(rest, v);
    }
    pairs_.emplace(key, out);
    return out;
}

Scalar Duality::pair(const NcPoly& x, const NcPoly& phi)
{
    const NcPoly ordered = group_.rws->normal_order(phi);
    Scalar out;
    for (const auto& [u, cu] : x.terms()) {
        for (const auto& [w, cw] : ordered.terms()) {
            out += cu * cw * pair(u, w);
        }
    }
    return out;
}

Scalar Duality::pair_slow(const Word& u, const NcPoly& phi) const
{
    const RewriteSystem* rws = group_.rws.get();
    const int k = static_cast<int>(u.size());
    if (k == 0) {
        return apply_morphism(counit_map(group_), phi, nullptr).constant_term();
    }
    auto& images = slow_images_[k];
    if (images.empty()) {
        for (int g = 0; g < group_.alphabet.size(); ++g) {
            images.push_back(iterated_coproduct(group_, NcPoly::generator(g), k));
        }
    }
    Scalar out;
    for (const auto& [w, c] : phi.terms()) {
        auto it = slow_.find({k, w});
        if (it == slow_.end()) {
            TensorPoly free = TensorPoly::unit(k);
            for (std::size_t i = 0; i < w.size(); ++i) {
                free = tensor_multiply(free, images[static_cast<std::size_t>(rank_at(w, i))], nullptr);
            }
            it = slow_.emplace(std::make_pair(k, w), rws->normal_order(free)).first;
        }
        out += c * slot_pairing(u, it->second);
    }
    return out;
}

Scalar Duality::slot_pairing(const Word& u, const TensorPoly& ordered) const
{
    Scalar out;
    for (const auto& [key, c] : ordered.terms()) {
        Scalar prod = c;
        for (std::size_t s = 0; s < key.size() && !prod.is_zero(); ++s) {
            prod = key[s].size() == 1 ? prod * base_[static_cast<std::size_t>(rank_at(u, s))]
                                                    [static_cast<std::size_t>(rank_at(key[s], 0))]
                                      : Scalar();
        }
        out += prod;
    }
    return out;
}

std::vector<Word> dual_pbw_words(int n) { return ordered_words(dual_alphabet().size(), n); }

std::string GeneratingPolynomial::render() const
{
    static const std::array<const char*, 4> names{"mu", "nu", "rho", "kappa"};
    if (terms.empty()) {
        return "0";
    }
    std::string s;
    for (const auto& [e, c] : terms) {
        std::string mono;
        for (std::size_t i = 0; i < 4; ++i) {
            if (e[i] > 0) {
                mono += (mono.empty() ? "" : "*") + std::string(names[i]) +
                        (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
            }
        }
        std::string coeff = c.render(true);
        std::string t;
        if (mono.empty()) {
            t = coeff;
        } else if (coeff == "1") {
            t = mono;
        } else if (coeff == "-1") {
            t = "-" + mono;
        } else {
            t = coeff + "*" + mono;
        }
        if (!s.empty() && t[0] != '-') {
            s += "+";
        }
        s += t;
    }
    return s;
}

GeneratingPolynomial generating_pair(Duality& d, const NcPoly& x, int n)
{
    // Variables follow the letters m, t, a, v by name, whatever their rank.
    const Alphabet& g = d.group().alphabet;
    static const std::array<const char*, 4> letters{"m", "t", "a", "v"};
    std::array<std::size_t, 4> var_of_rank{};
    for (std::size_t v = 0; v < 4; ++v) {
        var_of_rank.at(static_cast<std::size_t>(g.rank_of(letters[v]))) = v;
    }
    GeneratingPolynomial out;
    for (const auto& w : d.monomials(n)) {
        Scalar c;
        for (const auto& [u, cu] : x.terms()) {
            c += cu * d.pair(u, w);
        }
        if (c.is_zero()) {
            continue;
        }
        std::array<int, 4> e{};
        const auto ex = exponents(w);
        Rat denom = 1;
        for (std::size_t r = 0; r < 4; ++r) {
            e[var_of_rank[r]] = ex[r];
            denom *= factorial(ex[r]);
        }
        out.terms[e] = c * Scalar(GaussRat(Rat(1) / denom));
    }
    return out;
}

Scalar classical_diagonal_entry(const Word& u)
{
    const auto e = exponents(u); // M, H, P, K
    Rat f = factorial(e[0]) * factorial(e[1]) * factorial(e[2]) * factorial(e[3]);
    return scalar_pow(-Scalar::i(), e[0] + e[2] + e[3]) * scalar_pow(Scalar::i(), e[1]) * Scalar(GaussRat(f));
}

namespace {

// Partner monomial of a dual PBW word in the given group alphabet.
Word partner_monomial(const Word& u, const Alphabet& group)
{
    const Alphabet& d = dual_alphabet();
    std::vector<int> count(static_cast<std::size_t>(group.size()), 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const std::string& name = partners().at(d.name(rank_at(u, i)));
        ++count[static_cast<std::size_t>(group.rank_of(name))];
    }
    Word w;
    for (int r = 0; r < group.size(); ++r) {
        w += Word(static_cast<std::size_t>(count[static_cast<std::size_t>(r)]), static_cast<char>(r));
    }
    return w;
}

} // namespace

PairingMatrix build_pairing_matrix(Duality& d, int N)
{
    PairingMatrix A;
    A.degree = N;
    A.rows = dual_pbw_words(N);
    A.cols = d.monomials(N);
    if (A.rows.size() != A.cols.size()) {
        throw Error(ErrorCode::StructureViolation, "dual and group bases differ in size");
    }
    std::map<Word, int> col_index;
    for (std::size_t c = 0; c < A.cols.size(); ++c) {
        col_index[A.cols[c]] = static_cast<int>(c);
    }
    const Alphabet& g = d.group().alphabet;
    std::size_t nonzero = 0;
    A.entries.assign(A.rows.size(), std::vector<Scalar>(A.cols.size()));
    for (std::size_t r = 0; r < A.rows.size(); ++r) {
        const Word& u = A.rows[r];
        A.partner.push_back(col_index.at(partner_monomial(u, g)));
        for (std::size_t c = 0; c < A.cols.size(); ++c) {
            const Word& w = A.cols[c];
            Scalar e = d.pair(u, w);
            if (e.is_zero()) {
                continue;
            }
            ++nonzero;
            if (u.size() < w.size()) {
                // Degree-lowering relations make these nonzero; they must
                // at least vanish classically for the solve to be valid.
                if (!e.classical_value().is_zero()) {
                    throw Error(ErrorCode::StructureViolation,
                                "<" + render_word(u, dual_alphabet()) + ", " + render_word(w, g) + "> = " +
                                    e.render() + " is nonzero at order zero although the word is shorter");
                }
                ++A.above_diagonal;
            }
            A.entries[r][c] = std::move(e);
        }
        for (std::size_t c = 0; c < A.cols.size(); ++c) {
            if (A.cols[c].size() != u.size()) {
                continue;
            }
            const Scalar expect = static_cast<int>(c) == A.partner.back() ? classical_diagonal_entry(u) : Scalar();
            if (!(A.entries[r][c].classical_value() == expect)) {
                throw Error(ErrorCode::StructureViolation,
                            "diagonal entry <" + render_word(u, dual_alphabet()) + ", " + render_word(A.cols[c], g) +
                                "> is " + A.entries[r][c].render() + " at order zero; expected " + expect.render());
            }
        }
    }
    A.certificate = std::to_string(A.rows.size()) + "x" + std::to_string(A.cols.size()) +
                    " pairing matrix through degree " + std::to_string(N) + ": " + std::to_string(nonzero) +
                    " nonzero entries, " + std::to_string(A.above_diagonal) +
                    " above the diagonal blocks (all of positive order); diagonal blocks classical at order zero";
    return A;
}

void confirm_classical_diagonal(int n)
{
    const Presentation classical = compile_multivariate(classical_limit(builtin(1, Side::Group), {{"l", Rat(1)}}));
    const Duality d(classical);
    const Alphabet& g = classical.alphabet;
    for (const auto& w : d.monomials(n)) {
        if (w.empty()) {
            continue;
        }
        for (const auto& u : dual_pbw_words(n)) {
            if (w.size() != u.size()) {
                continue;
            }
            const Scalar got = d.pair_slow(u, NcPoly::word(w));
            const Scalar expect = w == partner_monomial(u, g) ? classical_diagonal_entry(u) : Scalar();
            if (!(got == expect)) {
                throw Error(ErrorCode::StructureViolation,
                            "classical <" + render_word(u, dual_alphabet()) + ", " + render_word(w, g) + "> = " +
                                got.render() + ", formula gives " + expect.render());
            }
        }
    }
}

namespace {

// Solves x A = b over the rows of length <= n, treating the blocks with
// length >= degree by back substitution from the top degree down. Each
// diagonal block is D0 + R with D0 the classical monomial matrix and R of
// positive order, solved by x = (rhs - x R) D0^-1.
std::vector<Scalar> triangular_solve(const PairingMatrix& A, const std::vector<Scalar>& b,
                                     const std::vector<std::size_t>& begin, int n)
{
    const std::size_t total = b.size();
    std::vector<Scalar> x(total);
    for (int d = n; d >= 0; --d) {
        const std::size_t lo = begin[static_cast<std::size_t>(d)], hi = begin[static_cast<std::size_t>(d) + 1];
        std::vector<Scalar> rhs(b.begin() + static_cast<std::ptrdiff_t>(lo), b.begin() + static_cast<std::ptrdiff_t>(hi));
        for (std::size_t r = hi; r < total; ++r) {
            if (x[r].is_zero()) {
                continue;
            }
            for (std::size_t c = lo; c < hi; ++c) {
                if (!A.entries[r][c].is_zero()) {
                    rhs[c - lo] -= x[r] * A.entries[r][c];
                }
            }
        }
        std::vector<Scalar> xd(hi - lo);
        for (int iter = 0;; ++iter) {
            std::vector<Scalar> next(hi - lo);
            for (std::size_t r = lo; r < hi; ++r) {
                const auto pc = static_cast<std::size_t>(A.partner[r]);
                const Scalar d0 = classical_diagonal_entry(A.rows[r]);
                Scalar acc = rhs[pc - lo];
                for (std::size_t r2 = lo; r2 < hi; ++r2) {
                    if (xd[r2 - lo].is_zero()) {
                        continue;
                    }
                    Scalar e = A.entries[r2][pc];
                    if (r2 == r) {
                        e -= d0;
                    }
                    if (!e.is_zero()) {
                        acc -= xd[r2 - lo] * e;
                    }
                }
                next[r - lo] = acc / d0;
            }
            if (next == xd) {
                break;
            }
            if (iter > 64) {
                throw Error(ErrorCode::SingularSolve, "diagonal block iteration does not close");
            }
            xd = std::move(next);
        }
        std::copy(xd.begin(), xd.end(), x.begin() + static_cast<std::ptrdiff_t>(lo));
    }
    return x;
}

} // namespace

NcPoly reconstruct(const PairingMatrix& A, const std::function<Scalar(const Word&)>& ell, int n)
{
    if (n > A.degree) {
        throw Error(ErrorCode::InvalidArgument, "reconstruction degree exceeds the pairing matrix");
    }
    // Rows and columns are sorted by length, so [begin[d], begin[d+1]) is block d.
    std::vector<std::size_t> begin(static_cast<std::size_t>(n) + 2, 0);
    for (int d = 0; d <= n + 1; ++d) {
        begin[static_cast<std::size_t>(d)] = static_cast<std::size_t>(
            std::find_if(A.rows.begin(), A.rows.end(), [d](const Word& w) { return static_cast<int>(w.size()) >= d; }) -
            A.rows.begin());
    }
    const std::size_t total = begin[static_cast<std::size_t>(n) + 1];

    std::vector<Scalar> b(total);
    for (std::size_t c = 0; c < total; ++c) {
        b[c] = ell(A.cols[c]);
    }
    std::vector<Scalar> x(total);
    if (!is_zero_functional(b)) {
        // Entries with length < degree have positive order: fold them into
        // the right-hand side and repeat until the solution is stable.
        for (int iter = 0;; ++iter) {
            std::vector<Scalar> rhs = b;
            if (A.above_diagonal > 0) {
                for (std::size_t r = 0; r < total; ++r) {
                    if (x[r].is_zero()) {
                        continue;
                    }
                    for (std::size_t c = begin[A.rows[r].size() + 1]; c < total; ++c) {
                        if (!A.entries[r][c].is_zero()) {
                            rhs[c] -= x[r] * A.entries[r][c];
                        }
                    }
                }
            }
            std::vector<Scalar> next = triangular_solve(A, rhs, begin, n);
            if (next == x) {
                break;
            }
            if (iter > 64) {
                throw Error(ErrorCode::SingularSolve, "reconstruction does not close");
            }
            x = std::move(next);
        }
    }
    NcPoly out;
    for (std::size_t r = 0; r < total; ++r) {
        out.add(A.rows[r], x[r]);
    }
    return out;
}

TensorPoly reconstruct2(const PairingMatrix& A, const std::function<Scalar(const Word&, const Word&)>& ell, int n)
{
    // y[psi] = sum_u2 x[., u2] <u2, psi>, one slot at a time.
    std::map<Word, NcPoly> y;
    for (const auto& psi : A.cols) {
        const int e = static_cast<int>(psi.size());
        if (e > n) {
            break;
        }
        NcPoly col = reconstruct(A, [&](const Word& phi) { return ell(phi, psi); }, n - e);
        if (!col.is_zero()) {
            y.emplace(psi, std::move(col));
        }
    }
    TensorPoly out(2);
    for (const auto& u1 : A.rows) {
        const int l = static_cast<int>(u1.size());
        if (l > n) {
            break;
        }
        bool any = false;
        for (const auto& [psi, col] : y) {
            any = any || !col.coeff(u1).is_zero();
        }
        if (!any) {
            continue;
        }
        const NcPoly z = reconstruct(
            A,
            [&](const Word& psi) {
                auto it = y.find(psi);
                return it == y.end() ? Scalar() : it->second.coeff(u1);
            },
            n - l);
        for (const auto& [u2, c] : z.terms()) {
            out.add(TensorKey{u1, u2}, c);
        }
    }
    return out;
}

namespace {

void ensure_classical_diagonal()
{
    static std::once_flag once;
    std::call_once(once, [] { confirm_classical_diagonal(4); });
}

} // namespace

DerivedDual derive_dual_structure(const CaseDef& group_case, const std::map<std::string, Rat>& assignment, int N,
                                  bool alternate_order)
{
    if (group_case.side != Side::Group) {
        throw Error(ErrorCode::InvalidArgument, "derive mode starts from a group case");
    }
    ensure_classical_diagonal();
    const CaseDef c = alternate_order ? with_alternate_order(group_case) : group_case;
    DerivedDual out;
    out.group = compile_scaled(c, assignment, N, alternate_order);
    out.degree = N;
    Duality d(out.group);
    const PairingMatrix A = build_pairing_matrix(d, N);
    out.matrix_certificate = A.certificate;

    const Presentation& g = out.group;
    const RewriteSystem* rws = g.rws.get();
    const int n = dual_alphabet().size();
    const MorphismSpec s = antipode_map(g);

    out.brackets.assign(static_cast<std::size_t>(n), std::vector<NcPoly>(static_cast<std::size_t>(n)));
    for (int x = 1; x < n; ++x) {
        for (int y = 0; y < x; ++y) {
            const Word xy{static_cast<char>(x), static_cast<char>(y)}, yx{static_cast<char>(y), static_cast<char>(x)};
            out.brackets[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                reconstruct(A, [&](const Word& w) { return d.pair(xy, w) - d.pair(yx, w); }, N);
        }
    }
    for (int x = 0; x < n; ++x) {
        const Word X = letter(x);
        out.coproduct.push_back(reconstruct2(
            A,
            [&](const Word& phi, const Word& psi) {
                return d.pair(NcPoly::word(X), multiply(NcPoly::word(phi), NcPoly::word(psi), rws));
            },
            N));
        out.antipode.push_back(reconstruct(
            A, [&](const Word& w) { return d.pair(NcPoly::word(X), apply_morphism(s, NcPoly::word(w), rws).to_ncpoly()); },
            N));
        out.counit.push_back(d.pair(X, Word{}));
    }
    return out;
}

Presentation DerivedDual::presentation(int id) const
{
    Presentation q;
    q.def.id = id;
    q.def.side = Side::Dual;
    q.def.order = dual_alphabet().names();
    q.def.provenance = "derived from " + group.def.label() + " at " + group.render_instantiation() + ", degree " +
                       std::to_string(degree);
    q.alphabet = dual_alphabet();
    std::vector<RewriteSystem::Rule> rules;
    for (std::size_t x = 0; x < brackets.size(); ++x) {
        for (std::size_t y = 0; y < x; ++y) {
            if (!brackets[x][y].is_zero()) {
                rules.push_back({static_cast<int>(x), static_cast<int>(y), brackets[x][y]});
            }
        }
    }
    q.rws = std::make_shared<const RewriteSystem>(q.alphabet, std::move(rules), false);
    q.coproduct = coproduct;
    q.antipode = antipode;
    q.counit = counit;
    q.mode = Scalar::Mode::Scaled;
    q.scaling = group.scaling;
    q.degree = degree;
    return q;
}

CaseDef DerivedDual::to_case(int id) const
{
    const Presentation q = presentation(id);
    return qgal::to_case(q, id, Side::Dual, q.def.provenance);
}

DerivedDual truncate(const DerivedDual& d, int n)
{
    if (n < 1 || n > d.degree) {
        throw Error(ErrorCode::InvalidArgument,
                    "cannot cut a degree-" + std::to_string(d.degree) + " derivation to degree " + std::to_string(n));
    }
    const bool alt = d.group.alphabet.names() != d.group.def.order;
    DerivedDual out;
    out.group = compile_scaled(d.group.def, d.group.scaling->assignment, n, alt);
    out.degree = n;
    out.matrix_certificate = d.matrix_certificate;
    const ScalingPtr& ctx = out.group.scaling;
    const auto cut = [&](const Scalar& s) { return reduce_order(s, ctx); };
    out.brackets = d.brackets;
    for (auto& row : out.brackets) {
        for (auto& b : row) {
            b = b.degree_at_most(n).map_coefficients(cut);
        }
    }
    for (const auto& t : d.coproduct) {
        out.coproduct.push_back(t.degree_at_most(n).map_coefficients(cut));
    }
    for (const auto& s : d.antipode) {
        out.antipode.push_back(s.degree_at_most(n).map_coefficients(cut));
    }
    for (const auto& c : d.counit) {
        out.counit.push_back(cut(c));
    }
    return out;
}

bool same_structure(const DerivedDual& a, const DerivedDual& b)
{
    return a.brackets == b.brackets && a.coproduct == b.coproduct && a.antipode == b.antipode && a.counit == b.counit;
}

bool DualVerification::agree() const
{
    return std::all_of(items.begin(), items.end(), [](const StructureComparison& s) { return s.agree; });
}

DualVerification compare_dual(const DerivedDual& derived, const CaseDef& claimed,
                              const std::map<std::string, Rat>& assignment)
{
    const Presentation q = compile_scaled(claimed, assignment, derived.degree);
    const Alphabet& da = dual_alphabet();
    if (q.alphabet.names() != da.names()) {
        throw Error(ErrorCode::AlphabetMismatch, claimed.label() + " is not written over M, H, P, K");
    }
    DualVerification v;
    v.case_label = claimed.label();
    v.alternate_order = derived.group.alphabet.names() != derived.group.def.order;
    v.instantiation = derived.group.render_instantiation();
    v.degree = derived.degree;
    v.order = derived.group.scaling->order;

    auto add = [&](const std::string& name, const TensorPoly& got, const TensorPoly& want) {
        StructureComparison s;
        s.structure = name;
        s.derived = render(got, da);
        s.claimed = render(want, da);
        const TensorPoly diff = got - want;
        s.agree = diff.is_zero();
        if (!s.agree) {
            s.difference = render(diff, da);
        }
        v.items.push_back(std::move(s));
    };
    const int n = da.size();
    for (int x = 1; x < n; ++x) {
        for (int y = 0; y < x; ++y) {
            add("[" + da.name(x) + "," + da.name(y) + "]",
                TensorPoly::from(derived.brackets[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]),
                TensorPoly::from(q.rws->normal_order(q.rws->bracket(x, y))));
        }
    }
    for (int x = 0; x < n; ++x) {
        const auto i = static_cast<std::size_t>(x);
        add("D(" + da.name(x) + ")", derived.coproduct[i], q.coproduct[i]);
        add("S(" + da.name(x) + ")", TensorPoly::from(derived.antipode[i]), TensorPoly::from(q.antipode[i]));
        add("e(" + da.name(x) + ")", TensorPoly::unit(1, derived.counit[i]), TensorPoly::unit(1, q.counit[i]));
    }
    return v;
}

DualVerification verify_dual_structure(const CaseDef& group_case, const CaseDef& claimed,
                                       const std::map<std::string, Rat>& assignment, int N, bool alternate_order)
{
    return compare_dual(derive_dual_structure(group_case, assignment, N, alternate_order), claimed, assignment);
}

CheckReport check_classical_limit(const CaseDef& dual_case, const std::map<std::string, Rat>& ray)
{
    constexpr int M = 0, H = 1, P = 2, K = 3;
    const CaseDef limit = classical_limit(dual_case, ray);
    const Presentation p = compile_multivariate(limit);
    const Alphabet& a = p.alphabet;
    CheckReport r;
    r.case_label = dual_case.label();
    r.check = "classical limit";
    r.mode = p.mode;
    r.instantiation = "ray " + compile_scaled(dual_case, ray, 1).render_instantiation();
    if (a.names() != dual_alphabet().names()) {
        throw Error(ErrorCode::AlphabetMismatch, dual_case.label() + " is not written over M, H, P, K");
    }
    const RewriteSystem* rws = p.rws.get();
    const NcPoly iM = NcPoly::generator(M) * Scalar::i();
    const NcPoly iP = NcPoly::generator(P) * Scalar::i();
    auto expect = [&](const std::string& subject, const TensorPoly& got, const TensorPoly& want) {
        if (!(got == want)) {
            r.ok = false;
            r.findings.push_back({subject, render(got, a) + " instead of " + render(want, a)});
        }
    };
    for (int x = 1; x < 4; ++x) {
        for (int y = 0; y < x; ++y) {
            const NcPoly got = rws->normal_order(rws->bracket(x, y));
            NcPoly want;
            if (x == K && y == H) {
                want = iP;
            } else if (x == K && y == P) {
                want = got == -iM ? -iM : iM;
                if (got == -iM) {
                    r.notes.push_back("[K,P] sign flagged: -i*M");
                }
            }
            expect("[" + a.name(x) + "," + a.name(y) + "]", TensorPoly::from(got), TensorPoly::from(want));
        }
    }
    for (int g = 0; g < 4; ++g) {
        const auto k = static_cast<std::size_t>(g);
        const NcPoly gen = NcPoly::generator(g);
        expect("D(" + a.name(g) + ")", p.coproduct[k], TensorPoly::embed(gen, 0, 2) + TensorPoly::embed(gen, 1, 2));
        expect("S(" + a.name(g) + ")", TensorPoly::from(p.antipode[k]), TensorPoly::from(-gen));
        expect("e(" + a.name(g) + ")", TensorPoly::unit(1, p.counit[k]), TensorPoly::unit(1, Scalar()));
    }
    return r;
}

DualStar dual_star(Duality& d, const PairingMatrix& A)
{
    const Presentation& g = d.group();
    const MorphismSpec star = star_map(g);
    const MorphismSpec sinv = antipode_inverse(g);
    const RewriteSystem* rws = g.rws.get();
    const Alphabet& da = dual_alphabet();
    DualStar out;
    for (int x = 0; x < da.size(); ++x) {
        const NcPoly X = NcPoly::generator(x);
        NcPoly img = reconstruct(
            A,
            [&](const Word& w) {
                const NcPoly phi_star = apply_morphism(star, NcPoly::word(w), rws).to_ncpoly();
                return d.pair(X, apply_morphism(sinv, phi_star, rws).to_ncpoly()).conj();
            },
            A.degree);
        const std::string& name = da.name(x);
        if (img == X) {
            out.pattern.push_back(name + "* = " + name);
        } else if (img == -X) {
            out.pattern.push_back(name + "* = -" + name);
        } else {
            out.pattern.push_back(name + "* = " + render(img, da));
        }
        out.images.push_back(std::move(img));
    }
    return out;
}

} // namespace qgal

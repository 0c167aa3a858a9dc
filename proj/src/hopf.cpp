#include "qgal/hopf.hpp"

#include "qgal/error.hpp"

#include <unordered_map>

namespace qgal {

namespace {

TensorPoly lift(const NcPoly& p) { return TensorPoly::from(p); }

class WordImages {
public:
    WordImages(const MorphismSpec& spec, const RewriteSystem* rws) : spec_(spec), rws_(rws) {}

    const TensorPoly& of(const Word& w)
    {
        if (auto it = memo_.find(w); it != memo_.end()) {
            return it->second;
        }
        TensorPoly img;
        if (w.empty()) {
            img = TensorPoly::unit(spec_.slots);
        } else {
            const auto last = static_cast<std::size_t>(static_cast<unsigned char>(w.back()));
            if (last >= spec_.images.size()) {
                throw Error(ErrorCode::AlphabetMismatch,
                            spec_.name + " has no image for generator rank " + std::to_string(last));
            }
            const TensorPoly prefix = of(w.substr(0, w.size() - 1));
            const TensorPoly& g = spec_.images[last];
            img = spec_.kind == MorphismSpec::Kind::Homomorphism ? tensor_multiply(prefix, g, rws_)
                                                                 : tensor_multiply(g, prefix, rws_);
        }
        return memo_.emplace(w, std::move(img)).first->second;
    }

    Scalar coefficient(const Scalar& c) const { return spec_.antilinear ? c.conj() : c; }

private:
    const MorphismSpec& spec_;
    const RewriteSystem* rws_;
    std::unordered_map<Word, TensorPoly> memo_;
};

CheckReport make_report(const Presentation& p, const std::string& check)
{
    CheckReport r;
    r.case_label = p.def.label();
    r.check = check;
    r.mode = p.mode;
    r.degree = p.degree;
    if (p.scaling) {
        r.order = p.scaling->order;
    }
    r.instantiation = p.render_instantiation();
    return r;
}

void expect_zero(CheckReport& r, const TensorPoly& diff, const Alphabet& alpha, const std::string& subject)
{
    if (!diff.is_zero()) {
        r.ok = false;
        r.findings.push_back({subject, render(diff, alpha)});
    }
}

} // namespace

MorphismSpec coproduct_map(const Presentation& p)
{
    return {"D", MorphismSpec::Kind::Homomorphism, false, 2, p.coproduct};
}

MorphismSpec antipode_map(const Presentation& p)
{
    MorphismSpec s{"S", MorphismSpec::Kind::Antihomomorphism, false, 1, {}};
    for (const auto& a : p.antipode) {
        s.images.push_back(lift(a));
    }
    return s;
}

MorphismSpec counit_map(const Presentation& p)
{
    MorphismSpec s{"e", MorphismSpec::Kind::Homomorphism, false, 0, {}};
    for (const auto& c : p.counit) {
        s.images.push_back(TensorPoly::unit(0, c));
    }
    return s;
}

MorphismSpec star_map(const Presentation& p)
{
    if (!p.has_star()) {
        throw Error(ErrorCode::InvalidArgument, p.def.label() + " declares no star structure");
    }
    MorphismSpec s{"star", MorphismSpec::Kind::Antihomomorphism, true, 1, {}};
    for (const auto& a : p.star) {
        s.images.push_back(lift(a));
    }
    return s;
}

TensorPoly apply_morphism(const MorphismSpec& spec, const NcPoly& p, const RewriteSystem* rws)
{
    WordImages images(spec, rws);
    TensorPoly out(spec.slots);
    for (const auto& [w, c] : p.terms()) {
        out += images.of(w) * images.coefficient(c);
    }
    return out;
}

TensorPoly apply_on_slot(const MorphismSpec& spec, const TensorPoly& t, int slot, const RewriteSystem* rws)
{
    if (slot < 0 || slot >= t.slots()) {
        throw Error(ErrorCode::SlotMismatch,
                    "slot " + std::to_string(slot) + " of a " + std::to_string(t.slots()) + "-slot tensor");
    }
    WordImages images(spec, rws);
    TensorPoly out(t.slots() - 1 + spec.slots);
    const auto s = static_cast<std::size_t>(slot);
    for (const auto& [k, c] : t.terms()) {
        const Scalar coeff = images.coefficient(c);
        for (const auto& [ik, ic] : images.of(k[s]).terms()) {
            TensorKey nk(k.begin(), k.begin() + slot);
            nk.insert(nk.end(), ik.begin(), ik.end());
            nk.insert(nk.end(), k.begin() + slot + 1, k.end());
            out.add(nk, coeff * ic);
        }
    }
    return out;
}

TensorPoly apply_on_all_slots(const MorphismSpec& spec, const TensorPoly& t, const RewriteSystem* rws)
{
    if (spec.slots != 1) {
        throw Error(ErrorCode::SlotMismatch, spec.name + " does not map into one slot");
    }
    WordImages images(spec, rws);
    TensorPoly out(t.slots());
    for (const auto& [k, c] : t.terms()) {
        TensorPoly term = TensorPoly::unit(0, images.coefficient(c));
        for (const auto& w : k) {
            term = tensor(term, images.of(w));
        }
        out += term;
    }
    return out;
}

NcPoly contract(const TensorPoly& t, const RewriteSystem* rws)
{
    NcPoly free;
    for (const auto& [k, c] : t.terms()) {
        Word w;
        for (const auto& part : k) {
            w += part;
        }
        free.add(w, c);
    }
    return rws ? rws->normal_order(free) : free;
}

CheckReport check_jacobi(const Presentation& p)
{
    CheckReport r = make_report(p, "overlaps");
    const OverlapReport o = check_overlaps(*p.rws);
    for (const auto& t : o.triples) {
        if (!t.ok) {
            r.ok = false;
            r.findings.push_back({"overlap " + render_word(t.triple, p.alphabet),
                                  render(t.left - t.right, p.alphabet)});
        }
    }
    r.notes.push_back(std::to_string(o.triples.size()) + " overlaps; " + p.rws->termination_certificate());
    return r;
}

CheckReport check_well_defined(const MorphismSpec& spec, const Presentation& p)
{
    CheckReport r = make_report(p, "well-defined " + spec.name);
    const RewriteSystem* rws = p.rws.get();
    const int n = p.alphabet.size();
    for (int x = 1; x < n; ++x) {
        for (int y = 0; y < x; ++y) {
            // xy - yx - f_xy is zero in the algebra, so its image must be.
            NcPoly rel = NcPoly::word(Word{static_cast<char>(x), static_cast<char>(y)}) -
                         NcPoly::word(Word{static_cast<char>(y), static_cast<char>(x)}) - rws->correction(x, y);
            expect_zero(r, apply_morphism(spec, rel, rws), p.alphabet,
                        spec.name + "([" + p.alphabet.name(x) + "," + p.alphabet.name(y) + "])");
        }
    }
    return r;
}

CheckReport check_coassociativity(const Presentation& p)
{
    CheckReport r = make_report(p, "coassociativity");
    const MorphismSpec d = coproduct_map(p);
    const RewriteSystem* rws = p.rws.get();
    for (int g = 0; g < p.alphabet.size(); ++g) {
        const TensorPoly& dg = d.images[static_cast<std::size_t>(g)];
        expect_zero(r, apply_on_slot(d, dg, 0, rws) - apply_on_slot(d, dg, 1, rws), p.alphabet,
                    "generator " + p.alphabet.name(g));
    }
    return r;
}

CheckReport check_counit(const Presentation& p)
{
    CheckReport r = make_report(p, "counit");
    const MorphismSpec d = coproduct_map(p);
    const MorphismSpec e = counit_map(p);
    const RewriteSystem* rws = p.rws.get();
    for (int g = 0; g < p.alphabet.size(); ++g) {
        const TensorPoly& dg = d.images[static_cast<std::size_t>(g)];
        const TensorPoly gen = lift(NcPoly::generator(g));
        const std::string name = p.alphabet.name(g);
        expect_zero(r, apply_on_slot(e, dg, 0, rws) - gen, p.alphabet, "generator " + name + ", left");
        expect_zero(r, apply_on_slot(e, dg, 1, rws) - gen, p.alphabet, "generator " + name + ", right");
    }
    return r;
}

CheckReport check_antipode(const Presentation& p)
{
    CheckReport r = make_report(p, "antipode");
    const MorphismSpec d = coproduct_map(p);
    const MorphismSpec s = antipode_map(p);
    const RewriteSystem* rws = p.rws.get();
    for (int g = 0; g < p.alphabet.size(); ++g) {
        const TensorPoly& dg = d.images[static_cast<std::size_t>(g)];
        const NcPoly unit = NcPoly::constant(p.counit[static_cast<std::size_t>(g)]);
        const std::string name = p.alphabet.name(g);
        expect_zero(r, lift(contract(apply_on_slot(s, dg, 0, rws), rws) - unit), p.alphabet,
                    "generator " + name + ", left");
        expect_zero(r, lift(contract(apply_on_slot(s, dg, 1, rws), rws) - unit), p.alphabet,
                    "generator " + name + ", right");
    }
    return r;
}

CheckReport check_star(const Presentation& p)
{
    CheckReport r = make_report(p, "star");
    if (!p.has_star()) {
        r.notes.push_back("no star structure declared");
        return r;
    }
    const MorphismSpec star = star_map(p);
    const MorphismSpec d = coproduct_map(p);
    const MorphismSpec s = antipode_map(p);
    const RewriteSystem* rws = p.rws.get();
    std::vector<std::string> eq15_failures;
    for (int g = 0; g < p.alphabet.size(); ++g) {
        const auto gi = static_cast<std::size_t>(g);
        const std::string name = p.alphabet.name(g);
        const NcPoly& gs = p.star[gi];
        const TensorPoly gen = lift(NcPoly::generator(g));

        expect_zero(r, apply_morphism(star, gs, rws) - gen, p.alphabet, "involution on " + name);
        expect_zero(r, apply_morphism(d, gs, rws) - apply_on_all_slots(star, d.images[gi], rws), p.alphabet,
                    "coproduct of " + name + "*");

        // S(S(g*)*) = g, i.e. S^-1 = star S star.
        NcPoly x = apply_morphism(s, gs, rws).to_ncpoly();
        x = apply_morphism(star, x, rws).to_ncpoly();
        x = apply_morphism(s, x, rws).to_ncpoly();
        if (!(x == NcPoly::generator(g))) {
            eq15_failures.push_back(name);
        }
    }
    r.notes.push_back(eq15_failures.empty() ? "S(S(g*)*) = g for every generator"
                                            : "S(S(g*)*) != g for some generators");
    return r;
}

std::vector<CheckReport> run_suite(const Presentation& p)
{
    std::vector<CheckReport> out;
    out.push_back(check_jacobi(p));
    out.push_back(check_well_defined(coproduct_map(p), p));
    out.push_back(check_well_defined(antipode_map(p), p));
    out.push_back(check_well_defined(counit_map(p), p));
    if (p.has_star()) {
        out.push_back(check_well_defined(star_map(p), p));
    }
    out.push_back(check_coassociativity(p));
    out.push_back(check_counit(p));
    out.push_back(check_antipode(p));
    out.push_back(check_star(p));
    return out;
}

MorphismSpec antipode_inverse(const Presentation& p, int max_steps)
{
    const MorphismSpec s = antipode_map(p);
    const RewriteSystem* rws = p.rws.get();
    const int steps = p.mode == Scalar::Mode::Scaled ? p.scaling->order + 1 : max_steps;
    MorphismSpec inv{"S^-1", MorphismSpec::Kind::Antihomomorphism, false, 1, {}};
    for (int g = 0; g < p.alphabet.size(); ++g) {
        const NcPoly gen = NcPoly::generator(g);
        NcPoly x = p.antipode[static_cast<std::size_t>(g)];
        NcPoly residual = apply_morphism(s, x, rws).to_ncpoly() - gen;
        for (int k = 0; k < steps && !residual.is_zero(); ++k) {
            x -= apply_morphism(s, residual, rws).to_ncpoly();
            residual = apply_morphism(s, x, rws).to_ncpoly() - gen;
        }
        if (!residual.is_zero()) {
            throw Error(ErrorCode::NotInvertibleAtTruncation,
                        "S(x) = " + p.alphabet.name(g) + " not solved for " + p.def.label() + "; residual " +
                            render(residual, p.alphabet));
        }
        inv.images.push_back(lift(x));
    }
    return inv;
}

} // namespace qgal

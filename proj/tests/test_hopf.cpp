#include "qgal/error.hpp"
#include "qgal/hopf.hpp"

#include <gtest/gtest.h>

using namespace qgal;

namespace {

const CheckReport& find(const std::vector<CheckReport>& suite, const std::string& check)
{
    for (const auto& r : suite) {
        if (r.check == check) {
            return r;
        }
    }
    throw std::runtime_error("no check " + check);
}

bool all_ok(const std::vector<CheckReport>& suite)
{
    return std::all_of(suite.begin(), suite.end(), [](const CheckReport& r) { return r.ok; });
}

NcPoly poly(const Presentation& p, const std::string& text, std::optional<int> trunc = std::nullopt)
{
    return evaluate_poly(text, p.alphabet, p, p.rws.get(), trunc);
}

Expr group_expr(const CaseDef& c, const std::string& text) { return parse_expr(text, c.symbols()); }

} // namespace

TEST(Hopf, GroupImages)
{
    const Presentation p = compile_multivariate(builtin(1, Side::Group));
    const MorphismSpec d = coproduct_map(p);
    const MorphismSpec s = antipode_map(p);
    const RewriteSystem* rws = p.rws.get();

    const NcPoly t = poly(p, "t");
    EXPECT_EQ(apply_morphism(d, t, rws), TensorPoly::embed(t, 0, 2) + TensorPoly::embed(t, 1, 2));
    EXPECT_EQ(apply_morphism(s, poly(p, "a"), rws).to_ncpoly(), poly(p, "-a + v*t"));
    // Antihomomorphic: S(m v) = S(v) S(m).
    EXPECT_EQ(apply_morphism(s, NcPoly::word(Word{0, 3}), rws).to_ncpoly(),
              poly(p, "(-v)*(-m + 1/2*v^2*t - a*v)"));
}

TEST(Hopf, CounitAndUnit)
{
    const Presentation p = compile_multivariate(builtin(4, Side::Group));
    const MorphismSpec e = counit_map(p);
    EXPECT_EQ(e.slots, 0);
    EXPECT_EQ(apply_morphism(e, poly(p, "3 + m*v"), p.rws.get()), TensorPoly::unit(0, Scalar(3)));
}

TEST(Hopf, AllGroupCasesPassExactly)
{
    for (int id = 1; id <= 16; ++id) {
        const Presentation p = compile_multivariate(builtin(id, Side::Group));
        const auto suite = run_suite(p);
        EXPECT_TRUE(all_ok(suite)) << p.def.label();
        EXPECT_EQ(find(suite, "star").notes.back(), "S(S(g*)*) = g for every generator") << p.def.label();
    }
}

TEST(Hopf, MissingCoproductTermIsCaught)
{
    CaseDef c = builtin(1, Side::Group);
    c.coproduct["a"] = group_expr(c, "a@1 + 1@a");
    const auto suite = run_suite(compile_multivariate(c));
    EXPECT_FALSE(find(suite, "well-defined D").ok);
}

TEST(Hopf, WrongStarIsCaught)
{
    CaseDef c = builtin(1, Side::Group);
    c.star["v"] = group_expr(c, "-v");
    const auto suite = run_suite(compile_multivariate(c));
    const CheckReport& r = find(suite, "well-defined star");
    ASSERT_FALSE(r.ok);
    // Rows with an odd power of v on the right: [a,t] and [a,m], not [t,m].
    std::vector<std::string> subjects;
    for (const auto& f : r.findings) {
        subjects.push_back(f.subject);
    }
    EXPECT_EQ(subjects, (std::vector<std::string>{"star([a,m])", "star([a,t])"}));
}

TEST(Hopf, FlippedRelationIsCaughtByCoproduct)
{
    CaseDef c = builtin(1, Side::Group);
    for (auto& r : c.relations) {
        if (r.x == "t" && r.y == "m") {
            r.rhs = Expr::neg(r.rhs);
        }
    }
    const Presentation p = compile_multivariate(c);
    EXPECT_FALSE(check_well_defined(coproduct_map(p), p).ok);
}

TEST(Hopf, EverySignFlipOfGroupCase1IsCaught)
{
    const CaseDef& c = builtin(1, Side::Group);
    const std::size_t n = sign_sites(c);
    EXPECT_EQ(n, 21u);
    for (std::size_t k = 0; k < n; ++k) {
        std::string where;
        const CaseDef mutated = flip_sign(c, k, &where);
        bool caught = false;
        try {
            caught = !all_ok(run_suite(compile_multivariate(mutated)));
        } catch (const Error&) {
            caught = true;
        }
        EXPECT_TRUE(caught) << where;
    }
    EXPECT_THROW(flip_sign(c, n), Error);
}

TEST(Hopf, DualCase16CoassociativityAtDegree4)
{
    const CaseDef& c = builtin(16, Side::Dual);
    const Presentation p = compile_scaled(c, {{"l", Rat(3, 2)}}, 4);
    EXPECT_TRUE(check_coassociativity(p).ok);
    EXPECT_TRUE(all_ok(run_suite(p)));
    // Delta M is not primitive here; its cube term survives at this order.
    EXPECT_GT(p.coproduct[0].terms().size(), 2u);
}

TEST(Hopf, DualSuitesAtDegree5)
{
    for (int id = 1; id <= 16; ++id) {
        const CaseDef& c = builtin(id, Side::Dual);
        for (const auto& inst : sample_instantiations(c, 11, 1)) {
            const Presentation p = compile_scaled(c, inst.values, 5);
            EXPECT_TRUE(all_ok(run_suite(p))) << c.label() << " " << inst.render();
        }
    }
}

TEST(Hopf, PrimitiveCoassociativity)
{
    const Presentation p = compile_scaled(builtin(1, Side::Dual), {{"l", Rat(1)}}, 3);
    const MorphismSpec d = coproduct_map(p);
    const TensorPoly dd = apply_on_slot(d, d.images[0], 0, p.rws.get());
    EXPECT_EQ(dd.terms().size(), 3u);
    EXPECT_EQ(dd, apply_on_slot(d, d.images[0], 1, p.rws.get()));
}

TEST(Hopf, AntipodeInverse)
{
    {
        const Presentation p = compile_multivariate(builtin(1, Side::Group));
        const MorphismSpec inv = antipode_inverse(p);
        const MorphismSpec s = antipode_map(p);
        EXPECT_EQ(inv.images[3].to_ncpoly(), poly(p, "-v"));
        for (int g = 0; g < 4; ++g) {
            const NcPoly gen = NcPoly::generator(g);
            EXPECT_EQ(apply_morphism(s, inv.images[static_cast<std::size_t>(g)].to_ncpoly(), p.rws.get()).to_ncpoly(),
                      gen);
            EXPECT_EQ(apply_morphism(inv, apply_morphism(s, gen, p.rws.get()).to_ncpoly(), p.rws.get()).to_ncpoly(),
                      gen);
        }
    }
    {
        const Presentation p = compile_scaled(builtin(2, Side::Dual), {{"l", Rat(2)}}, 5);
        const MorphismSpec inv = antipode_inverse(p);
        const MorphismSpec s = antipode_map(p);
        for (int g = 0; g < 4; ++g) {
            EXPECT_EQ(apply_morphism(s, inv.images[static_cast<std::size_t>(g)].to_ncpoly(), p.rws.get()).to_ncpoly(),
                      NcPoly::generator(g));
        }
        EXPECT_FALSE(inv.images[2].to_ncpoly() == -NcPoly::generator(2));
    }
}

TEST(Hopf, ApplyOnSlotRejectsBadSlot)
{
    const Presentation p = compile_multivariate(builtin(1, Side::Group));
    const MorphismSpec d = coproduct_map(p);
    try {
        apply_on_slot(d, d.images[0], 2, p.rws.get());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SlotMismatch);
    }
}

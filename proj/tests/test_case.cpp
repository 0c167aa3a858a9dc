#include "qgal/case.hpp"
#include "qgal/error.hpp"
#include "qgal/hopf.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace qgal;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

CaseDef printed(int id)
{
    char name[64];
    std::snprintf(name, sizeof name, "/printed/dual_case%02d.case", id);
    return parse_case(read_file(std::string(QGAL_TEST_DATA) + name));
}

bool check_ok(const std::vector<CheckReport>& suite, const std::string& check)
{
    for (const auto& r : suite) {
        if (r.check == check) {
            return r.ok;
        }
    }
    throw std::runtime_error("no check " + check);
}

bool all_ok(const std::vector<CheckReport>& suite)
{
    return std::all_of(suite.begin(), suite.end(), [](const CheckReport& r) { return r.ok; });
}

const char* kMinimalDual = R"(
[meta]
id=1 side=dual order=M,H,P,K
[relations]
[K,P] = i*M
[coproduct]
D(M) = M@1 + 1@M
D(H) = H@1 + 1@H
D(P) = P@1 + 1@P
D(K) = K@1 + 1@K
[antipode]
S(M) = -M
S(H) = -H
S(P) = -P
S(K) = -K
)";

} // namespace

TEST(CaseRegistry, BuiltinsParseAndRoundTrip)
{
    for (Side side : {Side::Group, Side::Dual}) {
        for (int id = 1; id <= 16; ++id) {
            const CaseDef& c = builtin(id, side);
            EXPECT_EQ(c.id, id);
            EXPECT_EQ(c.side, side);
            EXPECT_EQ(parse_case(render_case(c)), c) << c.label();
        }
    }
    EXPECT_THROW(builtin(17, Side::Group), Error);
}

TEST(CaseRegistry, GroupOverlapsResolve)
{
    for (int id = 1; id <= 16; ++id) {
        const Presentation p = compile_multivariate(builtin(id, Side::Group));
        EXPECT_TRUE(check_jacobi(p).ok) << p.def.label();
    }
}

TEST(CaseRegistry, MinimalFile)
{
    const CaseDef c = parse_case(kMinimalDual);
    EXPECT_TRUE(c.params.empty());
    const Presentation p = compile_scaled(c, {}, 3);
    EXPECT_EQ(render(p.rws->bracket(3, 2), p.alphabet), "i*M");
    EXPECT_TRUE(p.counit[3].is_zero());
    EXPECT_TRUE(all_ok(run_suite(p)));
}

TEST(CaseRegistry, NonTerminatingRelationRejected)
{
    std::string text = kMinimalDual;
    text.replace(text.find("i*M"), 3, "K*P");
    try {
        compile_multivariate(parse_case(text));
        FAIL() << "expected TerminationViolation";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TerminationViolation);
    }
}

TEST(CaseRegistry, SyntaxErrorsCarryLocation)
{
    std::string text = kMinimalDual;
    text.replace(text.find("i*M"), 3, "i*(M");
    try {
        parse_case(text);
        FAIL() << "expected SyntaxError";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
        EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos) << e.what();
    }
}

TEST(CaseRegistry, Case12DegenerateInstantiation)
{
    const CaseDef& c = builtin(12, Side::Dual);
    try {
        compile_scaled(c, {{"l1", Rat(1)}, {"l2", Rat(2)}}, 3);
        FAIL() << "expected DegenerateInstantiation";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateInstantiation);
    }
    for (const auto& inst : sample_instantiations(c, 7, 20)) {
        EXPECT_NE(Rat(2) * inst.values.at("l1"), inst.values.at("l2"));
    }
}

TEST(CaseRegistry, SamplerIsDeterministic)
{
    for (int id : {1, 9, 15}) {
        const auto a = sample_instantiations(builtin(id, Side::Dual), 42, 3);
        const auto b = sample_instantiations(builtin(id, Side::Dual), 42, 3);
        ASSERT_EQ(a.size(), 3u);
        for (std::size_t k = 0; k < a.size(); ++k) {
            EXPECT_EQ(a[k].render(), b[k].render());
        }
        EXPECT_NE(a[0].values, a[1].values);
    }
}

TEST(CaseRegistry, Case15DrawsArePerfectSquares)
{
    for (const auto& inst : sample_instantiations(builtin(15, Side::Dual), 3, 5)) {
        const Rat& l1 = inst.values.at("l1");
        const Rat& l2 = inst.values.at("l2");
        const Rat& l3 = inst.values.at("l3");
        const Rat d = l2 * l2 - Rat(4) * l1 * l3;
        ASSERT_GT(sgn(d), 0);
        EXPECT_TRUE(rat_sqrt(d).has_value()) << inst.render();
    }
}

TEST(CaseRegistry, ClassicalLimits)
{
    for (int id = 1; id <= 16; ++id) {
        const CaseDef& c = builtin(id, Side::Dual);
        const auto inst = sample_instantiations(c, 1, 1)[0];
        const CaseDef cl = classical_limit(c, inst.values);
        EXPECT_TRUE(cl.params.empty());
        std::map<std::string, std::string> brackets;
        for (const auto& r : cl.relations) {
            brackets["[" + r.x + "," + r.y + "]"] = render(r.rhs);
        }
        const std::string kp = id == 12 ? "-i*M" : "i*M";
        EXPECT_EQ(brackets, (std::map<std::string, std::string>{{"[K,H]", "i*P"}, {"[K,P]", kp}})) << c.label();
        for (const auto& g : cl.order) {
            EXPECT_EQ(render(cl.coproduct.at(g)), "1 @ " + g + " + " + g + " @ 1") << c.label();
            EXPECT_EQ(render(cl.antipode.at(g)), "-" + g) << c.label();
        }
    }
}

TEST(CaseRegistry, GroupClassicalLimitNeedsNoScaling)
{
    const CaseDef cl = classical_limit(builtin(9, Side::Group), {{"l1", Rat(1)}, {"l2", Rat(1)}, {"l3", Rat(1)}});
    EXPECT_TRUE(cl.relations.empty());
    EXPECT_EQ(render(cl.antipode.at("m")), "-m - a*v + 1/2*t*v^2");
}

TEST(CaseRegistry, PrintedVariantsFailTheAxioms)
{
    const auto inst = [](const CaseDef& c) { return sample_instantiations(c, 1, 1)[0].values; };
    {
        const CaseDef c = printed(11);
        const auto suite = run_suite(compile_scaled(c, inst(c), 4));
        EXPECT_FALSE(check_ok(suite, "well-defined D"));
    }
    for (int id : {3, 9, 10}) {
        const CaseDef c = printed(id);
        const auto suite = run_suite(compile_scaled(c, inst(c), 4));
        EXPECT_FALSE(check_ok(suite, "antipode")) << c.label();
        EXPECT_TRUE(check_ok(suite, "coassociativity")) << c.label();
    }
    for (int id : {3, 9, 10, 11}) {
        const CaseDef& c = builtin(id, Side::Dual);
        EXPECT_TRUE(all_ok(run_suite(compile_scaled(c, inst(c), 4)))) << c.label();
    }
}

TEST(CaseRegistry, TailOrderViolation)
{
    std::string text = kMinimalDual;
    text.replace(text.find("[relations]"), 0, "[params]\nl\n");
    text.replace(text.find("S(H) = -H"), 9, "S(H) = -H + l*M^3");
    try {
        compile_scaled(parse_case(text), {{"l", Rat(1)}}, 4);
        FAIL() << "expected TailOrderViolation";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TailOrderViolation);
    }
}

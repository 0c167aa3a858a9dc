#include "qgal/duality.hpp"
#include "qgal/error.hpp"

#include <gtest/gtest.h>

using namespace qgal;


namespace {

constexpr char M = 0, H = 1, P = 2, K = 3;

Presentation scaled_group(int id, const std::map<std::string, Rat>& values, int N, bool alt = false)
{
    return compile_scaled(builtin(id, Side::Group), values, N, alt);
}

NcPoly dual(const std::string& text, const Presentation& params_of, int trunc)
{
    return evaluate_poly(text, dual_alphabet(), params_of, nullptr, trunc);
}

NcPoly group(const std::string& text, const Presentation& p)
{
    return evaluate_poly(text, p.alphabet, p, p.rws.get());
}

Scalar param(const Presentation& p, const std::string& name) { return to_scaled(Scalar::param(name), p.scaling); }

} // namespace

TEST(Duality, BasePairings)
{
    Duality d(scaled_group(1, {{"l", Rat(1)}}, 3));
    EXPECT_EQ(d.pair(Word{K}, Word{3}), -Scalar::i());
    EXPECT_EQ(d.pair(Word{H}, Word{1}), Scalar::i());
    EXPECT_EQ(d.pair(Word{M}, Word{2}), Scalar());
    EXPECT_EQ(base_pairing("P", "a"), -Scalar::i());
    EXPECT_EQ(d.pair(Word{}, Word{}), Scalar(1));
    EXPECT_EQ(d.pair(Word{M}, Word{}), Scalar());
}

TEST(Duality, CommutatorPairingsCase1)
{
    const Presentation g = scaled_group(1, {{"l", Rat(1)}}, 3);
    Duality d(g);
    const NcPoly KP = dual("K*P - P*K", g, 3);
    const NcPoly KH = dual("K*H - H*K", g, 3);
    EXPECT_EQ(d.pair(KP, group("m", g)), Scalar(1));
    EXPECT_EQ(d.pair(KH, group("a", g)), Scalar(1));
    EXPECT_EQ(d.pair(dual("i*M", g, 3), group("m", g)), Scalar(1));
}

TEST(Duality, FastPairingMatchesFreeTensorOracle)
{
    for (int id : {1, 6, 9, 15}) {
        const auto inst = sample_instantiations(builtin(id, Side::Dual), 2, 1)[0];
        Duality d(scaled_group(id, inst.values, 4));
        for (const auto& w : d.monomials(3)) {
            for (const auto& u : dual_pbw_words(3)) {
                ASSERT_EQ(d.pair(u, w), d.pair_slow(u, NcPoly::word(w)))
                    << "case " << id << " " << render_word(u, dual_alphabet()) << " vs "
                    << render_word(w, d.group().alphabet);
            }
        }
    }
}

TEST(Duality, PairingIsAssociative)
{
    const auto inst = sample_instantiations(builtin(7, Side::Dual), 4, 1)[0];
    Duality d(scaled_group(7, inst.values, 4));
    const std::vector<Word> letters{{M}, {H}, {P}, {K}};
    for (const auto& x : letters) {
        for (const auto& y : letters) {
            for (const auto& z : letters) {
                // Unordered words: pair() takes any word, and XYZ is one word
                // either way; compare against the slot-by-slot definition.
                const Word xyz = x + y + z;
                for (const auto& w : d.monomials(4)) {
                    const TensorPoly split = iterated_coproduct(d.group(), NcPoly::word(w), 2);
                    Scalar via_x, via_z;
                    for (const auto& [k, c] : split.terms()) {
                        via_x += c * d.pair(x, k[0]) * d.pair(y + z, k[1]);
                        via_z += c * d.pair(x + y, k[0]) * d.pair(z, k[1]);
                    }
                    ASSERT_EQ(via_x, d.pair(xyz, w));
                    ASSERT_EQ(via_z, d.pair(xyz, w));
                }
            }
        }
    }
}

TEST(Duality, IteratedCoproduct)
{
    const Presentation g = compile_multivariate(builtin(1, Side::Group));
    const TensorPoly d1 = iterated_coproduct(g, group("t", g), 1);
    EXPECT_EQ(d1, TensorPoly::from(group("t", g)));
    const TensorPoly d3 = iterated_coproduct(g, group("t", g), 3);
    EXPECT_EQ(d3.slots(), 3);
    EXPECT_EQ(d3.terms().size(), 3u);
    // Delta^2 m: m in each slot, -1/2 v^2 and -v in front of t and a in three
    // slot patterns each, and the v@v@t cross term: 3 + 3 + 3 + 1 = 10 terms.
    EXPECT_EQ(iterated_coproduct(g, group("m", g), 3).terms().size(), 10u);
}

TEST(Duality, PairingMatrixClassicalBlocks)
{
    Duality d(scaled_group(1, {{"l", Rat(1)}}, 2));
    const PairingMatrix A1 = build_pairing_matrix(d, 1);
    ASSERT_EQ(A1.rows.size(), 5u);
    const std::vector<Scalar> diag{-Scalar::i(), Scalar::i(), -Scalar::i(), -Scalar::i()};
    for (std::size_t r = 1; r < 5; ++r) {
        EXPECT_EQ(A1.entries[r][static_cast<std::size_t>(A1.partner[r])], diag[r - 1]);
    }
    const PairingMatrix A2 = build_pairing_matrix(d, 2);
    EXPECT_EQ(A2.rows.size(), 15u);
    // Length 2 against degree 1: <KP, m> = 1 through the -v@a term of Delta m;
    // the ordered row PK pairs to zero.
    EXPECT_EQ(d.pair(Word{K, P}, Word{0}), Scalar(1));
    EXPECT_EQ(d.pair(Word{P, K}, Word{0}), Scalar());
    EXPECT_EQ(classical_diagonal_entry(Word{M, M}), Scalar(-2));
    EXPECT_EQ(classical_diagonal_entry(Word{H, K}), Scalar(1));
    EXPECT_EQ(A2.above_diagonal, 0u);
}

TEST(Duality, ClassicalDiagonalFormulaByBruteForce) { EXPECT_NO_THROW(confirm_classical_diagonal(3)); }

TEST(Duality, DegreeLoweringRelationsPopulateTheUpperBlocks)
{
    Duality d(scaled_group(6, {{"l1", Rat(1)}, {"l2", Rat(1)}}, 4));
    const PairingMatrix A = build_pairing_matrix(d, 4);
    EXPECT_GT(A.above_diagonal, 0u);
    for (std::size_t r = 0; r < A.rows.size(); ++r) {
        for (std::size_t c = 0; c < A.cols.size(); ++c) {
            if (A.rows[r].size() < A.cols[c].size()) {
                EXPECT_GT(A.entries[r][c].valuation(), 0);
            }
        }
    }
}

TEST(Duality, ReconstructClassicalElement)
{
    const Presentation g = scaled_group(1, {{"l", Rat(1)}}, 3);
    Duality d(g);
    const PairingMatrix A = build_pairing_matrix(d, 3);
    const NcPoly iM = dual("i*M", g, 3);
    EXPECT_EQ(reconstruct(A, [&](const Word& w) { return d.pair(iM, NcPoly::word(w)); }, 3), iM);
}

TEST(Duality, ReconstructCase2Bracket)
{
    const DerivedDual dd = derive_dual_structure(builtin(2, Side::Group), {{"l", Rat(1)}}, 5);
    const NcPoly want = dual("i*M - i*l*M^2 + 2/3*i*l^2*M^3 - 1/3*i*l^3*M^4 + 2/15*i*l^4*M^5", dd.group, 5);
    EXPECT_EQ(dd.brackets[K][P], want);
}

TEST(Duality, Case9BracketAndGeneratingFunction)
{
    const std::map<std::string, Rat> values{{"l1", Rat(1)}, {"l2", Rat(2)}, {"l3", Rat(3)}};
    const Presentation g = scaled_group(9, values, 5, true);
    Duality d(g);
    const Scalar l1 = param(g, "l1");
    const Scalar half_i = Scalar::rational(1, 2) * Scalar::i();

    const GeneratingPolynomial gm = generating_pair(d, dual("M", g, 5), 3);
    EXPECT_EQ(gm.render(), "-i*mu");
    EXPECT_EQ(generating_pair(d, dual("H", g, 5), 3).render(), "i*nu");

    const GeneratingPolynomial comm = generating_pair(d, dual("K*M - M*K", g, 5), 5);
    ASSERT_EQ(comm.terms.size(), 1u);
    EXPECT_EQ(comm.terms.at({2, 0, 0, 0}), -half_i * l1);

    // Both orders carry the classical product <M,.><K,.> = -mu*kappa; only KM
    // has the deformation term.
    const GeneratingPolynomial mk = generating_pair(d, dual("M*K", g, 5), 5);
    const GeneratingPolynomial km = generating_pair(d, dual("K*M", g, 5), 5);
    ASSERT_EQ(mk.terms.size(), 1u);
    EXPECT_EQ(mk.terms.at({1, 0, 0, 1}), Scalar(-1));
    ASSERT_EQ(km.terms.size(), 2u);
    EXPECT_EQ(km.terms.at({2, 0, 0, 0}), -half_i * l1);

    const DerivedDual dd = derive_dual_structure(builtin(9, Side::Group), values, 5, true);
    EXPECT_EQ(dd.brackets[K][M], dual("1/2*i*l1*M^2", dd.group, 5));
}

TEST(Duality, DeriveCase1)
{
    const DerivedDual dd = derive_dual_structure(builtin(1, Side::Group), {{"l", Rat(2)}}, 4);
    const Presentation& g = dd.group;
    EXPECT_EQ(dd.coproduct[K], TensorPoly::embed(dual("K", g, 4), 0, 2) + TensorPoly::embed(dual("K", g, 4), 1, 2) -
                                   tensor(TensorPoly::from(dual("l*P", g, 4)), TensorPoly::from(dual("H", g, 4))));
    // P and H commute, so the PBW form H*P is the same element as P*H.
    EXPECT_EQ(dd.antipode[K], dual("-K - l*H*P", g, 4));
    EXPECT_EQ(dd.brackets[K][P], dual("i*M", g, 4));
    EXPECT_EQ(dd.brackets[K][H], dual("i*P", g, 4));
    for (const auto& c : dd.counit) {
        EXPECT_TRUE(c.is_zero());
    }
    EXPECT_TRUE(compare_dual(dd, builtin(1, Side::Dual), {{"l", Rat(2)}}).agree());
}

TEST(Duality, DeriveCase16)
{
    const DerivedDual dd = derive_dual_structure(builtin(16, Side::Group), {{"l", Rat(-3)}}, 4);
    EXPECT_EQ(dd.brackets[K][M], dual("1/2*i*l*M^2", dd.group, 4));
    EXPECT_EQ(dd.brackets[K][P], dual("i*M", dd.group, 4));
}

TEST(Duality, Case12SignAdjudication)
{
    const std::map<std::string, Rat> values{{"l1", Rat(1)}, {"l2", Rat(3)}};
    const DualVerification v = verify_dual_structure(builtin(12, Side::Group), builtin(12, Side::Dual), values, 4);
    std::vector<std::string> disagree;
    for (const auto& s : v.items) {
        if (!s.agree) {
            disagree.push_back(s.structure);
        }
    }
    EXPECT_EQ(disagree, std::vector<std::string>{"[K,P]"});
    const DerivedDual dd = derive_dual_structure(builtin(12, Side::Group), values, 4);
    EXPECT_EQ(dd.brackets[K][P].degree_at_most(1), dual("i*M", dd.group, 4));
}

TEST(Duality, TruncationCoherence)
{
    const std::map<std::string, Rat> values{{"l1", Rat(2)}, {"l2", Rat(-1)}};
    for (int id : {6, 11}) {
        const DerivedDual lo = derive_dual_structure(builtin(id, Side::Group), values, 3);
        const DerivedDual hi = derive_dual_structure(builtin(id, Side::Group), values, 4);
        const DerivedDual cut = truncate(hi, 3);
        EXPECT_TRUE(same_structure(cut, lo)) << "case " << id;
        EXPECT_TRUE(same_structure(hi, truncate(hi, 4)));
        EXPECT_TRUE(same_structure(truncate(hi, 2), truncate(lo, 2)));
    }
    EXPECT_THROW(truncate(derive_dual_structure(builtin(1, Side::Group), {{"l", Rat(1)}}, 2), 3), Error);
}

TEST(Duality, DualStarClassical)
{
    Duality d(scaled_group(1, {{"l", Rat(1)}}, 1));
    const PairingMatrix A = build_pairing_matrix(d, 1);
    const DualStar s = dual_star(d, A);
    EXPECT_EQ(s.pattern, (std::vector<std::string>{"M* = M", "H* = H", "P* = P", "K* = K"}));
}

TEST(Duality, DualStarCase9)
{
    const Presentation g = scaled_group(9, {{"l1", Rat(2)}, {"l2", Rat(1)}, {"l3", Rat(1)}}, 4, true);
    Duality d(g);
    const DualStar s = dual_star(d, build_pairing_matrix(d, 4));
    EXPECT_EQ(s.images[K], dual("K + i*l1*M", g, 4));
}

#pragma once

#include "qgal/hopf.hpp"

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qgal {

/// The dual alphabet M < H < P < K and its partner letters m, t, a, v.
const Alphabet& dual_alphabet();

/// <X, g> for dual generator X and group generator g, both by name:
/// <M,m> = -i, <H,t> = i, <P,a> = -i, <K,v> = -i, zero otherwise.
Scalar base_pairing(const std::string& dual, const std::string& group);

/// Delta^(k-1)(phi) as a k-slot tensor, slots normal-ordered.
TensorPoly iterated_coproduct(const Presentation& group, const NcPoly& phi, int k);

/// Pairing between dual words and a compiled group presentation. A dual
/// generator pairs with an ordered group monomial only when that monomial is
/// its partner letter; longer words go through the coproduct,
///   <X u, phi> = <u, (X @ id) D(phi)>,
/// memoized per (word, monomial).
class Duality {
public:
    explicit Duality(Presentation group);

    const Presentation& group() const noexcept { return group_; }

    Scalar pair(const Word& dual_word, const Word& group_monomial);
    Scalar pair(const NcPoly& x, const NcPoly& phi);

    /// Independent oracle: builds Delta^(k-1) of phi in the free tensor
    /// algebra, orders each slot once at the end, and sums products of base
    /// pairings.
    Scalar pair_slow(const Word& dual_word, const NcPoly& phi) const;

    /// Ordered group monomials of degree <= n, by degree then rank order.
    std::vector<Word> monomials(int n) const;

private:
    const NcPoly& left_action(int dual_letter, const Word& monomial);
    Scalar slot_pairing(const Word& dual_word, const TensorPoly& ordered) const;
    const TensorPoly& coproduct_of(const Word& monomial);

    Presentation group_;
    MorphismSpec delta_;
    std::vector<std::vector<Scalar>> base_; // [dual rank][group rank]
    std::map<Word, TensorPoly> coproducts_;
    std::map<std::pair<int, Word>, NcPoly> actions_;
    std::map<std::pair<Word, Word>, Scalar> pairs_;
    mutable std::map<int, std::vector<TensorPoly>> slow_images_;
    mutable std::map<std::pair<int, Word>, TensorPoly> slow_;
};

/// Ordered dual words M^a H^b P^c K^d of length <= n, by length.
std::vector<Word> dual_pbw_words(int n);

/// Polynomial in the formal variables (mu, nu, rho, kappa) attached to
/// (m, t, a, v).
struct GeneratingPolynomial {
    std::map<std::array<int, 4>, Scalar> terms;
    std::string render() const;
};

/// <x, e^{mu m} e^{nu t} ... > through total degree n, the exponentials in
/// the group presentation's rank order.
GeneratingPolynomial generating_pair(Duality& d, const NcPoly& x, int n);

/// <u, phi> for dual PBW words (rows) and ordered group monomials (columns)
/// of length/degree <= N, with its certificate: entries with
/// length(u) < degree(phi) vanish at parameter order zero (they need not
/// vanish outright when relations lower the degree), and each diagonal block
/// equals the classical block at order zero. Together these make the matrix
/// invertible modulo t.
struct PairingMatrix {
    int degree = 0;
    std::vector<Word> rows;
    std::vector<Word> cols;
    std::vector<std::vector<Scalar>> entries; // [row][col]
    std::vector<int> partner;                 // column index of the row's partner monomial
    std::size_t above_diagonal = 0;           // nonzero entries with length < degree
    std::string certificate;
};

/// Classical diagonal entry for the row word and its partner monomial:
/// (-i)^(a+c+d) i^b a! b! c! d!.
Scalar classical_diagonal_entry(const Word& dual_word);

PairingMatrix build_pairing_matrix(Duality& d, int N);

/// Confirms the classical diagonal formula by brute-force pairing on the
/// undeformed group (all parameters zero) through degree n. Derive mode
/// runs this once before anything else.
void confirm_classical_diagonal(int n);

/// The unique combination of dual PBW words of length <= n whose pairing
/// with every ordered monomial of degree <= n is ell(monomial). n <= A.degree.
NcPoly reconstruct(const PairingMatrix& A, const std::function<Scalar(const Word&)>& ell, int n);

/// Two-slot version: tensor element whose pairing with phi @ psi is
/// ell(phi, psi) for deg phi + deg psi <= n.
TensorPoly reconstruct2(const PairingMatrix& A, const std::function<Scalar(const Word&, const Word&)>& ell,
                        int n);

/// Dual structure obtained from a group presentation alone (Scaled mode,
/// T = N - 1).
struct DerivedDual {
    Presentation group;
    int degree = 0;
    std::string matrix_certificate;
    std::vector<std::vector<NcPoly>> brackets; // [x][y] = [X, Y] for x > y
    std::vector<TensorPoly> coproduct;
    std::vector<NcPoly> antipode;
    std::vector<Scalar> counit;

    /// The derived structure as a presentation over M, H, P, K, exact at
    /// this degree and order.
    Presentation presentation(int id) const;
    /// Derived images as a dual-side case file (parameter t).
    CaseDef to_case(int id) const;
};

/// Group case compiled at the instantiation with T = N - 1. With
/// `alternate_order`, the group basis puts v before a (the case's own
/// alternate order when it declares one).
DerivedDual derive_dual_structure(const CaseDef& group_case, const std::map<std::string, Rat>& assignment, int N,
                                  bool alternate_order = false);

/// The derivation cut back to degree n and order n - 1. Deriving at N + 1
/// and cutting back must reproduce the derivation at N.
DerivedDual truncate(const DerivedDual& d, int n);

/// Structure constants equal after normal ordering (both at the same
/// instantiation, degree and order).
bool same_structure(const DerivedDual& a, const DerivedDual& b);

struct StructureComparison {
    std::string structure; // "[K,P]", "D(K)", "S(K)", "e(K)"
    bool agree = true;
    std::string derived;
    std::string claimed;
    std::string difference;
};

struct DualVerification {
    std::string case_label;
    bool alternate_order = false;
    std::string instantiation;
    int degree = 0;
    int order = 0;
    std::vector<StructureComparison> items;
    bool agree() const;
};

/// Compares a derived structure with a claimed dual case compiled at the same
/// instantiation, coefficient by coefficient (length <= N, order <= T).
DualVerification compare_dual(const DerivedDual& derived, const CaseDef& claimed,
                              const std::map<std::string, Rat>& assignment);

DualVerification verify_dual_structure(const CaseDef& group_case, const CaseDef& claimed,
                                       const std::map<std::string, Rat>& assignment, int N,
                                       bool alternate_order = false);

/// Compares the parameter limit of a dual case with the undeformed
/// algebra: [K,H] = iP, [K,P] = +-iM, other brackets zero, primitive
/// coproducts, S = -id, zero counit. A minus sign on [K,P] is reported as a
/// note ("[K,P] sign flagged"), not a finding.
CheckReport check_classical_limit(const CaseDef& dual_case, const std::map<std::string, Rat>& ray);

/// X* for each dual generator from <X*, phi> = conj <X, S^-1(phi*)>.
struct DualStar {
    std::vector<NcPoly> images; // by dual rank
    std::vector<std::string> pattern; // "M* = M", "K* = -K", or "K* = <expr>"
};

DualStar dual_star(Duality& d, const PairingMatrix& A);

} // namespace qgal

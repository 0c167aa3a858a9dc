#pragma once

#include "qgal/poly.hpp"

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qgal {

/// Commutation rules xy -> yx + f_xy for every pair with rank(x) > rank(y)
/// (missing rules mean f_xy = 0). Normal forms rewrite the leftmost
/// out-of-order pair and are memoized per word.
class RewriteSystem {
public:
    struct Rule {
        int x = 0; // higher rank
        int y = 0;
        NcPoly correction;
    };

    /// Validates termination unless `validate` is false (tests only).
    RewriteSystem(Alphabet alpha, std::vector<Rule> rules, bool validate = true);

    RewriteSystem(const RewriteSystem& o);
    RewriteSystem& operator=(const RewriteSystem&) = delete;

    const Alphabet& alphabet() const noexcept { return alpha_; }
    /// f_xy for rank(x) > rank(y); zero otherwise.
    const NcPoly& correction(int x, int y) const;
    /// [x, y] as an element: f_xy, -f_yx, or 0.
    NcPoly bracket(int x, int y) const;
    const std::vector<Rule>& rules() const noexcept { return rules_; }

    /// Human-readable proof that rewriting terminates.
    const std::string& termination_certificate() const noexcept { return certificate_; }

    void set_step_budget(std::size_t steps) { budget_ = steps; }

    NcPoly normal_form(const Word& w) const;
    NcPoly normal_order(const NcPoly& p) const;
    TensorPoly normal_order(const TensorPoly& p) const;

    /// Same rules with every coefficient mapped (e.g. into Scaled mode).
    RewriteSystem map_coefficients(const std::function<Scalar(const Scalar&)>& f) const;

private:
    std::string validate_termination() const;
    NcPoly reduce(const Word& w, std::size_t& steps, std::vector<Word>& stack) const;

    Alphabet alpha_;
    std::vector<Rule> rules_;
    std::vector<NcPoly> table_; // index x * n + y
    std::string certificate_;
    std::size_t budget_ = 2'000'000;

    mutable std::mutex memo_mutex_;
    mutable std::unordered_map<Word, NcPoly> memo_;
};

/// Free product when `rws` is null, normal-ordered product otherwise. The
/// result's truncation is the smaller of the operands'; with relations it is
/// applied after normal ordering, so the result is exact below the cutoff
/// whenever the operands are.
NcPoly multiply(const NcPoly& p, const NcPoly& q, const RewriteSystem* rws);
TensorPoly tensor_multiply(const TensorPoly& p, const TensorPoly& q, const RewriteSystem* rws);
NcPoly commutator(const NcPoly& p, const NcPoly& q, const RewriteSystem* rws);
NcPoly power(const NcPoly& p, int e, const RewriteSystem* rws);

struct OverlapResult {
    Word triple; // x y z with rank(x) > rank(y) > rank(z)
    NcPoly left;  // reduce xy first
    NcPoly right; // reduce yz first
    NcPoly jacobi;
    bool ok = false;
};

struct OverlapReport {
    bool ok = true;
    std::vector<OverlapResult> triples;
    /// Index into `triples` of the first failure.
    std::optional<std::size_t> first_failure;
};

/// Diamond-lemma check: resolves every overlap xyz both ways and evaluates
/// the Jacobi sum of the corresponding brackets.
OverlapReport check_overlaps(const RewriteSystem& rws);

} // namespace qgal

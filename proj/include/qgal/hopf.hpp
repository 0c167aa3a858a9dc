#pragma once

#include "qgal/case.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qgal {

/// A structure map given by generator images and extended (anti)multiplicatively.
/// Images live in `slots` tensor factors of the same algebra; 0 slots means
/// scalars.
struct MorphismSpec {
    enum class Kind { Homomorphism, Antihomomorphism };

    std::string name;
    Kind kind = Kind::Homomorphism;
    bool antilinear = false;
    int slots = 1;
    std::vector<TensorPoly> images; // by rank
};

MorphismSpec coproduct_map(const Presentation& p);
MorphismSpec antipode_map(const Presentation& p);
MorphismSpec counit_map(const Presentation& p);
/// Requires p.has_star().
MorphismSpec star_map(const Presentation& p);

/// Extends `spec` to the words of `p` as written (no normal ordering of the
/// input), normal-ordering the result with `rws` when given.
TensorPoly apply_morphism(const MorphismSpec& spec, const NcPoly& p, const RewriteSystem* rws);

/// Applies `spec` inside one slot of `t`; that slot becomes spec.slots slots.
TensorPoly apply_on_slot(const MorphismSpec& spec, const TensorPoly& t, int slot, const RewriteSystem* rws);

/// spec applied in every slot of `t` (single-slot specs only). An antilinear
/// spec conjugates each coefficient once.
TensorPoly apply_on_all_slots(const MorphismSpec& spec, const TensorPoly& t, const RewriteSystem* rws);

/// Multiplies the slots of a tensor together: u1@u2@... -> u1*u2*...
NcPoly contract(const TensorPoly& t, const RewriteSystem* rws);

struct Finding {
    std::string subject;  // "D([K,P])", "generator K, left"
    std::string residual; // rendering of the nonzero difference
};

struct CheckReport {
    std::string case_label;
    std::string check;
    Scalar::Mode mode = Scalar::Mode::Multivariate;
    std::optional<int> degree;
    std::optional<int> order;
    std::string instantiation;
    bool ok = true;
    std::vector<Finding> findings;
    /// Diagnostics that do not affect `ok`.
    std::vector<std::string> notes;
};

CheckReport check_jacobi(const Presentation& p);
/// For each pair of generators: image of xy - yx - f_xy vanishes.
CheckReport check_well_defined(const MorphismSpec& spec, const Presentation& p);
CheckReport check_coassociativity(const Presentation& p);
CheckReport check_counit(const Presentation& p);
CheckReport check_antipode(const Presentation& p);
/// Involution, compatibility with the coproduct, and (as a note) whether
/// S(S(g*)*) = g holds.
CheckReport check_star(const Presentation& p);

/// Overlaps, well-definedness of every structure map, coassociativity,
/// counit, antipode and star.
std::vector<CheckReport> run_suite(const Presentation& p);

/// Generator images of S^-1, found by the iteration x <- x - S(S(x) - g),
/// which gains one order of t per step because S^2 = id classically. Exact
/// modulo t^(T+1) in Scaled mode; in other modes the iteration must close
/// within `max_steps` or NotInvertibleAtTruncation is raised.
MorphismSpec antipode_inverse(const Presentation& p, int max_steps = 8);

} // namespace qgal

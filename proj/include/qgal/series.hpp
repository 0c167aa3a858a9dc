#pragma once

#include "qgal/rewrite.hpp"

#include <optional>
#include <string_view>

namespace qgal {

enum class SeriesFn { Exp, Log1p, Inv1p, Cosh, Sinh };

std::optional<SeriesFn> series_fn_from_name(std::string_view name);
std::string_view name(SeriesFn f);

/// Taylor expansion f(x), x without constant term: exp, log(1+x), 1/(1+x),
/// cosh, sinh. The sum must be finite: either x carries a truncation or all
/// of its coefficients are Scaled with positive valuation.
NcPoly series_apply(SeriesFn f, const NcPoly& x, const RewriteSystem* rws);
TensorPoly series_apply(SeriesFn f, const TensorPoly& x, const RewriteSystem* rws);

/// Exact division of every coefficient by a parameter expression
/// (Multivariate only). A quotient that is not a polynomial in the
/// parameters where the input was one raises NotDivisible.
NcPoly divide_by_parameter(const NcPoly& p, const Scalar& divisor);
TensorPoly divide_by_parameter(const TensorPoly& p, const Scalar& divisor);

} // namespace qgal

#pragma once

#include <span>
#include <string>

#include "binassoc/pipeline.hpp"

namespace binassoc {

// Association diagram in DOT format. For each analysis, the predictors of the
// minimum-AIC model contribute solid edges into the response; predictors that
// appear only in models within `aic_margin` of the minimum contribute dashed
// edges. Mutual solid (or mutual dashed) edges between two analyses render
// once with both arrowheads. Node set = responses plus all predictors.
std::string emit_dot(std::span<const AggregateResult> analyses, double aic_margin = 2.0);

}  // namespace binassoc

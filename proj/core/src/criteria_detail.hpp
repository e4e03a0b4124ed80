#pragma once

#include <span>
#include <vector>

#include "gesturemap/criteria.hpp"

namespace gesturemap::detail {

// Scores without re-validating the assignment; callers guarantee it is total
// and injective.
double score_unchecked(std::span<const std::size_t> assignment, const Criterion& criterion,
                       const CriterionContext& context);

void check_assignment(std::span<const std::size_t> assignment, const CriterionContext& context);

// Weights of `active` in list order. Throws empty_criteria / invalid_value.
std::vector<double> resolve_weights(const WeightVector& weights, std::span<const Criterion> active);

}  // namespace gesturemap::detail

#pragma once
// Reference truth-discovery baselines: Voting over joint claim sets, and
// Sums / Average-Log hub-authority iterations with mutual exclusion.

#include "claims.hpp"

namespace smartmtd {

// Per object, the exact positive-claim set backed by the most sources; ties
// broken by the lexicographically smallest serialized set.
TruthAssignment voting(const ClaimTable& claims, const DerivedView& view);

// Hub/authority iteration. Value true-score sums claimer scores, false-score
// sums disclaimer scores; a source's score sums the scores of all its claims
// (true-scores for positives, false-scores for negatives). Scores are
// max-normalized each round. Stops when the max source-score change drops
// below tol or after iters rounds (no error on the cap). v is true iff its
// true-score strictly exceeds its false-score.
TruthAssignment sums(const ClaimTable& claims, const DerivedView& view, int iters = 100,
                     double tol = 1e-6);

// As sums, but a source's score is log(|O_s|) times the average of its
// claims' scores, so single-object sources carry no weight.
TruthAssignment avg_log(const ClaimTable& claims, const DerivedView& view, int iters = 100,
                        double tol = 1e-6);

} // namespace smartmtd

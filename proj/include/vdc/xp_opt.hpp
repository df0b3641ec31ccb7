#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vdc/rational.hpp"
#include "vdc/xp_core.hpp"

namespace vdc::opt {

enum class ObjectiveKind { MinKappaPlusLambda, MaxDivisorLevel, MaxSubconvexDelta };

// (2 - k - 3l) / (6(k+1)): the admissible gain over 2/3 in the divisor level.
Rat divisor_level(const xp::ExponentTriple& t);
// 1/2 - (k+l)/2: the gain over the convexity exponent 1/4.
Rat subconvex_delta(const xp::ExponentTriple& t);

Rat objective_value(ObjectiveKind kind, const Rat& kappa, const Rat& lambda);
bool objective_is_minimization(ObjectiveKind kind);

struct PrunedSample {
    std::string word;          // prefix whose subtree was cut
    Rat bound;                 // box-image objective bound at the cut
    Rat incumbent_at_prune;    // incumbent value when the cut happened
};

struct SearchReport {
    xp::ProcessWord best_word;
    Rat best_value;
    std::uint64_t nodes_expanded = 0;
    int depth_cap = 0;
    bool hit_time_cap = false;
    double seconds = 0;
    std::vector<PrunedSample> pruned_samples;  // reservoir, at most 64
};

// Branch-and-bound over BB-free words up to depth_cap. Pruning uses exact
// rational bounds of the objective over the image of the starting box
// [0,1/2] x [1/2,1] under the prefix map (corner evaluation is exact for
// these fractional-linear maps). States are deduped by the exact
// normalized matrix of the prefix map.
SearchReport optimize_word(ObjectiveKind obj, int depth_cap, double time_cap_seconds = 60.0,
                           std::uint64_t pruned_sample_seed = 1);

// Recompute the box-image bound of a prefix independently of the search.
Rat prefix_box_bound(ObjectiveKind obj, const std::string& prefix_letters);
// Same, one level deeper; used to audit pruned nodes.
std::vector<Rat> prefix_child_bounds(ObjectiveKind obj, const std::string& prefix_letters);

// ---- sieve-level linear program ----------------------------------------

enum class LpVariant { AsStated, Table2 };

struct LevelProblem {
    Rat theta;                       // L = X^theta, 0 < theta < 1
    xp::ExponentTriple pair;
    LpVariant variant = LpVariant::Table2;
    xp::PairFamily family = xp::PairFamily::Ak;
};

struct LevelResult {
    Rat gamma, alpha, beta;
    std::vector<std::string> binding;  // constraints tight at the optimum
};

// Maximize gamma = alpha + beta subject to
//   alpha >= 0, beta >= 0, alpha + beta + theta <= 3/2, alpha + theta <= 1,
//   (alpha + 2 beta)(kappa+1) + theta (lambda+3)/2 [+ alpha] <= 2,
//   family: (1-2k)(alpha+2beta) >= (l-1/2) theta  or  2(1-l)(alpha+2beta) >= k theta.
// Exact vertex enumeration; strict inequalities solved as non-strict
// (supremum convention). Empty result when infeasible.
std::optional<LevelResult> level_max_gamma(const LevelProblem& p);

// Largest theta for which the optimum of the LP without the family
// constraint still satisfies it; the optimum is linear in theta, so the
// threshold is an exact rational.
Rat validity_range(const xp::ExponentTriple& pair, LpVariant variant, xp::PairFamily family);

// Piecewise-maximal gamma over the pairs A, A^2, A^3 applied to the seed
// (Table2 variant), each respecting its validity range; theta in [1/2, 16/17).
Rat gamma_of_theta(const Rat& theta);

// 2 / gamma(theta).
Rat bt_constant(const Rat& theta);

// Balancing split q = q1 q2: q1 = q^{1/(k+1)} N^{(k-l)/(k+1)}.
std::pair<double, double> optimal_split(double q, double N, const xp::ExponentTriple& t);

// Bracket evaluators for the explicit A^kB / BA^kB estimates, with the
// epsilon power dropped and implied constant 1. q_factors = (q_1 .. q_J).
double bound_eval_AkB(const std::vector<double>& q_factors, double delta, double N,
                      double what_sup);
double bound_eval_BAkB(const std::vector<double>& q_factors, double delta, double N,
                       double what_sup);

}  // namespace vdc::opt

#ifndef WB_PROVIDERS_HPP
#define WB_PROVIDERS_HPP

#include "wb/funct.hpp"
#include "wb/reduce.hpp"

namespace wb::providers {

// ---------------------------------------------------------------------------
// Desk-scale providers. Each answers a non-computable existence claim on a
// restricted instance class (its tag); consumers post-validate every answer.
// ---------------------------------------------------------------------------

// Left-to-right sweep placing a ball at the first point the union does not
// reach yet. Total for positive psi bounded away from 0 on the sweep; throws
// OracleFailure past max_balls.
reduce::Cover greedy_cover(const reduce::PsiFunction& psi, std::size_t max_balls = 4096);

funct::Provider make_greedy_cover_provider(std::size_t max_balls = 4096);
funct::Provider make_single_ball_cover_provider();  // deliberately invalid
funct::Provider make_explicit_cover_provider(reduce::Cover cover);

// Modulus for exact-valued increasing nets that reach their limit on a
// dyadic index (the Heine-Borel phalanxes): returns the first dyadic
// refinement level whose value is 1.
funct::Provider make_dyadic_modulus_provider(int max_level = 10);
// Modulus by feedback sweep: a cover phalanx's value B(w)/2 names the
// leftmost uncovered endpoint, so repeatedly adjoining the point at 2*x_w
// reaches a covering index with no access to psi.
funct::Provider make_adaptive_modulus_provider(std::size_t max_steps = 4096);
funct::Provider make_empty_modulus_provider();  // deliberately invalid

// Net limit by dyadic refinement: refine until the value clears 3/4 and then
// stays put for `window` levels. Sound for the monotone cover phalanxes: any
// stabilized value is a genuine net value below the limit.
funct::Provider make_dyadic_net_limit_provider(int max_level = 10, int window = 3);
funct::Provider make_constant_net_limit_provider(Rat value);  // for refutation tests

// NFP realizers for piecewise-constant psi: a constant associate whose value
// clears the cover's exact Lebesgue slack (uniform), or a depth-1 split by
// the first Cantor bit (split). `constant` takes the associate value
// explicitly; `broken` violates the stability clause on purpose.
funct::Provider make_uniform_nfp_provider();
funct::Provider make_split_nfp_provider();
funct::Provider make_constant_nfp_provider(Nat value);
funct::Provider make_broken_nfp_provider();

// Maximizer by grid search with Lipschitz margins; linear-tagged instances
// are answered by slope sign. The constant maximizer ignores its input.
reduce::Maximizer make_grid_argmax_maximizer();
reduce::Maximizer make_constant_maximizer(Rat value);

// Zero-existence deciders: the certified one wraps exists2, the dishonest
// one always denies a zero.
reduce::Exists2Decider make_certified_exists2_decider();
reduce::Exists2Decider make_always_one_decider();

}  // namespace wb::providers

#endif

#pragma once

#include <random>

#include "groundstate/manifold.hpp"

namespace groundstate {

/// Sum of 1-3 Gaussian bumps a*exp(-r^2/w^2) with log-uniform amplitudes in
/// [1e-2, 10] and widths in [0.5, 5].
RadialFunction random_bumps(const GridPtr& grid, std::mt19937_64& rng);

/// Rejection sampling of random_bumps until q(u) < -0.1 * V_inf/2 |u|_2^2
/// (and q < 0), so the sample sits strictly inside Lambda. Falls back to
/// doubling the amplitude after `max_tries` rejections.
RadialFunction random_in_lambda(const FunctionalContext& ctx, std::mt19937_64& rng, int max_tries = 10000);

}  // namespace groundstate

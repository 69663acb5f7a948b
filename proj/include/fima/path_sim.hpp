#pragma once

#include "fima/frac_calc.hpp"
#include "fima/grid.hpp"
#include "fima/quadrature.hpp"

namespace fima {

// One SaS increment per grid cell; deterministic given the stream.
NoisePath simulate_noise(const GridSpec& grid, const StableLaw& law, RandomStream stream);

// Sum consecutive groups of `factor` fine increments into one coarse cell.
// Used by refinement studies: the coarse path is the exact aggregation of the
// fine one, so discretization levels share a single underlying realization.
NoisePath aggregate_noise(const NoisePath& fine, int factor);

// Left-point Riemann sum  sum_i f(x_i) dL_i  over the noise cells.
double stable_integral(const Fn& f, const NoisePath& noise);

// Discretized LFSM at an arbitrary time:
//   M_d(t) = (1/Gamma(d+1)) sum_i [ (t-x_i)_+^d - (-x_i)_+^d ] dL_i.
double lfsm_value(double t, const FracOrder& d, const NoisePath& noise);

// LFSM sampled at every grid output time; M_d(0) = 0 exactly.
SamplePath simulate_lfsm(const GridSpec& grid, const FracOrder& d, const NoisePath& noise);

// Stochastic integral of g with respect to the LFSM via the simple-function
// construction: g is frozen per cell at the right endpoint (matching the
// (a, b] convention of simple functions, so aligned step functions are
// reproduced exactly), and the integral of the frozen function is the
// Riemann-Stieltjes sum against the simulated LFSM,
//   sum_j g(x_{j+1}) [ M_d(x_{j+1}) - M_d(x_j) ],
// computed equivalently through the exact discrete fractional filter
// applied before stable_integral. Converges to int g dM_d as dt -> 0.
double integrate_wrt_lfsm(const Fn& g, const FracOrder& d, const NoisePath& noise);

// The exact fractional filter behind integrate_wrt_lfsm: given samples of g
// at cell left points, returns (I_-^d g_frozen) at cell left points.
std::vector<double> frac_filter_minus(const std::vector<double>& g_at_cells, double d, double dt);

// Certified bound on the alpha-norm contribution of the LFSM kernel for
// M_d(horizon) from cells left of -trunc_T (scale units):
//   (1/Gamma(d+1)) d t (alpha(1-d)-1)^{-1/alpha} T^{(alpha(d-1)+1)/alpha}.
double truncation_bound(const FracOrder& d, const StableLaw& law, double trunc_T, double horizon);

}  // namespace fima

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fima/rng.hpp"

namespace fima {

// Symmetric alpha-stable law S_alpha(scale, 0, 0) with 1 < alpha <= 2.
// alpha = 2 is admitted only as the Gaussian sanity boundary.
struct StableLaw {
    double alpha;
    double scale;

    StableLaw(double alpha_, double scale_);
};

// E|L_alpha(1)|^p for a unit-scale SaS variable; finite iff p < alpha.
// Closed form: 2^p Gamma((1+p)/2) Gamma(1-p/alpha) / (Gamma(1-p/2) sqrt(pi)).
double sas_abs_moment_constant(double alpha, double p);

// Moment order p in [1, alpha) together with the cached constant
// lambda(alpha, p) = E|L_alpha(1)|^p.
struct MomentSpec {
    double p;
    double alpha;
    double lambda;

    static MomentSpec for_law(const StableLaw& law, double p);
};

// E exp(i theta X) = exp(-scale^alpha |theta|^alpha); real by symmetry.
double characteristic_function(const StableLaw& law, double theta);

// One SaS draw via the Chambers-Mallows-Stuck transform (symmetric branch).
double sample_sas_one(const StableLaw& law, CounterRng& rng);

// n i.i.d. draws, fully determined by the stream.
std::vector<double> sample_sas(const StableLaw& law, std::size_t n, RandomStream stream);

// lambda(alpha,p) * scale^p; rejects p >= alpha.
double abs_moment(const StableLaw& law, const MomentSpec& spec);

// Arithmetic mean of exp(i theta x) over the sample; modulus <= 1.
std::complex<double> empirical_cf(std::span<const double> samples, double theta);

}  // namespace fima

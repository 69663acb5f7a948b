#include "fima/stable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fima {

StableLaw::StableLaw(double alpha_, double scale_) : alpha(alpha_), scale(scale_) {
    if (!(alpha > 1.0) || !(alpha <= 2.0))
        throw std::invalid_argument("StableLaw: alpha must lie in (1, 2]");
    if (!(scale > 0.0))
        throw std::invalid_argument("StableLaw: scale must be positive");
}

double sas_abs_moment_constant(double alpha, double p) {
    if (!(p > 0.0) || !(p < alpha))
        throw std::invalid_argument("sas_abs_moment_constant: requires 0 < p < alpha");
    return std::pow(2.0, p) * std::tgamma(0.5 * (1.0 + p)) * std::tgamma(1.0 - p / alpha) /
           (std::tgamma(1.0 - 0.5 * p) * std::sqrt(std::numbers::pi));
}

MomentSpec MomentSpec::for_law(const StableLaw& law, double p) {
    if (!(p >= 1.0) || !(p < law.alpha))
        throw std::invalid_argument("MomentSpec: requires 1 <= p < alpha");
    return MomentSpec{p, law.alpha, sas_abs_moment_constant(law.alpha, p)};
}

double characteristic_function(const StableLaw& law, double theta) {
    return std::exp(-std::pow(law.scale, law.alpha) * std::pow(std::abs(theta), law.alpha));
}

double sample_sas_one(const StableLaw& law, CounterRng& rng) {
    const double a = law.alpha;
    const double u = std::numbers::pi * (rng.uniform01() - 0.5);  // (-pi/2, pi/2)
    const double e = rng.exponential();
    const double x = std::sin(a * u) / std::pow(std::cos(u), 1.0 / a) *
                     std::pow(std::cos((1.0 - a) * u) / e, (1.0 - a) / a);
    return law.scale * x;
}

std::vector<double> sample_sas(const StableLaw& law, std::size_t n, RandomStream stream) {
    if (n == 0) throw std::invalid_argument("sample_sas: n must be >= 1");
    CounterRng rng(stream);
    std::vector<double> out(n);
    for (auto& v : out) v = sample_sas_one(law, rng);
    return out;
}

double abs_moment(const StableLaw& law, const MomentSpec& spec) {
    if (!(spec.p < law.alpha))
        throw std::invalid_argument("abs_moment: moment order p must satisfy p < alpha");
    return spec.lambda * std::pow(law.scale, spec.p);
}

std::complex<double> empirical_cf(std::span<const double> samples, double theta) {
    if (samples.empty()) throw std::invalid_argument("empirical_cf: empty sample");
    // Pairwise reduction keeps the sum deterministic and well conditioned.
    std::vector<std::complex<double>> acc(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double a = theta * samples[i];
        acc[i] = {std::cos(a), std::sin(a)};
    }
    std::size_t n = acc.size();
    while (n > 1) {
        const std::size_t half = n / 2;
        for (std::size_t i = 0; i < half; ++i) acc[i] += acc[n - 1 - i];
        n = (n + 1) / 2;
    }
    return acc[0] / static_cast<double>(samples.size());
}

}  // namespace fima

#include "fima/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace fima {

Kernel::Kernel(std::function<double(double)> eval, double decay_C, double decay_c,
               std::string description, double support_hi, std::vector<double> kinks)
    : eval_(std::move(eval)),
      decay_C_(decay_C),
      decay_c_(decay_c),
      description_(std::move(description)),
      support_hi_(support_hi),
      kinks_(std::move(kinks)),
      zero_(false) {
    if (!(decay_C_ > 0.0) || !(decay_c_ > 0.0))
        throw std::invalid_argument("Kernel: decay certificate constants must be positive");

    // Spot-verify (C2) on a dense grid of the certified window.
    const double T = certified_cutoff(1e-14);
    const double hi = std::isfinite(support_hi_) ? std::min(support_hi_, T) : T;
    const int n = 512;
    for (int i = 0; i <= n; ++i) {
        const double t = hi * (static_cast<double>(i) / n);
        const double bound = decay_C_ * std::exp(-decay_c_ * t) * (1.0 + 1e-12);
        if (std::abs(eval_(t)) > bound)
            throw std::invalid_argument("Kernel '" + description_ +
                                        "': decay certificate (C2) violated at t=" +
                                        std::to_string(t));
    }
}

double Kernel::certified_cutoff(double abs_tol) const {
    if (zero_) return 0.0;
    double T = std::log(decay_C_ / abs_tol) / decay_c_;
    T = std::max(T, 1.0);
    if (std::isfinite(support_hi_)) T = std::min(T, support_hi_);
    return T;
}

namespace kernels {

Kernel exponential(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("exponential kernel: c must be > 0");
    return Kernel([c](double u) { return std::exp(-c * u); }, 1.0, c,
                  "exp(" + std::to_string(c) + ")");
}

Kernel gamma_type(double k, double c) {
    if (!(k >= 1.0)) throw std::invalid_argument("gamma kernel: shape k must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("gamma kernel: c must be > 0");
    // |u^{k-1} e^{-cu}| <= C e^{-(c/2)u} with C = sup u^{k-1} e^{-(c/2)u}
    const double C = (k == 1.0) ? 1.0 : std::pow(2.0 * (k - 1.0) / (c * std::exp(1.0)), k - 1.0);
    return Kernel([k, c](double u) { return std::pow(u, k - 1.0) * std::exp(-c * u); },
                  C * (1.0 + 1e-12), 0.5 * c,
                  "gamma(" + std::to_string(k) + "," + std::to_string(c) + ")");
}

Kernel truncated_exponential(double c, double cutoff) {
    if (!(c > 0.0) || !(cutoff > 0.0))
        throw std::invalid_argument("truncated_exponential: c and cutoff must be > 0");
    return Kernel([c, cutoff](double u) { return u <= cutoff ? std::exp(-c * u) : 0.0; }, 1.0, c,
                  "truncexp(" + std::to_string(c) + "," + std::to_string(cutoff) + ")", cutoff,
                  {cutoff});
}

Kernel indicator(double a, double b) {
    if (!(a >= 0.0) || !(b > a))
        throw std::invalid_argument("indicator kernel: requires 0 <= a < b");
    return Kernel([a, b](double u) { return (u > a && u <= b) ? 1.0 : 0.0; }, std::exp(b), 1.0,
                  "ind(" + std::to_string(a) + "," + std::to_string(b) + "]", b, {a, b});
}

Kernel zero() { return Kernel(); }

}  // namespace kernels

}  // namespace fima

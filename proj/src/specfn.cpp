#include "specfn.hpp"

#include <cmath>

namespace isoc::specfn {

double gamma(double x) {
    require(x > 0.0, "gamma: argument must be positive");
    require(x <= 171.62, "gamma: argument overflows double range");
    return std::tgamma(x);
}

double log_gamma(double x) {
    require(x > 0.0, "log_gamma: argument must be positive");
    return std::lgamma(x);
}

double log_beta(double a, double b) {
    require(a > 0.0 && b > 0.0, "beta: arguments must be positive");
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta(double a, double b) {
    return std::exp(log_beta(a, b));
}

double unit_ball_volume(int N) {
    require(N >= 1, "unit_ball_volume: N must be >= 1");
    const double n = static_cast<double>(N);
    return std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0));
}

double k_qp(double q, double p) {
    require(p > 1.0, "k_qp: requires p > 1");
    require(q >= p, "k_qp: requires q >= p");
    if (q - p < 1e-8) {
        return p / std::pow(p - 1.0, (p - 1.0) / p);
    }
    const double r = q / p - 1.0;
    const double log_k = (1.0 / p - 1.0 / q) * (std::log(r) - log_beta(1.0 / r, (q - 1.0) / r));
    return std::exp(log_k);
}

double k_pstar_p(int N, double p) {
    DimensionParams dp(N, p);
    const double n = static_cast<double>(N);
    const double lg = std::lgamma(n + 1.0) - std::lgamma(n / p) - std::lgamma(1.0 + n - n / p);
    return std::exp((lg - std::log(n)) / n);
}

double sobolev_best_constant(int N, double p) {
    DimensionParams dp(N, p);
    const double n = static_cast<double>(N);
    const double omega = unit_ball_volume(N);
    return std::pow(omega, -1.0 / n) / n
         * std::pow(n * (p - 1.0) / (n - p), (p - 1.0) / p)
         * std::exp((std::lgamma(n + 1.0) - std::log(n) - std::lgamma(n / p)
                     - std::lgamma(1.0 + n - n / p)) / n);
}

}  // namespace isoc::specfn

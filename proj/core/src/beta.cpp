#include "torbit/beta.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace torbit {

const char* to_string(BetaMethod m) {
    switch (m) {
        case BetaMethod::bisection: return "bisection";
        case BetaMethod::lambert: return "lambert";
        case BetaMethod::pinned: return "pinned";
    }
    return "?";
}

double f_k(int k, double t) {
    if (k < 1) throw std::domain_error("f_k: k must be >= 1");
    if (!(t > 0.0) || !(t < static_cast<double>(k)))
        throw std::domain_error("f_k: t outside (0, k)");
    return t * (1.0 - std::log(t) + std::log(static_cast<double>(k))) - (k - 1.0);
}

BetaSolution solve_beta(int k) {
    if (k < 1) throw std::domain_error("solve_beta: k must be >= 1");
    if (k == 1) return BetaSolution{1, 0.0, 0.0, BetaMethod::pinned};

    // f_k is strictly increasing on (0, k); f_k(0+) = -(k-1) < 0 and
    // f_k(k-1) = (k-1)*(log k - log(k-1)) > 0, so the bracket always works.
    double lo = 1e-15, hi = k - 1.0;
    while (hi - lo > 1e-13) {
        double mid = 0.5 * (lo + hi);
        if (f_k(k, mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    double root = 0.5 * (lo + hi);
    return BetaSolution{k, root, std::fabs(f_k(k, root)), BetaMethod::bisection};
}

double lambert_w_lower(double x) {
    if (!(x > -0.36787944117144233) || !(x < 0.0))
        throw std::domain_error("lambert_w_lower: x outside (-1/e, 0)");
    double w = std::log(-x) - std::log(-std::log(-x));
    for (int it = 0; it < 200; ++it) {
        double ew = std::exp(w);
        double f = w * ew - x;
        // Halley step: f' = e^w (w+1), f'' = e^w (w+2)
        double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * (w + 1.0));
        double dw = f / denom;
        w -= dw;
        if (std::fabs(dw) <= 1e-14 * (1.0 + std::fabs(w))) return w;
    }
    throw std::runtime_error("lambert_w_lower: Halley iteration did not converge");
}

double beta_lambert(int k) {
    if (k < 2) throw std::domain_error("beta_lambert: k must be >= 2");
    double x = (1.0 - k) / (std::exp(1.0) * k);  // in (-1/e, 0) for k >= 2
    double w = lambert_w_lower(x);
    return (1.0 - k) / w;
}

}  // namespace torbit

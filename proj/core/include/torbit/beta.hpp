#pragma once
// Saturation constants beta_k: the unique root in (0, k-1] of
//   f_k(t) = t*(1 - log t + log k) - (k - 1),
// with beta_1 = 0 pinned. Closed form beta_k = (1-k)/W((1-k)/(e*k)) on the
// real Lambert branch with W <= -1.

#include <string>

namespace torbit {

enum class BetaMethod { bisection, lambert, pinned };

const char* to_string(BetaMethod m);

struct BetaSolution {
    int k = 0;
    double beta = 0.0;
    double residual = 0.0;  // |f_k(beta)|, 0 for the pinned k=1 case
    BetaMethod method = BetaMethod::bisection;
};

// f_k on its monotonicity interval 0 < t < k; throws std::domain_error outside.
double f_k(int k, double t);

// Bisection on [1e-15, k-1], absolute tolerance 1e-13; k=1 pinned to 0.
BetaSolution solve_beta(int k);

// Lambert closed form, k >= 2. Agrees with solve_beta to 1e-10.
double beta_lambert(int k);

// Lower real branch W_{-1} on (-1/e, 0): Halley iteration seeded at
// w0 = log(-x) - log(-log(-x)), tolerance 1e-14. Exposed for direct testing.
double lambert_w_lower(double x);

}  // namespace torbit

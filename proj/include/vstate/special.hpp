#pragma once

namespace vstate {

// Lanczos approximation (g = 7, 9 terms), reflection for x < 1/2.
// Throws DomainError at the poles x = 0, -1, -2, ...
double gamma_fn(double x);

// Normalizing constant of the gSQG Biot-Savart kernel,
// (1/2π) Γ(α/2) / (2^{1-α} Γ(1-α/2)), for 0 < α < 2.
// For α = 0 returns 1/(4π), the coefficient that multiplies the log kernel.
double c_alpha(double alpha);

}  // namespace vstate

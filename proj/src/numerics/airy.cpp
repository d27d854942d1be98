#include "qrev/numerics/airy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qrev/errors.hpp"

namespace qrev::numerics {

namespace {

// Ai(0) and -Ai'(0).
constexpr long double kC1 = 0.355028053887817239260063186004183176L;
constexpr long double kC2 = 0.258819403792806798405183560189203963L;

constexpr double kNewtonTolerance = 1e-12;
constexpr int kNewtonMaxIterations = 50;

}  // namespace

namespace detail {

// Ai = c1 f - c2 g with f, g the two Maclaurin solutions of y'' = x y.
// Summed in extended precision: on [-8, 6] the largest terms reach ~e^15, so double
// would lose too many digits to cancellation.
AiryValue airy_maclaurin(double xd) {
  const long double x = xd;
  const long double x3 = x * x * x;

  long double f_term = 1.0L, f = 1.0L;
  long double g_term = x, g = x;
  long double fp_term = x * x / 2.0L, fp = fp_term;
  long double gp_term = 1.0L, gp = 1.0L;

  for (int k = 1; k < 200; ++k) {
    const long double k3 = 3.0L * k;
    f_term *= x3 / ((k3 - 1.0L) * k3);
    g_term *= x3 / (k3 * (k3 + 1.0L));
    gp_term *= x3 / (k3 * (k3 - 2.0L));
    if (k >= 2) fp_term *= x3 / ((k3 - 1.0L) * (k3 - 3.0L));
    f += f_term;
    g += g_term;
    gp += gp_term;
    if (k >= 2) fp += fp_term;
    const long double biggest =
        std::fmax(std::fmax(std::fabs(f_term), std::fabs(g_term)),
                  std::fmax(std::fabs(fp_term), std::fabs(gp_term)));
    if (k > 3 && biggest < 1e-24L) break;
  }
  return {static_cast<double>(kC1 * f - kC2 * g), static_cast<double>(kC1 * fp - kC2 * gp)};
}

// DLMF 9.7.5-9.7.10, truncated at the smallest term.
AiryValue airy_asymptotic(double x) {
  const double z = std::abs(x);
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const double sqrt_pi = std::sqrt(std::numbers::pi);

  // u_k / zeta^k and v_k / zeta^k with alternating signs folded in later.
  double u_term = 1.0, v_term = 1.0;
  double last_mag = 2.0;
  if (x > 0.0) {
    double su = 1.0, sv = 1.0;
    for (int k = 1; k < 100; ++k) {
      const double kk = k;
      const double uk_ratio =
          (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216 * kk) / zeta;
      const double next_u = u_term * uk_ratio;
      const double next_v = -next_u * (6 * kk + 1) / (6 * kk - 1);
      const double mag = std::abs(next_u) + std::abs(next_v);
      if (mag >= last_mag) break;
      last_mag = mag;
      u_term = next_u;
      v_term = next_v;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      su += sign * u_term;
      sv += sign * v_term;
      if (mag < 1e-17) break;
    }
    const double decay = std::exp(-zeta);
    const double root4 = std::sqrt(std::sqrt(z));
    return {decay / (2.0 * sqrt_pi * root4) * su, -root4 * decay / (2.0 * sqrt_pi) * sv};
  }

  // Oscillatory side: even and odd partial sums enter with cos/sin of (zeta - pi/4).
  double u_even = 1.0, u_odd = 0.0, v_even = 1.0, v_odd = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double kk = k;
    const double uk_ratio =
        (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216 * kk) / zeta;
    const double next_u = u_term * uk_ratio;
    const double next_v = -next_u * (6 * kk + 1) / (6 * kk - 1);
    const double mag = std::abs(next_u) + std::abs(next_v);
    if (mag >= last_mag) break;
    last_mag = mag;
    u_term = next_u;
    v_term = next_v;
    // (-1)^j on the j-th term of each of the even/odd subsequences
    const int j = k / 2;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      u_even += sign * u_term;
      v_even += sign * v_term;
    } else {
      u_odd += sign * u_term;
      v_odd += sign * v_term;
    }
    if (mag < 1e-17) break;
  }
  const double theta = zeta - std::numbers::pi / 4.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double root4 = std::sqrt(std::sqrt(z));
  return {(c * u_even + s * u_odd) / (sqrt_pi * root4),
          root4 / sqrt_pi * (s * v_even - c * v_odd)};
}

}  // namespace detail

AiryValue airy(double x) {
  if (!(x >= kAiryMinArgument && x <= kAiryMaxArgument)) {
    throw DomainError("airy: argument " + std::to_string(x) + " outside [-600, 200]");
  }
  if (x > detail::kSeriesLimitPositive || x < detail::kSeriesLimitNegative) {
    return detail::airy_asymptotic(x);
  }
  return detail::airy_maclaurin(x);
}

double airy_ai(double x) { return airy(x).ai; }
double airy_ai_prime(double x) { return airy(x).ai_prime; }

double airy_zero_seed(std::size_t n) {
  const double t = 3.0 * std::numbers::pi * (4.0 * static_cast<double>(n) - 1.0) / 8.0;
  return std::cbrt(t * t);
}

AiryTable AiryTable::compute(std::size_t n_max) {
  if (n_max < 1) throw ContractError("airy_zeros: n_max must be >= 1");
  AiryTable table;
  table.zeros_.reserve(n_max);
  table.derivatives_.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    double z = airy_zero_seed(n);
    AiryValue v = airy(-z);
    bool converged = false;
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
      // d/dz Ai(-z) = -Ai'(-z)
      const double step = v.ai / v.ai_prime;
      z += step;
      v = airy(-z);
      if (std::abs(step) <= kNewtonTolerance && std::abs(v.ai) <= 1e-10) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw ConvergenceError("airy_zeros: Newton iteration did not converge for n = " +
                             std::to_string(n));
    }
    table.zeros_.push_back(z);
    table.derivatives_.push_back(v.ai_prime);
  }
  return table;
}

double AiryTable::normalization(std::size_t n) const {
  return 1.0 / std::abs(derivative_at_zero(n));
}

AiryTable airy_zeros(std::size_t n_max) { return AiryTable::compute(n_max); }

}  // namespace qrev::numerics

#pragma once

#include <limits>
#include <string>

#include "qrev/state.hpp"

namespace qrev {

/// Renyi order alpha in (0, inf]. alpha = 1 is the Shannon entropy, alpha = inf the
/// min-entropy -ln max f.
class RenyiOrder {
 public:
  /// Throws ContractError unless alpha > 0 (infinity allowed).
  explicit RenyiOrder(double alpha);
  static RenyiOrder infinity() { return RenyiOrder(std::numeric_limits<double>::infinity()); }
  static RenyiOrder shannon() { return RenyiOrder(1.0); }

  double value() const noexcept { return alpha_; }
  bool is_shannon() const noexcept { return alpha_ == 1.0; }
  bool is_infinite() const noexcept { return alpha_ == std::numeric_limits<double>::infinity(); }
  /// 1/alpha with 1/inf = 0.
  double reciprocal() const noexcept { return is_infinite() ? 0.0 : 1.0 / alpha_; }

  /// Short decimal rendering ("0.666667", "2", "inf") used in column names.
  std::string label() const;

  friend bool operator==(RenyiOrder a, RenyiOrder b) noexcept { return a.alpha_ == b.alpha_; }

 private:
  double alpha_;
};

/// Orders (alpha, beta) with 1/alpha + 1/beta = 2, the condition of the entropic
/// uncertainty relation.
class ConjugatePair {
 public:
  /// Throws ContractError if the orders are not conjugate within 1e-12.
  ConjugatePair(RenyiOrder alpha, RenyiOrder beta);
  /// Partner beta = alpha / (2 alpha - 1) of a given alpha >= 1/2.
  static ConjugatePair from_position_order(RenyiOrder alpha);

  RenyiOrder position_order() const noexcept { return alpha_; }
  RenyiOrder momentum_order() const noexcept { return beta_; }
  std::string label() const;  // "<alpha>_<beta>"

  friend bool operator==(const ConjugatePair&, const ConjugatePair&) = default;

 private:
  RenyiOrder alpha_;
  RenyiOrder beta_;
};

/// Renyi entropy (1/(1-alpha)) ln \int d^alpha, with the Shannon and max limits as explicit
/// branches. Throws NumericError when \int d^alpha underflows to zero.
double renyi(const Density& d, RenyiOrder order);

/// Right-hand side of the Renyi uncertainty relation,
///   -ln(alpha/pi)/(2(1-alpha)) - ln(beta/pi)/(2(1-beta)) + ln(hbar),
/// evaluated through its limits at alpha or beta equal to 1 or infinity.
double renyi_bound(const ConjugatePair& pair, double hbar = 1.0);

/// renyi(position, alpha) + renyi(momentum, beta).
double entropy_sum(const Density& position, const Density& momentum, const ConjugatePair& pair);

namespace detail {
/// Largest density value, refined by a three-point quadratic fit of ln d about the largest
/// sample. Exact for Gaussians and never below the sampled maximum.
double refined_maximum(const Density& d);
}  // namespace detail

}  // namespace qrev

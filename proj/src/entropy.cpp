#include "qrev/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "qrev/errors.hpp"

namespace qrev {

RenyiOrder::RenyiOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0)) {
    throw ContractError("RenyiOrder: alpha must be positive, got " + std::to_string(alpha));
  }
}

std::string RenyiOrder::label() const {
  if (is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha_);
  return buf;
}

ConjugatePair::ConjugatePair(RenyiOrder alpha, RenyiOrder beta) : alpha_(alpha), beta_(beta) {
  const double sum = alpha.reciprocal() + beta.reciprocal();
  if (std::abs(sum - 2.0) > 1e-12) {
    throw ContractError("ConjugatePair: 1/alpha + 1/beta = " + std::to_string(sum) +
                        ", expected 2 (alpha=" + alpha.label() + ", beta=" + beta.label() + ")");
  }
}

ConjugatePair ConjugatePair::from_position_order(RenyiOrder alpha) {
  const double a = alpha.value();
  if (alpha.is_infinite()) return ConjugatePair(alpha, RenyiOrder(0.5));
  if (a == 0.5) return ConjugatePair(alpha, RenyiOrder::infinity());
  if (a < 0.5) throw ContractError("ConjugatePair: alpha < 1/2 has no conjugate partner");
  return ConjugatePair(alpha, RenyiOrder(a / (2.0 * a - 1.0)));
}

std::string ConjugatePair::label() const { return alpha_.label() + "_" + beta_.label(); }

namespace detail {

double refined_maximum(const Density& d) {
  const auto v = d.values();
  const auto it = std::max_element(v.begin(), v.end());
  const double peak = *it;
  const std::size_t i = static_cast<std::size_t>(it - v.begin());
  if (i == 0 || i + 1 == v.size()) return peak;
  const double lo = v[i - 1], hi = v[i + 1];
  if (!(lo > 0.0 && hi > 0.0 && peak > 0.0)) return peak;
  // parabola through (-1, ln lo), (0, ln peak), (1, ln hi)
  const double a = std::log(lo), b = std::log(peak), c = std::log(hi);
  const double curvature = a - 2.0 * b + c;
  if (!(curvature < 0.0)) return peak;
  const double offset = 0.5 * (a - c) / curvature;
  const double top = b - 0.25 * (a - c) * offset;
  return std::max(peak, std::exp(top));
}

}  // namespace detail

double renyi(const Density& d, RenyiOrder order) {
  const auto v = d.values();
  const auto& g = d.grid();
  const std::size_t n = v.size();
  auto weight = [n](std::size_t i) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; };

  if (order.is_infinite()) {
    const double top = detail::refined_maximum(d);
    if (!(top > 0.0)) throw NumericError("renyi: density is identically zero");
    return -std::log(top);
  }

  if (order.is_shannon()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] > 0.0) acc -= weight(i) * v[i] * std::log(v[i]);
    }
    return acc * g.step();
  }

  const double alpha = order.value();
  double acc = 0.0;
  if (alpha == 2.0) {
    for (std::size_t i = 0; i < n; ++i) acc += weight(i) * v[i] * v[i];
  } else if (alpha == 0.5) {
    for (std::size_t i = 0; i < n; ++i) acc += weight(i) * std::sqrt(v[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] > 0.0) acc += weight(i) * std::pow(v[i], alpha);
    }
  }
  acc *= g.step();
  if (!(acc > 0.0) || !std::isfinite(acc)) {
    throw NumericError("renyi: integral of density^" + order.label() +
                       " is not a positive finite number");
  }
  return std::log(acc) / (1.0 - alpha);
}

namespace {

// -ln(a)/(2(1-a)) per order; the ln(pi) parts of both orders always add to ln(pi).
double bound_term(RenyiOrder order) {
  if (order.is_infinite()) return 0.0;
  if (order.is_shannon()) return 0.5;
  const double a = order.value();
  return -std::log(a) / (2.0 * (1.0 - a));
}

}  // namespace

double renyi_bound(const ConjugatePair& pair, double hbar) {
  return std::log(std::numbers::pi) + bound_term(pair.position_order()) +
         bound_term(pair.momentum_order()) + std::log(hbar);
}

double entropy_sum(const Density& position, const Density& momentum, const ConjugatePair& pair) {
  return renyi(position, pair.position_order()) + renyi(momentum, pair.momentum_order());
}

}  // namespace qrev

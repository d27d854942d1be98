#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "qrev/entropy.hpp"
#include "qrev/errors.hpp"
#include "qrev/numerics/fourier.hpp"
#include "qrev/state.hpp"

using namespace qrev;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Bump {
  double x0, p0, sigma;
  Complex weight;
};

WaveFunction superposition(const UniformGrid& g, const std::vector<Bump>& bumps) {
  std::vector<Complex> a(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) {
    const double x = g.point(i);
    for (const auto& b : bumps) {
      a[i] += b.weight * std::exp(Complex(-(x - b.x0) * (x - b.x0) / (2 * b.sigma * b.sigma), b.p0 * x));
    }
  }
  return WaveFunction(g, std::move(a), Representation::position).normalized();
}

WaveFunction gaussian(const UniformGrid& g, double x0, double p0, double sigma) {
  return superposition(g, {{x0, p0, sigma, 1.0}});
}

// Renyi entropy of a normal density with standard deviation s.
double normal_renyi(double s, double alpha) {
  const double base = std::log(std::sqrt(2 * kPi) * s);
  if (alpha == 1.0) return base + 0.5;
  if (std::isinf(alpha)) return base;
  return base + std::log(alpha) / (2 * (alpha - 1));
}

const UniformGrid kGrid(-30.0, 60.0 / 4096, 4096);

}  // namespace

TEST_CASE("density and wave function bookkeeping") {
  const auto psi = gaussian(kGrid, 1.0, 2.0, 1.5);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-14));
  const auto d = density(psi);
  CHECK(d.integral() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(Density(kGrid, std::vector<double>(10, 1.0)), DimensionError);
  std::vector<double> negative(kGrid.count(), 0.0);
  negative[5] = -1.0;
  CHECK_THROWS_AS(Density(kGrid, negative), NumericError);
  CHECK_THROWS_AS(WaveFunction(kGrid, std::vector<Complex>(3), Representation::position), DimensionError);
  CHECK_THROWS_AS(WaveFunction(kGrid, std::vector<Complex>(kGrid.count()), Representation::position).normalized(),
                  NumericError);
}

TEST_CASE("moments of a Gaussian") {
  const double sigma = 1.3;
  const auto m = moments(density(gaussian(kGrid, -2.0, 0.0, sigma)));
  CHECK(m.mean == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(m.variance == doctest::Approx(sigma * sigma / 2).epsilon(1e-12));
}

TEST_CASE("autocorrelation of a state with itself and with a displaced copy") {
  const auto a = gaussian(kGrid, 0.0, 0.0, 1.0);
  const auto b = gaussian(kGrid, 2.0, 0.0, 1.0);
  CHECK(std::abs(autocorrelation(a, a)) == doctest::Approx(1.0).epsilon(1e-13));
  // overlap of two unit-width Gaussians a distance d apart: exp(-d^2 / 4)
  CHECK(std::abs(autocorrelation(b, a)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  const auto other = gaussian(UniformGrid(-30.0, 60.0 / 2048, 2048), 0.0, 0.0, 1.0);
  CHECK_THROWS_AS(autocorrelation(a, other), DimensionError);
}

TEST_CASE("uncertainty product of a minimum-uncertainty Gaussian is one half") {
  for (double hbar : {1.0, 0.3}) {
    const auto psi = gaussian(kGrid, 0.5, 1.0, 0.9);
    const auto phi = numerics::to_momentum(psi, hbar, 2);
    CHECK(uncertainty_product(density(psi), density(phi)) == doctest::Approx(hbar / 2).epsilon(1e-10));
  }
}

TEST_CASE("renyi orders and conjugate pairs") {
  CHECK_THROWS_AS(RenyiOrder(0.0), ContractError);
  CHECK_THROWS_AS(RenyiOrder(-1.0), ContractError);
  CHECK_THROWS_AS(RenyiOrder(NAN), ContractError);
  CHECK(RenyiOrder::infinity().reciprocal() == 0.0);
  CHECK(RenyiOrder(2.0 / 3.0).label() == "0.666667");
  CHECK(RenyiOrder(2.0).label() == "2");
  CHECK(RenyiOrder::infinity().label() == "inf");
  CHECK(RenyiOrder(0.5).label() == "0.5");

  const auto pair = ConjugatePair::from_position_order(RenyiOrder(2.0));
  CHECK(pair.momentum_order().value() == doctest::Approx(2.0 / 3.0));
  CHECK(pair.label() == "2_0.666667");
  CHECK(ConjugatePair::from_position_order(RenyiOrder(0.5)).momentum_order().is_infinite());
  CHECK(ConjugatePair::from_position_order(RenyiOrder::infinity()).momentum_order().value() == 0.5);
  CHECK_THROWS_AS(ConjugatePair(RenyiOrder(1.0), RenyiOrder(2.0)), ContractError);
  CHECK_THROWS_AS(ConjugatePair::from_position_order(RenyiOrder(0.4)), ContractError);
}

TEST_CASE("renyi bound reference values") {
  const ConjugatePair shannon(RenyiOrder(1.0), RenyiOrder(1.0));
  CHECK(renyi_bound(shannon) == doctest::Approx(1.0 + std::log(kPi)).epsilon(1e-14));
  CHECK(renyi_bound(shannon, 0.5) == doctest::Approx(1.0 + std::log(kPi) + std::log(0.5)).epsilon(1e-14));
  const ConjugatePair minmax(RenyiOrder::infinity(), RenyiOrder(0.5));
  CHECK(renyi_bound(minmax) == doctest::Approx(std::log(2 * kPi)).epsilon(1e-14));
  CHECK(renyi_bound(ConjugatePair(RenyiOrder(0.5), RenyiOrder::infinity())) ==
        doctest::Approx(std::log(2 * kPi)).epsilon(1e-14));
  const ConjugatePair two(RenyiOrder(2.0), RenyiOrder(2.0 / 3.0));
  const double expected = std::log(2 / kPi) / 2 - 1.5 * std::log(2 / (3 * kPi));
  CHECK(renyi_bound(two) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(renyi_bound(two) == doctest::Approx(2.0995).epsilon(1e-4));
}

TEST_CASE("renyi bound is continuous through its limits") {
  const ConjugatePair shannon(RenyiOrder(1.0), RenyiOrder(1.0));
  const auto near_one = ConjugatePair::from_position_order(RenyiOrder(1.0 + 1e-6));
  CHECK(std::abs(renyi_bound(near_one) - renyi_bound(shannon)) < 1e-5);
  const auto near_half = ConjugatePair::from_position_order(RenyiOrder(0.5 + 1e-9));
  const ConjugatePair half(RenyiOrder(0.5), RenyiOrder::infinity());
  CHECK(std::abs(renyi_bound(near_half) - renyi_bound(half)) < 1e-3);
}

TEST_CASE("renyi entropies of a Gaussian match the closed forms") {
  const double sigma = 0.8;
  const auto d = density(gaussian(kGrid, 0.3, 0.0, sigma));
  const double s = sigma / std::sqrt(2.0);
  for (double alpha : {0.5, 2.0 / 3.0, 1.0, 2.0, 5.0, kInf}) {
    CAPTURE(alpha);
    CHECK(renyi(d, RenyiOrder(alpha)) == doctest::Approx(normal_renyi(s, alpha)).epsilon(1e-10));
  }
}

TEST_CASE("renyi entropy is continuous at alpha = 1") {
  const auto d = density(superposition(kGrid, {{-3.0, 0.0, 0.7, 1.0}, {2.0, 1.0, 1.4, Complex(0.3, 0.5)}}));
  const double shannon = renyi(d, RenyiOrder::shannon());
  for (double eps : {1e-3, 1e-4, 1e-6}) {
    CHECK(std::abs(renyi(d, RenyiOrder(1.0 + eps)) - shannon) < 1e-3);
    CHECK(std::abs(renyi(d, RenyiOrder(1.0 - eps)) - shannon) < 1e-3);
  }
}

TEST_CASE("renyi entropy decreases with the order and approaches the min-entropy") {
  const auto d = density(superposition(kGrid, {{-3.0, 0.0, 0.7, 1.0}, {2.0, 1.0, 1.4, 0.6}}));
  double previous = renyi(d, RenyiOrder(0.5));
  for (double alpha : {2.0 / 3.0, 1.0, 2.0, 4.0, 50.0, kInf}) {
    const double r = renyi(d, RenyiOrder(alpha));
    CHECK(r <= previous + 1e-12);
    previous = r;
  }
  // near a smooth peak R_alpha - R_inf ~ ln(alpha) / (2 (alpha - 1))
  const double tail = renyi(d, RenyiOrder(200.0)) - renyi(d, RenyiOrder::infinity());
  CHECK(tail > 0.0);
  CHECK(tail < 0.02);
  CHECK_THROWS_AS(renyi(d, RenyiOrder(1e4)), NumericError);
}

TEST_CASE("refined maximum is exact for an off-grid Gaussian peak") {
  const UniformGrid coarse(-10.0, 0.05, 401);
  const double sigma = 0.6;
  const auto d = density(gaussian(coarse, 0.0123, 0.0, sigma));
  const double peak = 1.0 / (sigma * std::sqrt(kPi));
  double sampled = 0.0;
  for (double v : d.values()) sampled = std::max(sampled, v);
  CHECK(sampled < peak);
  CHECK(detail::refined_maximum(d) == doctest::Approx(peak).epsilon(1e-12));
}

TEST_CASE("a minimum-uncertainty Gaussian saturates every conjugate bound") {
  const auto psi = gaussian(kGrid, 1.0, 3.0, 1.1);
  const auto phi = numerics::to_momentum(psi, 1.0, 2);
  const auto rho = density(psi), gamma = density(phi);
  for (double alpha : {0.5, 0.6, 2.0 / 3.0, 1.0, 2.0, 7.0, kInf}) {
    CAPTURE(alpha);
    const auto pair = ConjugatePair::from_position_order(RenyiOrder(alpha));
    CHECK(entropy_sum(rho, gamma, pair) == doctest::Approx(renyi_bound(pair)).epsilon(1e-9));
  }
}

TEST_CASE("random superpositions respect the entropic and Heisenberg bounds") {
  std::mt19937 rng(20241016);
  std::uniform_real_distribution<double> centre(-6.0, 6.0), kick(-4.0, 4.0), width(0.3, 2.0),
      phase(0.0, 2 * kPi), order(0.5, 6.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Bump> bumps;
    const int count = 1 + trial % 4;
    for (int k = 0; k < count; ++k) {
      bumps.push_back({centre(rng), kick(rng), width(rng), std::polar(1.0, phase(rng))});
    }
    const auto psi = superposition(kGrid, bumps);
    const auto phi = numerics::to_momentum(psi, 1.0, 2);
    const auto rho = density(psi), gamma = density(phi);
    CHECK(uncertainty_product(rho, gamma) >= 0.5 - 1e-6);
    std::vector<double> alphas{0.5, 2.0 / 3.0, 1.0, 2.0, kInf, order(rng)};
    for (double alpha : alphas) {
      const auto pair = ConjugatePair::from_position_order(RenyiOrder(alpha));
      CAPTURE(trial);
      CAPTURE(alpha);
      CHECK(entropy_sum(rho, gamma, pair) >= renyi_bound(pair) - 1e-6);
    }
  }
}

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qrev/errors.hpp"
#include "qrev/numerics/airy.hpp"
#include "qrev/numerics/fourier.hpp"
#include "qrev/numerics/grid.hpp"
#include "qrev/numerics/quadrature.hpp"
#include "qrev/wave_function.hpp"

using namespace qrev;
using namespace qrev::numerics;

namespace {

constexpr double kPi = std::numbers::pi;

// Ai and Ai' from mpmath at 30 digits.
struct AiryReference {
  double x, ai, aip;
};
constexpr AiryReference kAiry[] = {
    {-500, 0.07259012010404114, 2.1173370928026481},
    {-100, 0.17675339323955288, -0.24229703166058381},
    {-20, -0.17640612707798469, 0.89286285673647124},
    {-8.5, -0.33029023763020888, -0.032313348284639136},
    {-7.9, 0.041701883617386709, 0.94004299802628024},
    {-3.3, -0.41718093737455014, -0.070963617177835884},
    {-1, 0.53556088329235212, -0.010160567116645209},
    {0, 0.35502805388781724, -0.2588194037928068},
    {0.5, 0.23169360648083349, -0.22491053266468389},
    {2, 0.034924130423274379, -0.053090384433653632},
    {5.9, 1.2747094509184476e-5, -3.1481297117112738e-5},
    {6.1, 7.7477310324484344e-6, -1.9440985375102971e-5},
    {10, 1.1047532552898686e-10, -3.5206336767389236e-10},
    {30, 3.2082175915504956e-49, -1.759876581432726e-48},
    {100, 2.6344821520881845e-291, -2.6351403616044099e-290},
};

// n, z_n, Ai'(-z_n) from mpmath.
struct ZeroReference {
  std::size_t n;
  double z, aip;
};
constexpr ZeroReference kZeros[] = {
    {1, 2.338107410459767, 0.70121082272069136},
    {2, 4.0879494441309706, -0.80311136965486396},
    {3, 5.5205598280955511, 0.86520402589415193},
    {10, 12.828776752865757, -1.0677938591574278},
    {100, 60.455557274116699, -1.5732012195680693},
    {300, 125.8926102729785, -1.8898404495104151},
};

std::vector<double> sampled(const UniformGrid& g, double (*f)(double)) {
  std::vector<double> v(g.count());
  for (std::size_t i = 0; i < g.count(); ++i) v[i] = f(g.point(i));
  return v;
}

WaveFunction gaussian(const UniformGrid& g, double x0, double p0, double sigma, double hbar) {
  std::vector<Complex> a(g.count());
  const double norm = std::pow(sigma * std::sqrt(kPi), -0.5);
  for (std::size_t i = 0; i < g.count(); ++i) {
    const double x = g.point(i);
    a[i] = norm * std::exp(Complex(-(x - x0) * (x - x0) / (2 * sigma * sigma), p0 * x / hbar));
  }
  return WaveFunction(g, std::move(a), Representation::position);
}

}  // namespace

TEST_CASE("grid construction and spanning") {
  const auto g = UniformGrid::spanning(-1.0, 1.0, 5);
  CHECK(g.step() == doctest::Approx(0.5));
  CHECK(g.last() == doctest::Approx(1.0));
  CHECK(g.length() == doctest::Approx(2.0));
  CHECK(g.points().size() == 5);
  CHECK(g.matches(UniformGrid(-1.0, 0.5, 5)));
  CHECK_FALSE(g.matches(UniformGrid(-1.0, 0.5, 6)));
  CHECK_THROWS_AS(UniformGrid(0.0, 0.0, 4), ContractError);
  CHECK_THROWS_AS(UniformGrid(0.0, 1.0, 1), ContractError);
  CHECK_THROWS_AS(UniformGrid(NAN, 1.0, 4), ContractError);
}

TEST_CASE("trapezoid matches the error function for a Gaussian") {
  for (double a : {0.5, 1.0, 2.0, 6.0}) {
    const auto g = UniformGrid::spanning(-a, a, 4001);
    const double got = integrate(sampled(g, [](double x) { return std::exp(-x * x); }), g);
    // endpoint error of the trapezoid rule: h^2/12 (f'(b) - f'(a))
    const double h = g.step();
    const double correction = h * h / 12.0 * (-4.0 * a * std::exp(-a * a));
    CHECK(got == doctest::Approx(std::sqrt(kPi) * std::erf(a) + correction).epsilon(1e-12));
  }
}

TEST_CASE("trapezoid error on a quadratic is h^2/6") {
  const auto g = UniformGrid::spanning(0.0, 1.0, 11);
  const double got = integrate(sampled(g, [](double x) { return x * x; }), g);
  CHECK(got == doctest::Approx(1.0 / 3.0 + 0.01 / 6.0).epsilon(1e-14));
}

TEST_CASE("quadrature rejects mismatched or non-finite samples") {
  const auto g = UniformGrid::spanning(0.0, 1.0, 4);
  const std::vector<double> short_samples(3, 1.0);
  CHECK_THROWS_AS(integrate(short_samples, g), DimensionError);
  const std::vector<double> bad{1.0, NAN, 1.0, 1.0};
  CHECK_THROWS_AS(integrate(bad, g), NumericError);
}

TEST_CASE("fourier transform of a Gaussian matches the closed form") {
  for (double hbar : {1.0, 0.7}) {
    const double x0 = 0.7, p0 = 3.0, sigma = 0.8;
    const auto g = UniformGrid(-20.0, 40.0 / 1024, 1024);
    const auto phi = to_momentum(gaussian(g, x0, p0, sigma, hbar), hbar, 2);
    CHECK(phi.representation() == Representation::momentum);
    CHECK(phi.grid().count() == 2048);
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.grid().count(); ++i) {
      const double p = phi.grid().point(i);
      const double k = (p - p0) / hbar;
      const Complex expected = std::sqrt(sigma / (hbar * std::sqrt(kPi))) *
                               std::exp(Complex(-k * k * sigma * sigma / 2.0, -k * x0));
      worst = std::max(worst, std::abs(phi.amplitudes()[i] - expected));
    }
    CHECK(worst < 1e-10);
    CHECK(phi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fourier round trip recovers the state") {
  const auto g = UniformGrid(-10.0, 20.0 / 256, 256);
  const auto psi = gaussian(g, 1.0, -2.0, 0.9, 1.0);
  const auto back = to_position(to_momentum(psi, 1.0, 4), g.start(), 1.0);
  REQUIRE(back.grid().count() == 1024);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.count(); ++i) {
    worst = std::max(worst, std::abs(back.amplitudes()[i] - psi.amplitudes()[i]));
  }
  CHECK(worst < 1e-12);
  for (std::size_t i = g.count(); i < back.grid().count(); ++i) {
    CHECK(std::abs(back.amplitudes()[i]) < 1e-12);
  }
}

TEST_CASE("momentum grid spacing and preconditions") {
  const auto g = UniformGrid(0.0, 0.01, 100);
  const auto m = momentum_grid_for(g, 2.0, 400);
  CHECK(m.step() == doctest::Approx(2 * kPi * 2.0 / (400 * 0.01)));
  CHECK(m.start() == doctest::Approx(-200 * m.step()));
  const auto psi = gaussian(g, 0.5, 0.0, 0.1, 1.0);
  CHECK_THROWS_AS(to_momentum(psi, 1.0, 0), ContractError);
  CHECK_THROWS_AS(to_momentum(to_momentum(psi), 1.0, 1), ContractError);
}

TEST_CASE("airy function matches reference values") {
  for (const auto& r : kAiry) {
    CAPTURE(r.x);
    const auto v = airy(r.x);
    CHECK(std::abs(v.ai - r.ai) < 1e-10);
    CHECK(std::abs(v.ai_prime - r.aip) < 1e-10);
    CHECK(airy_ai(r.x) == v.ai);
    CHECK(airy_ai_prime(r.x) == v.ai_prime);
    if (r.x > 0) {
      CHECK(v.ai == doctest::Approx(r.ai).epsilon(1e-9));
      CHECK(v.ai_prime == doctest::Approx(r.aip).epsilon(1e-9));
    }
  }
}

TEST_CASE("airy series and asymptotic branches agree at the switch points") {
  for (double x : {detail::kSeriesLimitNegative, detail::kSeriesLimitPositive}) {
    CAPTURE(x);
    const auto s = detail::airy_maclaurin(x);
    const auto a = detail::airy_asymptotic(x);
    CHECK(std::abs(s.ai - a.ai) < 1e-10);
    CHECK(std::abs(s.ai_prime - a.ai_prime) < 1e-10);
  }
}

TEST_CASE("airy function solves y'' = x y") {
  const double h = 1e-3;
  for (double x : {-300.0, -40.0, -7.5, -2.0, 0.3, 4.0, 9.0}) {
    CAPTURE(x);
    const double second = (airy_ai_prime(x + h) - airy_ai_prime(x - h)) / (2 * h);
    const double scale = std::max(1.0, std::abs(x));
    CHECK(std::abs(second - x * airy_ai(x)) < 1e-5 * scale);
  }
}

TEST_CASE("airy function rejects arguments outside its range") {
  CHECK_THROWS_AS(airy(kAiryMinArgument - 1.0), DomainError);
  CHECK_THROWS_AS(airy(kAiryMaxArgument + 1.0), DomainError);
  CHECK_THROWS_AS(airy(NAN), DomainError);
}

TEST_CASE("airy zeros match reference values") {
  const auto table = airy_zeros(300);
  REQUIRE(table.size() == 300);
  for (const auto& r : kZeros) {
    CAPTURE(r.n);
    CHECK(std::abs(table.zero(r.n) - r.z) < 1e-11);
    CHECK(std::abs(table.derivative_at_zero(r.n) - r.aip) < 1e-10);
    CHECK(table.normalization(r.n) == doctest::Approx(1.0 / std::abs(r.aip)).epsilon(1e-10));
  }
  CHECK(table.zero(1) == doctest::Approx(2.338107410460).epsilon(1e-12));
}

TEST_CASE("airy zeros agree with bisection on the function itself") {
  const auto table = airy_zeros(40);
  for (std::size_t n = 1; n <= 40; ++n) {
    CAPTURE(n);
    // zeros interlace with the seeds' midpoints; bracket each one by +-0.3
    double lo = -(table.zero(n) + 0.3), hi = -(table.zero(n) - 0.3);
    REQUIRE(airy_ai(lo) * airy_ai(hi) < 0.0);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      (airy_ai(mid) * airy_ai(lo) > 0.0 ? lo : hi) = mid;
    }
    CHECK(std::abs(-0.5 * (lo + hi) - table.zero(n)) < 1e-11);
  }
}

TEST_CASE("airy zeros are increasing and close to their seeds") {
  const auto table = airy_zeros(500);
  for (std::size_t n = 2; n <= 500; ++n) CHECK(table.zero(n) > table.zero(n - 1));
  CHECK(std::abs(table.zero(500) - airy_zero_seed(500)) < 1e-5);
  CHECK_THROWS_AS(airy_zeros(0), ContractError);
}

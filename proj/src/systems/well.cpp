#include "qrev/systems/well.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qrev/errors.hpp"

namespace qrev::systems {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleWindow = 1e-6;
constexpr double kCompletenessTolerance = 1e-6;
// Momentum samples beyond this multiple of p_{n_max} use the moment expansion.
constexpr double kTailStart = 2.0;

}  // namespace

void WellSystem::validate() const {
  if (!(mass > 0.0) || !(length > 0.0) || !(hbar > 0.0)) {
    throw ContractError("WellSystem: mass, length and hbar must be positive");
  }
  if (n_min < 1 || n_min > n_max) {
    throw ContractError("WellSystem: need 1 <= n_min <= n_max");
  }
}

double WellSystem::energy(std::size_t n) const {
  const double k = static_cast<double>(n) * kPi * hbar / length;
  return k * k / (2.0 * mass);
}

double WellSystem::level_momentum(std::size_t n) const {
  return static_cast<double>(n) * kPi * hbar / length;
}

double WellSystem::eigenfunction(std::size_t n, double x) const {
  if (x <= 0.0 || x >= length) return 0.0;
  return std::sqrt(2.0 / length) * std::sin(static_cast<double>(n) * kPi * x / length);
}

Complex WellSystem::momentum_eigenfunction(std::size_t n, double p) const {
  // Work with wave numbers q = p / hbar; phi_n(p) = sqrt(hbar/(pi L)) / hbar * g(q).
  const double prefactor = std::sqrt(hbar / (kPi * length)) / hbar;
  const double kn = static_cast<double>(n) * kPi / length;
  const double q = p / hbar;
  const double len = length;
  const Complex i{0.0, 1.0};

  const double near_plus = q - kn;
  const double near_minus = q + kn;
  if (std::abs(near_plus) < kPoleWindow * kn) {
    const double d = near_plus;
    return prefactor * (-i * len / 2.0 - d * (len * len / 4.0 - i * len / (4.0 * kn)));
  }
  if (std::abs(near_minus) < kPoleWindow * kn) {
    const double d = near_minus;
    return prefactor * (i * len / 2.0 + d * (len * len / 4.0 + i * len / (4.0 * kn)));
  }
  const double parity = (n % 2 == 0) ? 1.0 : -1.0;
  const Complex bracket = parity * std::polar(1.0, -q * len) - 1.0;
  return prefactor * kn / (q * q - kn * kn) * bracket;
}

EigenExpansion well_coefficients(const WellSystem& sys, const GaussianPacket& packet,
                                 double margin_sigmas) {
  sys.validate();
  packet.validate();
  const double x0 = packet.x0, s = packet.sigma, hb = sys.hbar, len = sys.length;
  if (!(margin_sigmas > 0.0)) throw ContractError("well_coefficients: margin must be positive");
  if (x0 - margin_sigmas * s <= 0.0 || x0 + margin_sigmas * s >= len) {
    throw ContractError("well_coefficients: packet x0 +- " + std::to_string(margin_sigmas) +
                        " sigma must lie inside (0, L)");
  }

  const double prefactor = std::sqrt(4.0 * kPi * s / (len * std::sqrt(kPi)));
  const Complex i{0.0, 1.0};
  const Complex global = prefactor * std::polar(1.0, packet.p0 * x0 / hb) / (2.0 * i);

  EigenExpansion out{Basis::well, sys.n_min, {}, {}, hb};
  for (std::size_t n = sys.n_min; n <= sys.n_max; ++n) {
    const double pn = sys.level_momentum(n);
    const double kx = pn * x0 / hb;
    const double plus = s * (packet.p0 + pn) / hb;
    const double minus = s * (packet.p0 - pn) / hb;
    const Complex a = global * (std::polar(std::exp(-0.5 * plus * plus), kx) -
                                std::polar(std::exp(-0.5 * minus * minus), -kx));
    out.coefficients.push_back(a);
    out.energies.push_back(sys.energy(n));
  }
  const double total = out.completeness();
  if (std::abs(total - 1.0) > kCompletenessTolerance) {
    throw TruncationError("well_coefficients: sum |a_n|^2 = " + std::to_string(total) +
                              " over levels [" + std::to_string(sys.n_min) + ", " +
                              std::to_string(sys.n_max) + "]; widen the level range",
                          total);
  }
  return out;
}

WellSystem well_system_for(const GaussianPacket& packet, double mass, double length, double hbar,
                           std::size_t half_width) {
  const auto n0 = static_cast<std::size_t>(std::llround(std::abs(packet.p0) * length / (kPi * hbar)));
  WellSystem sys{mass, length, hbar, n0 > half_width ? n0 - half_width : 1, n0 + half_width};
  sys.validate();
  return sys;
}

UniformGrid well_position_grid(const WellSystem& sys) {
  sys.validate();
  const std::size_t intervals = 8 * sys.n_max;
  return UniformGrid(0.0, sys.length / static_cast<double>(intervals), intervals + 1);
}

UniformGrid well_momentum_grid(const WellSystem& sys, double extent, std::size_t per_level) {
  sys.validate();
  if (!(extent >= 1.0) || per_level < 1) {
    throw ContractError("well_momentum_grid: extent must be >= 1 and per_level >= 1");
  }
  const double spacing = kPi * sys.hbar / sys.length;
  const double dp = spacing / static_cast<double>(per_level);
  const auto half = static_cast<std::size_t>(
      std::ceil(extent * static_cast<double>(sys.n_max + 20) * static_cast<double>(per_level)));
  // Offset by half a step so no sample sits exactly on a pole p_n.
  return UniformGrid(-(static_cast<double>(half) + 0.5) * dp, dp, 2 * half + 2);
}

WellBasis::WellBasis(const WellSystem& sys, const UniformGrid& grid, Representation representation)
    : sys_(sys), grid_(grid), representation_(representation), levels_(sys.n_max - sys.n_min + 1) {
  sys.validate();
  const std::size_t count = grid.count();
  if (representation == Representation::position) {
    const double max_dx = sys.length / (8.0 * static_cast<double>(sys.n_max));
    if (grid.step() > max_dx * (1.0 + 1e-12)) {
      throw GridError("WellBasis: position step " + std::to_string(grid.step()) +
                      " exceeds L/(8 n_max) = " + std::to_string(max_dx));
    }
    const double slack = 1e-9 * sys.length;
    if (grid.start() > slack || grid.last() < sys.length - slack) {
      throw GridError("WellBasis: position grid must cover [0, L]");
    }
    real_table_.resize(count * levels_);
    for (std::size_t j = 0; j < count; ++j) {
      for (std::size_t k = 0; k < levels_; ++k) {
        real_table_[j * levels_ + k] = sys.eigenfunction(sys.n_min + k, grid.point(j));
      }
    }
    return;
  }

  const double reach = static_cast<double>(sys.n_max + 20) * kPi * sys.hbar / sys.length;
  if (grid.start() > -reach || grid.last() < reach) {
    throw GridError("WellBasis: momentum grid must cover +-(n_max + 20) pi hbar / L = +-" +
                    std::to_string(reach));
  }
  const double p_top = sys.level_momentum(sys.n_max);
  const double core_edge = kTailStart * p_top;
  for (std::size_t j = 0; j < count; ++j) {
    const double p = grid.point(j);
    if (std::abs(p) < core_edge) {
      core_points_.push_back(j);
    } else {
      tail_points_.push_back(j);
      tail_ratio_.push_back(p_top / p);
      tail_phase_.push_back(std::polar(1.0, -p * sys.length / sys.hbar));
    }
  }

  core_re_.resize(core_points_.size() * levels_);
  core_im_.resize(core_points_.size() * levels_);
  for (std::size_t r = 0; r < core_points_.size(); ++r) {
    const double p = grid.point(core_points_[r]);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < levels_; ++k) {
      const double pn = sys.level_momentum(sys.n_min + k);
      if (std::abs(std::abs(p) - pn) < kPoleWindow * pn) ++hits;
      const Complex v = sys.momentum_eigenfunction(sys.n_min + k, p);
      core_re_[r * levels_ + k] = v.real();
      core_im_[r * levels_ + k] = v.imag();
    }
    if (hits > 1) {
      throw GridError("WellBasis: momentum sample " + std::to_string(p) +
                      " falls inside the pole windows of two levels");
    }
  }

  level_scale_.resize(levels_);
  for (std::size_t k = 0; k < levels_; ++k) {
    level_scale_[k] = sys.level_momentum(sys.n_min + k) / p_top;
  }
  if (!tail_points_.empty()) {
    // truncation error of the expansion is below (1/kTailStart)^(2 terms)
    const double r_max = 1.0 / kTailStart;
    tail_terms_ = static_cast<std::size_t>(std::ceil(std::log(1e-18) / (2.0 * std::log(r_max))));
  }
}

WaveFunction WellBasis::superpose(std::span<const Complex> coefficients) const {
  if (coefficients.size() != levels_) {
    throw DimensionError("WellBasis::superpose: expected " + std::to_string(levels_) +
                         " coefficients, got " + std::to_string(coefficients.size()));
  }
  const std::size_t count = grid_.count();
  std::vector<Complex> amps(count);
  std::vector<double> c_re(levels_), c_im(levels_);
  for (std::size_t k = 0; k < levels_; ++k) {
    c_re[k] = coefficients[k].real();
    c_im[k] = coefficients[k].imag();
  }

  if (representation_ == Representation::position) {
    for (std::size_t j = 0; j < count; ++j) {
      const double* row = &real_table_[j * levels_];
      double re = 0.0, im = 0.0;
      for (std::size_t k = 0; k < levels_; ++k) {
        re += c_re[k] * row[k];
        im += c_im[k] * row[k];
      }
      amps[j] = {re, im};
    }
    return WaveFunction(grid_, std::move(amps), representation_);
  }

  for (std::size_t r = 0; r < core_points_.size(); ++r) {
    const double* tr = &core_re_[r * levels_];
    const double* ti = &core_im_[r * levels_];
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < levels_; ++k) {
      re += c_re[k] * tr[k] - c_im[k] * ti[k];
      im += c_re[k] * ti[k] + c_im[k] * tr[k];
    }
    amps[core_points_[r]] = {re, im};
  }

  if (!tail_points_.empty()) {
    // plain[j] = sum_n c_n s_n^(2j+1), signed[j] = sum_n (-1)^n c_n s_n^(2j+1)
    std::vector<Complex> plain(tail_terms_), sign(tail_terms_);
    std::vector<double> power(level_scale_);
    for (std::size_t j = 0; j < tail_terms_; ++j) {
      double pr = 0.0, pi_ = 0.0, sr = 0.0, si = 0.0;
      for (std::size_t k = 0; k < levels_; ++k) {
        const double w = power[k];
        const double parity = ((sys_.n_min + k) % 2 == 0) ? 1.0 : -1.0;
        pr += c_re[k] * w;
        pi_ += c_im[k] * w;
        sr += parity * c_re[k] * w;
        si += parity * c_im[k] * w;
        power[k] *= level_scale_[k] * level_scale_[k];
      }
      plain[j] = {pr, pi_};
      sign[j] = {sr, si};
    }
    const double p_top = sys_.level_momentum(sys_.n_max);
    // phi_n(p) = sqrt(hbar/(pi L)) p_n/(p^2 - p_n^2) [(-1)^n e^{-ipL/hbar} - 1]
    const double prefactor = std::sqrt(sys_.hbar / (kPi * sys_.length));
    constexpr std::size_t kBlock = 256;
    const std::size_t tails = tail_points_.size();
    double r2[kBlock], pr[kBlock], pim[kBlock], sr[kBlock], sim[kBlock];
    for (std::size_t lo = 0; lo < tails; lo += kBlock) {
      const std::size_t n = std::min(kBlock, tails - lo);
      for (std::size_t r = 0; r < n; ++r) {
        r2[r] = tail_ratio_[lo + r] * tail_ratio_[lo + r];
        pr[r] = pim[r] = sr[r] = sim[r] = 0.0;
      }
      // Horner in ratio^2, vectorised over a cache-sized block of tail samples.
      for (std::size_t j = tail_terms_; j-- > 0;) {
        const double a = plain[j].real(), b = plain[j].imag();
        const double c = sign[j].real(), d = sign[j].imag();
        for (std::size_t r = 0; r < n; ++r) {
          pr[r] = pr[r] * r2[r] + a;
          pim[r] = pim[r] * r2[r] + b;
          sr[r] = sr[r] * r2[r] + c;
          sim[r] = sim[r] * r2[r] + d;
        }
      }
      for (std::size_t r = 0; r < n; ++r) {
        // sum_n c_n p_n/(p^2 - p_n^2) = (ratio^2 / p_top) * sum_j plain[j] ratio^(2j)
        const double scale = prefactor * r2[r] / p_top;
        const Complex e = tail_phase_[lo + r];
        amps[tail_points_[lo + r]] = {scale * (e.real() * sr[r] - e.imag() * sim[r] - pr[r]),
                                      scale * (e.real() * sim[r] + e.imag() * sr[r] - pim[r])};
      }
    }
  }
  return WaveFunction(grid_, std::move(amps), representation_);
}

WaveFunction well_evolve(const WellSystem& sys, const EigenExpansion& expansion, double t,
                         const UniformGrid& grid, Representation representation,
                         double norm_tolerance) {
  if (expansion.basis != Basis::well || expansion.first_level != sys.n_min ||
      expansion.last_level() != sys.n_max) {
    throw DimensionError("well_evolve: expansion does not match the well's level range");
  }
  const WellBasis basis(sys, grid, representation);
  WaveFunction wf = basis.superpose(expansion.at_time(t));
  const double n = wf.norm();
  if (std::abs(n - 1.0) > norm_tolerance) {
    throw GridError("well_evolve: norm " + std::to_string(n) + " at t = " + std::to_string(t));
  }
  return wf;
}

}  // namespace qrev::systems

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "vqalab/reductions.hpp"

namespace vqalab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxExactInteger = 9007199254740992.0;  // 2^53

// m^p as a double, exact while below 2^53.
double int_power(int m, int p) {
  double r = 1.0;
  for (int k = 0; k < p; ++k) r *= m;
  return r;
}

}  // namespace

ErgodicSpectrum ergodic_energies(int n, int m) {
  if (n < 1) throw std::invalid_argument("ergodic spectrum needs n >= 1");
  if (m < 2) throw std::invalid_argument("ergodic spectrum needs m >= 2");
  ErgodicSpectrum spec;
  spec.m = m;
  spec.energies.resize(n);
  for (int i = 1; i <= n; ++i) spec.energies[i - 1] = kTwoPi / int_power(m, i);
  spec.epsilon = 4.0 * std::numbers::pi / m;
  return spec;
}

double mod_norm(double x) {
  const double r = std::fmod(std::abs(x), kTwoPi);
  return std::min(r, kTwoPi - r);
}

double ergodic_time(const PhaseVector& phi, const ErgodicSpectrum& spec) {
  const int n = spec.size();
  if (phi.size() != n) throw std::invalid_argument("phase vector length does not match spectrum");
  if (int_power(spec.m, n) > kMaxExactInteger) {
    throw std::invalid_argument("m^n exceeds 2^53; lookup time is not exactly representable");
  }
  double t = 0.0;
  double weight = 1.0;  // m^(j-1)
  for (int j = 0; j < n; ++j) {
    if (!(phi[j] >= 0.0 && phi[j] < kTwoPi)) {
      throw std::invalid_argument("phase " + std::to_string(j) + " outside [0, 2pi)");
    }
    double s = std::floor(phi[j] * spec.m / kTwoPi);
    if (s > spec.m - 1) s = spec.m - 1;  // rounding just below 2pi
    t += s * weight;
    weight *= spec.m;
  }
  return t;
}

double ergodic_phase(const ErgodicSpectrum& spec, int i, double t) {
  if (i < 0 || i >= spec.size()) throw std::invalid_argument("energy index out of range");
  const double period = int_power(spec.m, i + 1);  // E_i t = 2 pi t / m^i
  if (t >= 0 && t < kMaxExactInteger && std::floor(t) == t && period <= kMaxExactInteger) {
    const double rem = std::fmod(t, period);  // exact for integers below 2^53
    return kTwoPi * (rem / period);
  }
  double r = std::fmod(spec.energies[i] * t, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

double ergodic_error(const PhaseVector& phi, const ErgodicSpectrum& spec, double t) {
  if (phi.size() != spec.size()) throw std::invalid_argument("phase vector length does not match spectrum");
  double worst = 0.0;
  for (int i = 0; i < spec.size(); ++i) {
    worst = std::max(worst, mod_norm(phi[i] - ergodic_phase(spec, i, t)));
  }
  return worst;
}

}  // namespace vqalab

#pragma once

#include <cmath>
#include <random>

#include "spinres/spin_algebra.hpp"
#include "spinres/units.hpp"

namespace spinres::test {

inline SpinSystem reference_system() {
  SpinSystem s;
  s.g_par = 2.322;
  s.g_perp = 2.053;
  s.A_par = units::hyperfine_to_joule(-174.6);
  s.A_perp = units::hyperfine_to_joule(13.4);
  s.P_par = units::hyperfine_to_joule(12.3);
  s.gI_par = 8.087e-4;
  return s;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d;
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = {d(rng), d(rng)};
  return (m + m.adjoint()) * 0.5;
}

}  // namespace spinres::test

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "spinres/eigen_transitions.hpp"
#include "spinres/errors.hpp"
#include "spinres/perturbation.hpp"
#include "support.hpp"

using namespace spinres;

namespace {

const double kH = units::constants().planck_h;
const double kBeta = units::constants().bohr_magneton;

// Closed form for S = 1/2 with isotropic A and no nuclear terms, field along z.
std::vector<double> breit_rabi(double A, double I, double x) {
  std::vector<double> e;
  e.push_back(x / 2 + A * I / 2);
  e.push_back(-x / 2 + A * I / 2);
  for (double m = -I + 0.5; m <= I - 0.5 + 1e-9; m += 1.0) {
    const double root = std::sqrt(x * x + 2 * A * m * x + A * A * (I + 0.5) * (I + 0.5));
    e.push_back(-A / 4 + root / 2);
    e.push_back(-A / 4 - root / 2);
  }
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

TEST_CASE("Breit-Rabi closed form at 20 fields") {
  SpinSystem s;
  s.g_par = s.g_perp = 2.2;
  s.A_par = s.A_perp = units::hyperfine_to_joule(-174.6);
  for (int k = 0; k < 20; ++k) {
    const double b = 0.005 + 0.05 * k;
    const auto es = eigensystem(build_hamiltonian(s, {0, 0, b}));
    const auto ref = breit_rabi(s.A_par, s.I, s.g_par * kBeta * b);
    const double scale = es.values.cwiseAbs().maxCoeff();
    for (int i = 0; i < 8; ++i) CHECK(std::abs(es.values(i) - ref[i]) <= 1e-10 * std::max(std::abs(ref[i]), 1e-3 * scale));
  }
}

TEST_CASE("Breit-Rabi holds for other nuclear spins and positive A") {
  for (double I : {0.5, 1.0, 2.5, 3.5}) {
    SpinSystem s;
    s.I = I;
    s.g_par = s.g_perp = 2.0;
    s.A_par = s.A_perp = units::hyperfine_to_joule(90.0);
    const double b = 0.07;
    const auto es = eigensystem(build_hamiltonian(s, {0, 0, b}));
    const auto ref = breit_rabi(s.A_par, I, 2.0 * kBeta * b);
    const double scale = es.values.cwiseAbs().maxCoeff();
    for (int i = 0; i < es.dim(); ++i) CHECK(std::abs(es.values(i) - ref[i]) <= 1e-10 * scale);
  }
}

TEST_CASE("pure Zeeman: four equal ESR lines") {
  SpinSystem s;
  HamiltonianBuilder hb(s);
  const auto es = eigensystem(hb({0, 0, 0.3}));
  const auto t = transition_table(es, transverse_operator(hb, {0, 0, 1}));
  REQUIRE(t.size() == 4);
  for (const auto& tr : t) CHECK(std::abs(tr.intensity - 0.25) < 1e-10);
}

TEST_CASE("axial system along z: no nuclear-flip intensity") {
  auto s = test::reference_system();
  s.A_perp = 0.0;
  HamiltonianBuilder hb(s);
  const auto es = eigensystem(hb({0, 0, 0.27}));
  const auto labels = basis_labels(s);
  for (const auto& tr : transition_table(es, transverse_operator(hb, {0, 0, 1}), 0.0)) {
    Eigen::Index rl, ru;
    es.vectors.col(tr.lower).cwiseAbs().maxCoeff(&rl);
    es.vectors.col(tr.upper).cwiseAbs().maxCoeff(&ru);
    if (labels[rl].second != labels[ru].second) CHECK(tr.intensity < 1e-30);
  }
}

TEST_CASE("copper system: four dominant lines") {
  HamiltonianBuilder hb(test::reference_system());
  const auto es = eigensystem(hb({0, 0, 0.27}));
  const auto t = transition_table(es, transverse_operator(hb, {0, 0, 1}));
  double top = 0.0;
  for (const auto& tr : t) top = std::max(top, tr.intensity);
  const auto strong = std::count_if(t.begin(), t.end(), [&](const Transition& tr) { return tr.intensity > 0.01 * top; });
  CHECK(strong == 4);
}

TEST_CASE("copper system at 0.26 T: ESR gaps straddle the 9.072 GHz mode") {
  HamiltonianBuilder hb(test::reference_system());
  const auto es = eigensystem(hb({0, 0, 0.26}));
  std::vector<double> f;
  for (const auto& tr : transition_table(es, transverse_operator(hb, {0, 0, 1})))
    if (tr.intensity > 0.1) f.push_back(tr.gap / kH);
  REQUIRE(f.size() == 4);
  std::sort(f.begin(), f.end());
  CHECK(f.front() < 9.072e9);
  CHECK(f.back() > 9.072e9);
  const double span = 3.0 * std::abs(test::reference_system().A_par) / kH;
  CHECK(test::rel_diff(f.back() - f.front(), span) < 0.02);
}

TEST_CASE("property: transition sum rule") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = test::reference_system();
    s.A_perp = units::hyperfine_to_joule(100.0 * u(rng));
    const FieldVector b{0.05 * u(rng), 0.05 * u(rng), 0.2 + 0.1 * u(rng)};
    HamiltonianBuilder hb(s);
    const auto es = eigensystem(hb(b));
    const ComplexMatrix op = transverse_operator(hb, b.unit());
    const auto t = transition_table(es, op, 0.0);
    const int n = es.dim();
    std::vector<double> total(n, 0.0);
    for (const auto& tr : t) {
      total[tr.lower] += tr.intensity;
      total[tr.upper] += tr.intensity;
    }
    for (int l = 0; l < n; ++l) {
      const auto v = es.vectors.col(l);
      total[l] += std::norm((v.adjoint() * op * v)(0, 0));
      const double expect = (v.adjoint() * op * op * v)(0, 0).real();
      CHECK(std::abs(total[l] - expect) < 1e-10);
    }
  }
}

TEST_CASE("transverse operator follows the field direction") {
  HamiltonianBuilder hb(SpinSystem{});
  CHECK((transverse_operator(hb, {0, 0, 1}) - hb.sx()).norm() < 1e-15);
  CHECK((transverse_operator(hb, {1, 0, 0}) - hb.sy()).norm() < 1e-15);
  CHECK((transverse_operator(hb, {0, 0, -2}) - hb.sx()).norm() < 1e-15);
}

TEST_CASE("resonance fields of a bare electron") {
  SpinSystem s;
  s.I = 0.0;
  s.g_par = s.g_perp = 2.142;
  auto lines = resonance_fields(s, 9.121e9, {0.2, 0.4});
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].b_center == doctest::Approx(0.3042365973).epsilon(1e-9));

  s.g_par = 2.526;
  lines = resonance_fields(s, 9.072e9, {0.2, 0.4});
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].b_center == doctest::Approx(0.2566008917).epsilon(1e-9));

  CHECK(resonance_fields(s, 9.072e9, {0.3, 0.4}).empty());
}

TEST_CASE("zero hyperfine: four M_I lines coincide") {
  SpinSystem s;
  s.g_par = 2.2;
  const auto lines = resonance_fields(s, 9.121e9, {0.2, 0.4});
  REQUIRE(lines.size() == 4);
  for (const auto& l : lines) CHECK(l.b_center == doctest::Approx(lines[0].b_center).epsilon(1e-12));
}

TEST_CASE("property: every returned line satisfies the resonance condition") {
  const auto s = test::reference_system();
  HamiltonianBuilder hb(s);
  for (double f : {9.072e9, 9.121e9, 9.5e9}) {
    const auto lines = resonance_fields(s, f, {0.2, 0.4});
    CHECK(lines.size() >= 4);
    for (const auto& l : lines) {
      const auto es = eigensystem(hb({0, 0, l.b_center}));
      const double gap = es.values(l.upper) - es.values(l.lower);
      CHECK(std::abs(gap - kH * f) <= kH * 1.0);
      CHECK(l.b_center > 0.0);
    }
  }
}

TEST_CASE("property: axial lines equal the first-order formula") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ad(-250.0, 250.0), gd(1.9, 2.6);
  ResonanceOptions opts;
  opts.tolerance_hz = 1e-4;
  for (int trial = 0; trial < 10; ++trial) {
    SpinSystem s;
    s.g_par = gd(rng);
    s.g_perp = gd(rng);
    s.A_par = units::hyperfine_to_joule(ad(rng));
    const double f = 9.121e9;
    const double b0 = kH * f / (s.g_par * kBeta);
    const auto lines = resonance_fields(s, f, {0.15, 0.5}, {0, 0, 1}, opts);
    std::vector<const TransitionLine*> strong;
    for (const auto& l : lines)
      if (l.intensity > 0.1) strong.push_back(&l);
    REQUIRE(strong.size() == 4);
    for (const auto* l : strong)
      CHECK(test::rel_diff(l->b_center, first_order_field(b0, s.A_par, l->mi, s.g_par)) < 1e-12);
  }
}

TEST_CASE("copper lines at 9.121 GHz") {
  const auto lines = resonance_fields(test::reference_system(), 9.121e9, {0.24, 0.32});
  std::vector<TransitionLine> strong;
  for (const auto& l : lines)
    if (l.intensity > 0.1) strong.push_back(l);
  REQUIRE(strong.size() == 4);
  CHECK(strong.front().mi == -1.5);
  CHECK(strong.back().mi == 1.5);
  CHECK(strong.front().b_center == doctest::Approx(0.2565).epsilon(1e-3));
  CHECK(strong.back().b_center == doctest::Approx(0.3048).epsilon(1e-3));
}

TEST_CASE("resonance input checks") {
  SpinSystem s;
  CHECK_THROWS_AS(resonance_fields(s, -1.0, {0.1, 0.2}), InvalidInput);
  CHECK_THROWS_AS(resonance_fields(s, 9e9, {0.3, 0.2}), InvalidInput);
  ResonanceOptions o;
  o.scan_points = 1;
  CHECK_THROWS_AS(resonance_fields(s, 9e9, {0.1, 0.2}, {0, 0, 1}, o), InvalidInput);
}

#include <random>

#include "doctest.h"
#include "spinres/errors.hpp"
#include "spinres/spin_algebra.hpp"
#include "support.hpp"

using namespace spinres;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("spin 1/2 and 3/2 operators") {
  const auto s = spin_operators(0.5);
  CHECK(s.jz(0, 0).real() == 0.5);
  CHECK(s.jz(1, 1).real() == -0.5);

  const auto i = spin_operators(1.5);
  REQUIRE(i.dim() == 4);
  CHECK(i.jz(0, 0).real() == 1.5);
  CHECK(i.jz(3, 3).real() == -1.5);
  CHECK(i.jplus(0, 1).real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(i.jplus(1, 2).real() == doctest::Approx(2.0));
  CHECK(i.jplus(2, 3).real() == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("non half-integer spin is rejected") {
  CHECK_THROWS_AS(spin_operators(0.3), InvalidInput);
  CHECK_THROWS_AS(spin_operators(-0.5), InvalidInput);
  CHECK(spin_operators(0.0).dim() == 1);
}

TEST_CASE("property: commutators and Casimir for j up to 7/2") {
  const Complex i{0.0, 1.0};
  for (double j = 0.5; j <= 3.5; j += 0.5) {
    const auto o = spin_operators(j);
    CHECK(max_abs(o.jx * o.jy - o.jy * o.jx - i * o.jz) < 1e-13);
    CHECK(max_abs(o.jy * o.jz - o.jz * o.jy - i * o.jx) < 1e-13);
    CHECK(max_abs(o.jz * o.jx - o.jx * o.jz - i * o.jy) < 1e-13);
    const ComplexMatrix casimir = o.jx * o.jx + o.jy * o.jy + o.jz * o.jz;
    CHECK(max_abs(casimir - j * (j + 1) * ComplexMatrix::Identity(o.dim(), o.dim())) < 1e-13);
    CHECK(max_abs(o.jx - o.jx.adjoint()) == 0.0);
    CHECK(max_abs(o.jy - o.jy.adjoint()) == 0.0);
    CHECK(max_abs(o.jplus - o.jminus.adjoint()) == 0.0);
  }
}

TEST_CASE("two-level Zeeman") {
  SpinSystem s;
  s.I = 0.0;
  s.g_par = 2.0;
  const auto h = build_hamiltonian(s, {0, 0, 1.0});
  REQUIRE(h.rows() == 2);
  const double beta = units::constants().bohr_magneton;
  CHECK(h(0, 0).real() == doctest::Approx(beta));
  CHECK(h(1, 1).real() == doctest::Approx(-beta));
}

TEST_CASE("field along z without couplings commutes with Sz") {
  SpinSystem s;
  s.g_par = 2.1;
  s.g_perp = 2.3;
  HamiltonianBuilder hb(s);
  const auto h = hb({0, 0, 0.3});
  CHECK(max_abs(h * hb.sz() - hb.sz() * h) < 1e-40);
}

TEST_CASE("quadrupole-only pattern") {
  SpinSystem s;
  s.P_par = 1.0;
  const auto h = build_hamiltonian(s, {});
  const double expect[] = {1, -1, -1, 1, 1, -1, -1, 1};
  for (int k = 0; k < 8; ++k) CHECK(h(k, k).real() == doctest::Approx(expect[k]));
  CHECK(max_abs(h - ComplexMatrix(h.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("zero system gives the zero matrix") {
  SpinSystem s;
  CHECK(max_abs(build_hamiltonian(s, {})) == 0.0);
}

TEST_CASE("basis labels are descending") {
  const auto l = basis_labels(SpinSystem{});
  REQUIRE(l.size() == 8);
  CHECK(l[0] == std::pair{0.5, 1.5});
  CHECK(l[3] == std::pair{0.5, -1.5});
  CHECK(l[4] == std::pair{-0.5, 1.5});
  CHECK(l[7] == std::pair{-0.5, -1.5});
}

TEST_CASE("validation") {
  SpinSystem s;
  s.g_par = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidInput);
  s = SpinSystem{};
  s.S = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidInput);
  s = SpinSystem{};
  s.I = 1.2;
  CHECK_THROWS_AS(s.validate(), InvalidInput);
  CHECK_THROWS_AS(FieldVector{}.unit(), InvalidInput);
}

TEST_CASE("property: exact Hermiticity, zero trace and diagonal closed form") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0), gd(1.8, 2.6), bd(0.0, 0.6);
  const double beta = units::constants().bohr_magneton;
  for (int trial = 0; trial < 200; ++trial) {
    SpinSystem s;
    s.S = 0.5 * (1 + trial % 3);
    s.I = 0.5 * (trial % 6);
    s.g_par = gd(rng);
    s.g_perp = gd(rng);
    s.A_par = units::hyperfine_to_joule(200.0 * u(rng));
    s.A_perp = units::hyperfine_to_joule(50.0 * u(rng));
    s.P_par = units::hyperfine_to_joule(20.0 * u(rng));
    s.gI_par = 1e-3 * u(rng);
    const FieldVector b{0.1 * u(rng), 0.1 * u(rng), bd(rng)};
    const auto h = build_hamiltonian(s, b);
    CHECK(max_abs(h - h.adjoint()) == 0.0);
    CHECK(trace_check(h) <= 1e-12 * h.norm());

    s.A_perp = 0.0;
    const double bz = bd(rng);
    const auto hd = build_hamiltonian(s, {0, 0, bz});
    const auto labels = basis_labels(s);
    const double ii = s.I * (s.I + 1) / 3.0;
    for (int k = 0; k < hd.rows(); ++k) {
      const auto [ms, mi] = labels[k];
      const double e = s.g_par * beta * bz * ms + s.A_par * ms * mi + s.P_par * (mi * mi - ii) - beta * bz * s.gI_par * mi;
      CHECK(std::abs(hd(k, k).real() - e) <= 1e-13 * std::max(std::abs(e), hd.cwiseAbs().maxCoeff()));
    }
    CHECK(max_abs(hd - ComplexMatrix(hd.diagonal().asDiagonal())) == 0.0);
  }
}

TEST_CASE("property: Hamiltonian is linear in couplings and field") {
  auto s = test::reference_system();
  const FieldVector b{0.01, 0.02, 0.27};
  const double c = 3.7;
  const auto h = build_hamiltonian(s, b);
  SpinSystem t = s;
  t.A_par *= c;
  t.A_perp *= c;
  t.P_par *= c;
  // The nuclear Zeeman term already scales with |b|.
  const auto hc = build_hamiltonian(t, b.scaled(c));
  CHECK((hc - c * h).norm() <= 1e-13 * hc.norm());
}

#include "spinres/spin_algebra.hpp"

#include <cmath>
#include <string>

#include "spinres/errors.hpp"
#include "spinres/units.hpp"

namespace spinres {

bool is_half_integer(double j) {
  if (!std::isfinite(j) || j < 0.0) return false;
  const double twice = 2.0 * j;
  return std::abs(twice - std::round(twice)) < 1e-12;
}

SpinOperators spin_operators(double j) {
  if (!is_half_integer(j)) {
    throw InvalidInput("spin quantum number must be a non-negative half-integer, got " +
                       std::to_string(j));
  }
  const int n = static_cast<int>(std::lround(2.0 * j)) + 1;
  j = 0.5 * (n - 1);

  SpinOperators op;
  op.j = j;
  op.jz = ComplexMatrix::Zero(n, n);
  op.jplus = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double m = j - k;
    op.jz(k, k) = m;
    // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>; |m+1> sits one row above.
    if (k > 0) op.jplus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  op.jminus = op.jplus.adjoint();
  op.jx = 0.5 * (op.jplus + op.jminus);
  op.jy = Complex(0.0, -0.5) * (op.jplus - op.jminus);
  return op;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void SpinSystem::validate() const {
  if (!is_half_integer(S) || !(S > 0.0)) throw InvalidInput("S must be a positive half-integer");
  if (!is_half_integer(I)) throw InvalidInput("I must be a non-negative half-integer");
  if (!(g_par > 0.0) || !(g_perp > 0.0)) throw InvalidInput("g_par and g_perp must be positive");
  for (double v : {A_par, A_perp, P_par, gI_par})
    if (!std::isfinite(v)) throw InvalidInput("spin-Hamiltonian parameters must be finite");
}

double FieldVector::norm() const { return std::sqrt(bx * bx + by * by + bz * bz); }

FieldVector FieldVector::unit() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("field direction must be a finite non-zero vector");
  return scaled(1.0 / n);
}

std::vector<std::pair<double, double>> basis_labels(const SpinSystem& sys) {
  std::vector<std::pair<double, double>> labels;
  labels.reserve(sys.dim());
  for (int a = 0; a < sys.electron_dim(); ++a)
    for (int b = 0; b < sys.nuclear_dim(); ++b) labels.emplace_back(sys.S - a, sys.I - b);
  return labels;
}

HamiltonianBuilder::HamiltonianBuilder(const SpinSystem& sys)
    : sys_(sys), s_(spin_operators(sys.S)), i_(spin_operators(sys.I)) {
  sys_.validate();
  const ComplexMatrix one_s = ComplexMatrix::Identity(s_.dim(), s_.dim());
  const ComplexMatrix one_i = ComplexMatrix::Identity(i_.dim(), i_.dim());
  sx_ = kron(s_.jx, one_i);
  sy_ = kron(s_.jy, one_i);
  sz_ = kron(s_.jz, one_i);
  iz_ = kron(one_s, i_.jz);

  const double ii1 = sys.I * (sys.I + 1.0);
  const ComplexMatrix quad = i_.jz * i_.jz - (ii1 / 3.0) * one_i;
  field_free_ = sys.A_par * kron(s_.jz, i_.jz) +
                sys.A_perp * (kron(s_.jx, i_.jx) + kron(s_.jy, i_.jy)) +
                sys.P_par * kron(one_s, quad);
}

ComplexMatrix HamiltonianBuilder::operator()(const FieldVector& b) const {
  const double beta = units::constants().bohr_magneton;
  ComplexMatrix h = field_free_;
  h += (beta * sys_.g_par * b.bz) * sz_;
  h += (beta * sys_.g_perp * b.bx) * sx_;
  h += (beta * sys_.g_perp * b.by) * sy_;
  h -= (beta * b.norm() * sys_.gI_par) * iz_;
  // Round-off in the sums above can leave ulp-level asymmetry; mirror it away.
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    h(r, r) = h(r, r).real();
    for (Eigen::Index c = r + 1; c < h.cols(); ++c) h(c, r) = std::conj(h(r, c));
  }
  return h;
}

ComplexMatrix build_hamiltonian(const SpinSystem& sys, const FieldVector& b) {
  return HamiltonianBuilder(sys)(b);
}

double trace_check(const ComplexMatrix& h) { return std::abs(h.trace()); }

}  // namespace spinres

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

namespace spinres {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Angular-momentum matrices in the |j, m> basis with m descending
/// (row 0 is m = +j).
struct SpinOperators {
  double j = 0.0;
  ComplexMatrix jx, jy, jz, jplus, jminus;

  int dim() const { return static_cast<int>(jz.rows()); }
};

/// True when 2j is a non-negative integer.
bool is_half_integer(double j);

/// Throws InvalidInput unless 2j is a non-negative integer.
SpinOperators spin_operators(double j);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Spin-Hamiltonian parameters of one paramagnetic centre with axial
/// symmetry about z. Energies are in joules. `gI_par` is the nuclear g-factor
/// expressed against the electron Bohr magneton, so the nuclear Zeeman term is
/// -beta * |B| * gI_par * Iz.
struct SpinSystem {
  double S = 0.5;
  double I = 1.5;
  double g_par = 2.0;
  double g_perp = 2.0;
  double A_par = 0.0;
  double A_perp = 0.0;
  double P_par = 0.0;
  double gI_par = 0.0;

  int electron_dim() const { return static_cast<int>(2.0 * S + 1.5); }
  int nuclear_dim() const { return static_cast<int>(2.0 * I + 1.5); }
  int dim() const { return electron_dim() * nuclear_dim(); }

  /// Throws InvalidInput when S <= 0, I < 0, spins are not half-integers or
  /// a g value is not positive.
  void validate() const;

  friend bool operator==(const SpinSystem&, const SpinSystem&) = default;
};

/// Static field in tesla.
struct FieldVector {
  double bx = 0.0;
  double by = 0.0;
  double bz = 0.0;

  double norm() const;
  FieldVector scaled(double s) const { return {bx * s, by * s, bz * s}; }
  FieldVector unit() const;

  friend bool operator==(const FieldVector&, const FieldVector&) = default;
};

/// (M_S, M_I) of each product-basis index, |M_S> (x) |M_I>, both descending.
std::vector<std::pair<double, double>> basis_labels(const SpinSystem& sys);

/// Precomputes the field-independent pieces of the Hamiltonian so that
/// repeated evaluation along a field sweep only rescales matrices.
class HamiltonianBuilder {
 public:
  explicit HamiltonianBuilder(const SpinSystem& sys);

  ComplexMatrix operator()(const FieldVector& b) const;

  const SpinSystem& system() const { return sys_; }
  const SpinOperators& electron() const { return s_; }
  const SpinOperators& nucleus() const { return i_; }

  /// S_x (x) 1, S_y (x) 1, S_z (x) 1 in the product space.
  const ComplexMatrix& sx() const { return sx_; }
  const ComplexMatrix& sy() const { return sy_; }
  const ComplexMatrix& sz() const { return sz_; }

 private:
  SpinSystem sys_;
  SpinOperators s_, i_;
  ComplexMatrix sx_, sy_, sz_, iz_;
  ComplexMatrix field_free_;  // hyperfine + quadrupole
};

/// Electron Zeeman plus hyperfine, quadrupole and nuclear Zeeman terms for
/// field b; dimension (2S+1)(2I+1); Hermitian by construction.
ComplexMatrix build_hamiltonian(const SpinSystem& sys, const FieldVector& b);

/// |trace(H)|. Every term of the Hamiltonian is traceless, so this is a
/// consistency probe expected to be ~1e-12 * ||H|| or smaller.
double trace_check(const ComplexMatrix& h);

}  // namespace spinres

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <sstream>
#include <string>

#include "spinres/eigen_transitions.hpp"
#include "spinres/errors.hpp"

namespace spinres {
namespace {

constexpr int kMaxDim = 64;
constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-14;

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      if (r != c) sum += std::norm(a(r, c));
  return std::sqrt(sum);
}

// Annihilates a(p, q) with the unitary U = diag(1, e^{-i alpha}) * R(theta)
// acting on the (p, q) plane, where a(p, q) = |a(p, q)| e^{i alpha}.
void rotate(ComplexMatrix& a, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;
  const Complex phase_conj = std::conj(phase);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * phase_conj * akq;
    a(k, q) = s * akp + c * phase_conj * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * phase_conj * vkq;
    v(k, q) = s * vkp + c * phase_conj * vkq;
  }
}

Eigen::Index dominant_index(const ComplexMatrix& v, Eigen::Index col) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    const double mag = std::abs(v(r, col));
    // Prefer the lower index when two amplitudes agree to rounding.
    if (mag > best_mag * (1.0 + 1e-12)) {
      best_mag = mag;
      best = r;
    }
  }
  return best;
}

}  // namespace

double max_asymmetry(const ComplexMatrix& h) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < h.rows(); ++r)
    for (Eigen::Index c = r; c < h.cols(); ++c)
      worst = std::max(worst, std::abs(h(r, c) - std::conj(h(c, r))));
  return worst;
}

EigenSystem eigensystem(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw InvalidInput("eigensystem needs a non-empty square matrix");
  if (h.rows() > kMaxDim) {
    throw InvalidInput("eigensystem supports dimension <= " + std::to_string(kMaxDim) + ", got " +
                       std::to_string(h.rows()));
  }
  const double scale = h.cwiseAbs().maxCoeff();
  const double asym = max_asymmetry(h);
  if (!std::isfinite(scale)) throw InvalidInput("eigensystem input has non-finite entries");
  if (asym > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |H - H^dagger| = " << asym;
    throw InvalidInput(msg.str());
  }

  const Eigen::Index n = h.rows();
  ComplexMatrix a = 0.5 * (h + h.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double tol = kOffDiagonalTolerance * a.norm();

  int sweep = 0;
  while (off_diagonal_norm(a) > tol) {
    if (++sweep > kMaxSweeps) throw NumericError("Jacobi eigensolver did not converge");
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Eigen::Index> dominant(n);
  for (Eigen::Index k = 0; k < n; ++k) dominant[k] = dominant_index(v, k);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });
  // Inside each cluster of (numerically) equal eigenvalues, order by dominant basis index.
  const double tie = 1e-12 * std::max(a.norm(), std::numeric_limits<double>::min());
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index end = start + 1;
    while (end < n && a(order[end], order[end]).real() - a(order[end - 1], order[end - 1]).real() <= tie) ++end;
    std::stable_sort(order.begin() + start, order.begin() + end,
                     [&](Eigen::Index x, Eigen::Index y) { return dominant[x] < dominant[y]; });
    start = end;
  }

  EigenSystem es;
  es.values.resize(n);
  es.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[k];
    es.values[k] = a(src, src).real();
    Eigen::VectorXcd col = v.col(src);
    const Complex lead = col[dominant[src]];
    if (std::abs(lead) > 0.0) {
      col *= std::conj(lead) / std::abs(lead);
      col[dominant[src]] = std::abs(lead);
    }
    es.vectors.col(k) = col;
  }
  return es;
}

}  // namespace spinres

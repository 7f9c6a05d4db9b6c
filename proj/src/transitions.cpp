#include <algorithm>
#include <cmath>
#include <string>

#include "spinres/eigen_transitions.hpp"
#include "spinres/errors.hpp"
#include "spinres/units.hpp"

namespace spinres {
namespace {

Eigen::Index dominant_row(const Eigen::VectorXcd& v) {
  Eigen::Index best = 0;
  v.cwiseAbs2().maxCoeff(&best);
  return best;
}

// Greedy maximum-overlap assignment of previous states onto current eigenvectors.
std::vector<int> match_states(const ComplexMatrix& prev, const ComplexMatrix& cur) {
  const int n = static_cast<int>(prev.cols());
  const Eigen::MatrixXd overlap = (prev.adjoint() * cur).cwiseAbs();
  std::vector<int> assign(n, -1);
  std::vector<bool> taken(n, false);
  for (int step = 0; step < n; ++step) {
    double best = -1.0;
    int bt = -1, bj = -1;
    for (int t = 0; t < n; ++t) {
      if (assign[t] >= 0) continue;
      for (int j = 0; j < n; ++j) {
        if (!taken[j] && overlap(t, j) > best) {
          best = overlap(t, j);
          bt = t;
          bj = j;
        }
      }
    }
    assign[bt] = bj;
    taken[bj] = true;
  }
  return assign;
}

// Index of the eigenvector best matching `ref`, skipping `exclude`.
int best_match(const ComplexMatrix& vectors, const Eigen::VectorXcd& ref, int exclude) {
  int best = -1;
  double best_overlap = -1.0;
  for (int j = 0; j < vectors.cols(); ++j) {
    if (j == exclude) continue;
    const double o = std::abs(vectors.col(j).dot(ref));
    if (o > best_overlap) {
      best_overlap = o;
      best = j;
    }
  }
  return best;
}

}  // namespace

std::vector<Transition> transition_table(const EigenSystem& es, const ComplexMatrix& op,
                                         double intensity_floor) {
  if (op.rows() != es.dim() || op.cols() != es.dim()) throw InvalidInput("operator dimension mismatch");
  const ComplexMatrix op_l = op * es.vectors;
  std::vector<Transition> out;
  for (int l = 0; l < es.dim(); ++l) {
    for (int u = l + 1; u < es.dim(); ++u) {
      const double gap = es.values[u] - es.values[l];
      if (!(gap > 0.0)) continue;
      const double intensity = std::norm(es.vectors.col(u).dot(op_l.col(l)));
      if (intensity > intensity_floor) out.push_back({gap, intensity, l, u});
    }
  }
  return out;
}

ComplexMatrix transverse_operator(const HamiltonianBuilder& hb, const FieldVector& direction) {
  const FieldVector u = direction.unit();
  auto perpendicular = [&](FieldVector e) {
    const double d = e.bx * u.bx + e.by * u.by + e.bz * u.bz;
    return FieldVector{e.bx - d * u.bx, e.by - d * u.by, e.bz - d * u.bz};
  };
  FieldVector n = perpendicular({1, 0, 0});
  if (n.norm() < 1e-8) n = perpendicular({0, 1, 0});
  n = n.unit();
  return n.bx * hb.sx() + n.by * hb.sy() + n.bz * hb.sz();
}

std::vector<TransitionLine> resonance_fields(const SpinSystem& sys, double freq,
                                             std::pair<double, double> b_range,
                                             const FieldVector& direction,
                                             const ResonanceOptions& opts) {
  const auto [b_lo, b_hi] = b_range;
  if (!(freq > 0.0)) throw InvalidInput("resonance frequency must be positive");
  if (!(b_lo >= 0.0) || !(b_hi > b_lo)) throw InvalidInput("field range must satisfy 0 <= min < max");
  if (opts.scan_points < 2) throw InvalidInput("resonance scan needs at least 2 points");
  if (!(opts.tolerance_hz > 0.0)) throw InvalidInput("resonance tolerance must be positive");

  const HamiltonianBuilder hb(sys);
  const FieldVector dir = direction.unit();
  const ComplexMatrix op = transverse_operator(hb, dir);
  const auto labels = basis_labels(sys);
  const double h = units::constants().planck_h;
  const double target = h * freq;
  const double tol = h * opts.tolerance_hz;
  const int n = sys.dim();

  auto solve = [&](double b) { return eigensystem(hb(dir.scaled(b))); };

  std::vector<TransitionLine> lines;
  auto emit = [&](double b, const EigenSystem& es, int ia, int ib) {
    if (!(b > 0.0)) return;
    const int lower = es.values[ia] <= es.values[ib] ? ia : ib;
    const int upper = lower == ia ? ib : ia;
    const double intensity = std::norm(es.vectors.col(upper).dot(op * es.vectors.col(lower)));
    if (!(intensity > opts.intensity_floor)) return;
    const double gap = es.values[upper] - es.values[lower];
    const double mi = labels[dominant_row(es.vectors.col(lower))].second;
    lines.push_back({b, gap / h, mi, intensity, lower, upper});
  };

  auto bisect = [&](double lo, double hi, double f_lo, Eigen::VectorXcd va, Eigen::VectorXcd vb) {
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const EigenSystem es = solve(mid);
      const int ia = best_match(es.vectors, va, -1);
      const int ib = best_match(es.vectors, vb, ia);
      const double f_mid = std::abs(es.values[ib] - es.values[ia]) - target;
      if (std::abs(f_mid) <= tol || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
        emit(mid, es, ia, ib);
        return;
      }
      if ((f_mid < 0.0) == (f_lo < 0.0)) {
        lo = mid;
        f_lo = f_mid;
        va = es.vectors.col(ia);
        vb = es.vectors.col(ib);
      } else {
        hi = mid;
      }
    }
    throw NumericError("resonance bisection did not converge");
  };

  const double step = (b_hi - b_lo) / (opts.scan_points - 1);
  EigenSystem prev = solve(b_lo);
  std::vector<int> perm(n);
  for (int t = 0; t < n; ++t) perm[t] = t;
  auto mismatch = [&](const EigenSystem& es, const std::vector<int>& p, int a, int b) {
    return std::abs(es.values[p[b]] - es.values[p[a]]) - target;
  };

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (std::abs(mismatch(prev, perm, a, b)) <= tol) emit(b_lo, prev, perm[a], perm[b]);

  for (int k = 1; k < opts.scan_points; ++k) {
    const double b_prev = b_lo + (k - 1) * step;
    const double b_cur = k + 1 == opts.scan_points ? b_hi : b_lo + k * step;
    const EigenSystem cur = solve(b_cur);
    std::vector<int> tracked(n);
    {
      ComplexMatrix prev_cols(n, n);
      for (int t = 0; t < n; ++t) prev_cols.col(t) = prev.vectors.col(perm[t]);
      tracked = match_states(prev_cols, cur.vectors);
    }
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        const double f_prev = mismatch(prev, perm, a, b);
        const double f_cur = mismatch(cur, tracked, a, b);
        if (std::abs(f_cur) <= tol) {
          emit(b_cur, cur, tracked[a], tracked[b]);
        } else if (std::abs(f_prev) > tol && (f_prev < 0.0) != (f_cur < 0.0)) {
          bisect(b_prev, b_cur, f_prev, prev.vectors.col(perm[a]), prev.vectors.col(perm[b]));
        }
      }
    }
    prev = cur;
    perm = std::move(tracked);
  }

  std::sort(lines.begin(), lines.end(), [](const TransitionLine& x, const TransitionLine& y) {
    if (x.b_center != y.b_center) return x.b_center < y.b_center;
    return x.mi > y.mi;
  });
  return lines;
}

}  // namespace spinres

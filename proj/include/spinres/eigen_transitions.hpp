#pragma once

#include <span>
#include <utility>
#include <vector>

#include "spinres/resonator_mode.hpp"
#include "spinres/spin_algebra.hpp"

namespace spinres {

/// Full spectral decomposition of a Hermitian matrix.
/// Eigenvalues ascend; column k of `vectors` belongs to `values[k]`.
struct EigenSystem {
  Eigen::VectorXd values;
  ComplexMatrix vectors;

  int dim() const { return static_cast<int>(values.size()); }
};

/// Cyclic Jacobi diagonalisation, dimension <= 64.
///
/// Rotations sweep every (p, q) pair until the off-diagonal Frobenius norm
/// drops below 1e-14 ||H||_F. Degenerate eigenvalues are ordered by the
/// basis index carrying the largest amplitude, and each eigenvector's largest
/// component is made real positive so the output is deterministic.
///
/// Throws InvalidInput for non-square, oversized or non-Hermitian input (the
/// message reports the largest |H - H^dagger| entry), NumericError when the
/// sweeps fail to converge.
EigenSystem eigensystem(const ComplexMatrix& h);

/// Largest |H_ij - conj(H_ji)|.
double max_asymmetry(const ComplexMatrix& h);

struct Transition {
  double gap = 0.0;        // J, upper minus lower
  double intensity = 0.0;  // |<u|op|l>|^2
  int lower = 0;
  int upper = 0;
};

inline constexpr double kDefaultIntensityFloor = 1e-6;

/// Every level pair with positive gap whose matrix element of `op` exceeds
/// `intensity_floor`, ordered by (lower, upper).
std::vector<Transition> transition_table(const EigenSystem& es, const ComplexMatrix& op,
                                         double intensity_floor = kDefaultIntensityFloor);

/// Electron spin component transverse to the static field, S_perp (x) 1.
/// For a field along z this is S_x (x) 1.
ComplexMatrix transverse_operator(const HamiltonianBuilder& hb, const FieldVector& direction);

struct TransitionLine {
  double b_center = 0.0;   // T
  double frequency = 0.0;  // Hz
  double mi = 0.0;         // M_I of the dominant basis state of the lower level
  double intensity = 0.0;
  int lower = 0;  // level indices at the resonance field
  int upper = 0;
};

struct ResonanceOptions {
  int scan_points = 2000;
  double tolerance_hz = 1.0;
  double intensity_floor = kDefaultIntensityFloor;
};

/// Fields in [b_min, b_max] along `direction` where a tracked level pair is
/// separated by h f. Levels are followed across the scan by eigenvector
/// overlap, each sign change of |gap| - h f is bisected until it is within
/// h * tolerance_hz. Lines come back sorted by field, then by M_I.
std::vector<TransitionLine> resonance_fields(const SpinSystem& sys, double freq,
                                             std::pair<double, double> b_range,
                                             const FieldVector& direction = {0, 0, 1},
                                             const ResonanceOptions& opts = {});

struct Lineshape {
  enum class Kind { lorentzian, gaussian };
  Kind kind = Kind::lorentzian;
  double hwhm = 1e6;  // Hz, half width at half maximum

  /// Peak-normalised profile: 1 at zero detuning, 1/2 at |df| = hwhm.
  double operator()(double detuning) const;

  friend bool operator==(const Lineshape&, const Lineshape&) = default;
};

/// Field x frequency response around one mode. `response` is row-major with
/// one row per field point.
struct SpectrumMap {
  std::vector<double> field_axis;  // T
  std::vector<double> freq_axis;   // Hz
  std::vector<double> response;
  ResonatorMode mode;
  /// Lines from resonance_fields at the mode frequency inside the field axis.
  std::vector<TransitionLine> crossings;

  double at(std::size_t field_index, std::size_t freq_index) const {
    return response[field_index * freq_axis.size() + freq_index];
  }
};

struct MapOptions {
  FieldVector direction{0, 0, 1};
  Lineshape lineshape;
  double span_hz = 2e6;  // frequency window centred on the mode
  int freq_points = 201;
  /// Lines whose M_I label matches one of these are left out (strain-quenched lines).
  std::vector<double> hidden_mi;
  double intensity_floor = kDefaultIntensityFloor;
  /// Crossings weaker than this fraction of the strongest one are not listed.
  double crossing_rel_intensity = 0.01;
  int threads = 1;
  ResonanceOptions resonance;
};

/// One map per mode: response(B, f) = sum over lines of intensity * shape(f - gap(B)/h).
/// Field columns may be computed by `threads` workers; results are merged by index.
std::vector<SpectrumMap> spectrum_map(const SpinSystem& sys, std::span<const ResonatorMode> modes,
                                      std::span<const double> b_grid, const MapOptions& opts = {});

/// Width in Hz of the contiguous region around the strongest response of the
/// field slice nearest `b_slice` that stays at or above threshold * peak.
/// Each sample owns the span up to the midpoints with its neighbours, so a
/// single-sample peak measures one grid step.
/// Throws InvalidInput when b_slice is outside the field axis or the threshold
/// is not in (0, 1), NumericError when the slice has no response.
double aggregate_width(const SpectrumMap& map, double b_slice, double threshold);

/// Fields of local maxima along the field axis in the frequency row nearest
/// `freq`, keeping maxima above rel_threshold of the row maximum.
std::vector<double> field_peaks_at(const SpectrumMap& map, double freq, double rel_threshold = 0.05);

}  // namespace spinres

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "spinres/eigen_transitions.hpp"
#include "spinres/errors.hpp"
#include "spinres/units.hpp"

namespace spinres {
namespace {

struct FieldLine {
  double freq;  // Hz
  double intensity;
  double mi;
};

bool is_hidden(double mi, const std::vector<double>& hidden) {
  return std::any_of(hidden.begin(), hidden.end(), [&](double h) { return std::abs(h - mi) < 1e-9; });
}

}  // namespace

double Lineshape::operator()(double detuning) const {
  const double x = detuning / hwhm;
  switch (kind) {
    case Kind::lorentzian:
      return 1.0 / (1.0 + x * x);
    case Kind::gaussian:
      return std::exp(-std::numbers::ln2 * x * x);
  }
  return 0.0;
}

std::vector<SpectrumMap> spectrum_map(const SpinSystem& sys, std::span<const ResonatorMode> modes,
                                      std::span<const double> b_grid, const MapOptions& opts) {
  if (modes.empty()) return {};
  if (b_grid.empty()) throw InvalidInput("field grid must not be empty");
  if (!std::is_sorted(b_grid.begin(), b_grid.end())) throw InvalidInput("field grid must ascend");
  if (!(opts.lineshape.hwhm > 0.0)) throw InvalidInput("lineshape width must be positive");
  if (opts.freq_points < 1) throw InvalidInput("frequency window needs at least one point");
  if (!(opts.span_hz >= 0.0)) throw InvalidInput("frequency span must be non-negative");
  for (const auto& m : modes) m.validate();

  const HamiltonianBuilder hb(sys);
  const FieldVector dir = opts.direction.unit();
  const ComplexMatrix op = transverse_operator(hb, dir);
  const auto labels = basis_labels(sys);
  const double h = units::constants().planck_h;

  // Lines at every field point, shared by all modes.
  std::vector<std::vector<FieldLine>> per_field(b_grid.size());
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < b_grid.size(); i += stride) {
      const EigenSystem es = eigensystem(hb(dir.scaled(b_grid[i])));
      std::vector<FieldLine> lines;
      for (const Transition& t : transition_table(es, op, opts.intensity_floor)) {
        Eigen::Index row = 0;
        es.vectors.col(t.lower).cwiseAbs2().maxCoeff(&row);
        const double mi = labels[row].second;
        if (!is_hidden(mi, opts.hidden_mi)) lines.push_back({t.gap / h, t.intensity, mi});
      }
      per_field[i] = std::move(lines);
    }
  };
  const std::size_t workers =
      std::clamp<std::size_t>(opts.threads < 1 ? 1 : static_cast<std::size_t>(opts.threads), 1, b_grid.size());
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          try {
            work(w, workers);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
    }
    for (const auto& e : failures)
      if (e) std::rethrow_exception(e);
  }

  std::vector<SpectrumMap> maps;
  maps.reserve(modes.size());
  for (const ResonatorMode& mode : modes) {
    SpectrumMap map;
    map.mode = mode;
    map.field_axis.assign(b_grid.begin(), b_grid.end());
    const int nf = opts.freq_points;
    map.freq_axis.resize(nf);
    for (int j = 0; j < nf; ++j)
      map.freq_axis[j] = nf == 1 ? mode.freq : mode.freq - 0.5 * opts.span_hz + j * opts.span_hz / (nf - 1);
    map.response.assign(b_grid.size() * nf, 0.0);
    for (std::size_t i = 0; i < b_grid.size(); ++i)
      for (int j = 0; j < nf; ++j) {
        double sum = 0.0;
        for (const FieldLine& l : per_field[i]) sum += l.intensity * opts.lineshape(map.freq_axis[j] - l.freq);
        map.response[i * nf + j] = sum;
      }

    if (b_grid.size() >= 2 && b_grid.back() > b_grid.front()) {
      auto found = resonance_fields(sys, mode.freq, {b_grid.front(), b_grid.back()}, dir, opts.resonance);
      std::erase_if(found, [&](const TransitionLine& l) { return is_hidden(l.mi, opts.hidden_mi); });
      double strongest = 0.0;
      for (const auto& l : found) strongest = std::max(strongest, l.intensity);
      std::erase_if(found, [&](const TransitionLine& l) {
        return l.intensity < opts.crossing_rel_intensity * strongest;
      });
      map.crossings = std::move(found);
    }
    maps.push_back(std::move(map));
  }
  return maps;
}

double aggregate_width(const SpectrumMap& map, double b_slice, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw InvalidInput("threshold must lie in (0, 1)");
  const auto& fa = map.field_axis;
  if (fa.empty() || map.freq_axis.empty()) throw InvalidInput("spectrum map is empty");
  if (!(b_slice >= fa.front() && b_slice <= fa.back())) throw InvalidInput("field slice lies outside the field axis");

  const auto it = std::lower_bound(fa.begin(), fa.end(), b_slice);
  std::size_t i = static_cast<std::size_t>(it - fa.begin());
  if (i > 0 && (i == fa.size() || b_slice - fa[i - 1] <= fa[i] - b_slice)) --i;

  const auto& f = map.freq_axis;
  const std::size_t nf = f.size();
  std::size_t peak = 0;
  for (std::size_t j = 1; j < nf; ++j)
    if (map.at(i, j) > map.at(i, peak)) peak = j;
  const double top = map.at(i, peak);
  if (!(top > 0.0)) throw NumericError("no spin ensemble response at the requested field slice");
  if (nf == 1) return 0.0;

  const double level = threshold * top;
  std::size_t lo = peak, hi = peak;
  while (lo > 0 && map.at(i, lo - 1) >= level) --lo;
  while (hi + 1 < nf && map.at(i, hi + 1) >= level) ++hi;

  const double left = lo == 0 ? f[0] - 0.5 * (f[1] - f[0]) : 0.5 * (f[lo - 1] + f[lo]);
  const double right = hi + 1 == nf ? f[nf - 1] + 0.5 * (f[nf - 1] - f[nf - 2]) : 0.5 * (f[hi] + f[hi + 1]);
  return right - left;
}

std::vector<double> field_peaks_at(const SpectrumMap& map, double freq, double rel_threshold) {
  const auto& f = map.freq_axis;
  const auto& b = map.field_axis;
  if (f.empty() || b.empty()) return {};
  std::size_t col = 0;
  for (std::size_t j = 1; j < f.size(); ++j)
    if (std::abs(f[j] - freq) < std::abs(f[col] - freq)) col = j;

  double top = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) top = std::max(top, map.at(i, col));
  std::vector<double> peaks;
  if (!(top > 0.0)) return peaks;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double v = map.at(i, col);
    const bool rises = i == 0 || v > map.at(i - 1, col);
    const bool holds = i + 1 == b.size() || v >= map.at(i + 1, col);
    if (rises && holds && v >= rel_threshold * top) peaks.push_back(b[i]);
  }
  return peaks;
}

}  // namespace spinres

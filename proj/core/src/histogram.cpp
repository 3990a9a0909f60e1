#include "cooccur/histogram.hpp"

#include <cmath>

#include "cooccur/errors.hpp"

namespace cooccur {

void AxisSpec::validate() const {
  if (bins < 1) throw ConfigError("axis spec: bins must be >= 1");
  if (!(min < max)) throw ConfigError("axis spec: min must be < max");
  if (scale == Scale::log10 && !(min > 0)) {
    throw ConfigError("axis spec: log axis requires min > 0");
  }
}

std::vector<double> AxisSpec::edges() const {
  std::vector<double> out(static_cast<std::size_t>(bins) + 1);
  if (scale == Scale::linear) {
    const double step = (max - min) / bins;
    for (int i = 0; i <= bins; ++i) out[i] = min + step * i;
  } else {
    const double lo = std::log10(min);
    const double step = (std::log10(max) - lo) / bins;
    for (int i = 0; i <= bins; ++i) out[i] = std::pow(10.0, lo + step * i);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

std::optional<int> AxisSpec::bin_of(double x) const {
  double t;
  if (scale == Scale::linear) {
    t = (x - min) / (max - min);
  } else {
    if (!(x > 0)) return std::nullopt;
    t = (std::log10(x) - std::log10(min)) / (std::log10(max) - std::log10(min));
  }
  if (t < 0 || t > 1 || std::isnan(t)) return std::nullopt;
  int bin = static_cast<int>(t * bins);
  if (bin >= bins) bin = bins - 1;  // x == max
  return bin;
}

HistogramGrid::HistogramGrid(AxisSpec x, AxisSpec y) : x_(x), y_(y) {
  x_.validate();
  y_.validate();
  cells_.assign(static_cast<std::size_t>(x_.bins) * y_.bins, 0.0);
}

void HistogramGrid::add(double x, double y, double weight) {
  const auto ix = x_.bin_of(x);
  const auto iy = y_.bin_of(y);
  if (!ix || !iy) {
    ++skipped_;
    return;
  }
  cells_[static_cast<std::size_t>(*ix) * y_.bins + *iy] += weight;
  ++entries_;
  total_weight_ += weight;
}

std::optional<double> grid_cosine(const HistogramGrid& a, const HistogramGrid& b) {
  if (a.cells().size() != b.cells().size()) {
    throw ConfigError("grid_cosine: grids have different shapes");
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.cells().size(); ++i) {
    dot += a.cells()[i] * b.cells()[i];
    na += a.cells()[i] * a.cells()[i];
    nb += b.cells()[i] * b.cells()[i];
  }
  if (na == 0 || nb == 0) return std::nullopt;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace cooccur

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cooccur {

// Binning spec for one histogram axis. Log axes bin log10(x).
struct AxisSpec {
  double min = 0;
  double max = 1;
  int bins = 1;
  enum class Scale { linear, log10 } scale = Scale::linear;

  void validate() const;  // throws ConfigError
  std::vector<double> edges() const;
  // nullopt when x falls outside [min, max] (or x <= 0 on a log axis);
  // x == max lands in the last bin.
  std::optional<int> bin_of(double x) const;
};

// Dense 2D weighted histogram backing the figure-style outputs.
class HistogramGrid {
public:
  HistogramGrid() = default;
  HistogramGrid(AxisSpec x, AxisSpec y);

  void add(double x, double y, double weight = 1.0);

  const AxisSpec& x_axis() const { return x_; }
  const AxisSpec& y_axis() const { return y_; }
  double at(int ix, int iy) const { return cells_[static_cast<std::size_t>(ix) * y_.bins + iy]; }
  const std::vector<double>& cells() const { return cells_; }  // row-major, x outer
  std::uint64_t entries() const { return entries_; }
  std::uint64_t skipped() const { return skipped_; }
  double total_weight() const { return total_weight_; }

private:
  AxisSpec x_;
  AxisSpec y_;
  std::vector<double> cells_;
  std::uint64_t entries_ = 0;
  std::uint64_t skipped_ = 0;
  double total_weight_ = 0;
};

// Cosine similarity of two equally shaped grids; nullopt when either grid
// has zero norm. Shape mismatch throws ConfigError.
std::optional<double> grid_cosine(const HistogramGrid& a, const HistogramGrid& b);

}  // namespace cooccur

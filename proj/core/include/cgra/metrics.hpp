#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cgra/allocation.hpp"

namespace cgra {

/// How an execution contributes to a cell's activity.
enum class UtilizationMode : std::uint8_t {
  ExecutionCount,    ///< each execution counts once (default)
  DurationWeighted,  ///< each execution weighted by its column count
};

/// Per-cell activity counters over all recorded executions.
class UtilizationMap {
 public:
  explicit UtilizationMap(FabricDims dims, UtilizationMode mode = UtilizationMode::ExecutionCount);

  /// Counts every physical cell covered by `alloc` once. Throws std::invalid_argument
  /// when the allocation was made for other fabric dimensions.
  void record_execution(const PhysicalAllocation& alloc);

  const FabricDims& dims() const { return dims_; }
  UtilizationMode mode() const { return mode_; }
  std::uint64_t total_executions() const { return total_; }
  std::uint64_t active_count(int row, int col) const { return counts_[index(row, col)]; }
  std::uint64_t total_activity() const;

  /// Raw counters, row-major.
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  /// Builds a map from raw row-major counters (used when re-reading exported data).
  static UtilizationMap from_counts(FabricDims dims, std::vector<std::uint64_t> counts,
                                    std::uint64_t total_executions);

  friend bool operator==(const UtilizationMap&, const UtilizationMap&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(dims_.cols) +
           static_cast<std::size_t>(col);
  }

  FabricDims dims_;
  UtilizationMode mode_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// rates[row][col] = active_count / total_executions. Throws std::domain_error when
/// nothing has been recorded.
std::vector<std::vector<double>> utilization_rates(const UtilizationMap& m);

struct UtilizationSummary {
  double avg = 0.0;
  double max = 0.0;
  double min = 0.0;
  Cell argmax;  ///< first maximum in (row, col) order
  double bin_width = 0.0;
  std::vector<std::uint64_t> histogram;
};

inline constexpr int kDefaultHistogramBins = 20;

/// Statistics over the rates; histogram bins are uniform over [0,1], rate 1.0 falls in
/// the last bin.
UtilizationSummary summarize(const UtilizationMap& m, int num_bins = kDefaultHistogramBins);

/// Header `#rows=W,cols=L,executions=N` then W lines of L rates with six decimals.
std::string export_heatmap(const UtilizationMap& m);

struct Heatmap {
  int rows = 0;
  int cols = 0;
  std::uint64_t executions = 0;
  std::vector<std::vector<double>> rates;
};

/// Throws std::runtime_error on malformed input.
Heatmap parse_heatmap(std::string_view csv);
std::string export_heatmap(const Heatmap& h);

/// JSON object with avg, max, min, argmax, histogram.
std::string summary_to_json(const UtilizationSummary& s);
UtilizationSummary summary_from_json(std::string_view text);

}  // namespace cgra

#include "cgra/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cgra {

UtilizationMap::UtilizationMap(FabricDims dims, UtilizationMode mode)
    : dims_(dims), mode_(mode) {
  dims_.validate();
  counts_.assign(static_cast<std::size_t>(dims_.num_cells()), 0);
}

UtilizationMap UtilizationMap::from_counts(FabricDims dims, std::vector<std::uint64_t> counts,
                                           std::uint64_t total_executions) {
  UtilizationMap m(dims);
  if (counts.size() != m.counts_.size())
    throw std::invalid_argument("counter grid does not match fabric dims");
  for (auto c : counts)
    if (c > total_executions) throw std::invalid_argument("count exceeds total executions");
  m.counts_ = std::move(counts);
  m.total_ = total_executions;
  return m;
}

void UtilizationMap::record_execution(const PhysicalAllocation& alloc) {
  if (alloc.dims.rows != dims_.rows || alloc.dims.cols != dims_.cols)
    throw std::invalid_argument("allocation dims do not match utilization map");
  const std::uint64_t weight =
      mode_ == UtilizationMode::DurationWeighted ? static_cast<std::uint64_t>(alloc.columns_used)
                                                 : 1;
  for (const auto& cells : alloc.cell_map)
    for (const Cell& c : cells) counts_[index(c.row, c.col)] += weight;
  total_ += weight;
}

std::uint64_t UtilizationMap::total_activity() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::vector<std::vector<double>> utilization_rates(const UtilizationMap& m) {
  if (m.total_executions() == 0) throw std::domain_error("no executions recorded");
  const auto& dims = m.dims();
  const double total = static_cast<double>(m.total_executions());
  std::vector<std::vector<double>> rates(dims.rows, std::vector<double>(dims.cols));
  for (int r = 0; r < dims.rows; ++r)
    for (int c = 0; c < dims.cols; ++c)
      rates[r][c] = static_cast<double>(m.active_count(r, c)) / total;
  return rates;
}

UtilizationSummary summarize(const UtilizationMap& m, int num_bins) {
  if (num_bins < 1) throw std::invalid_argument("num_bins must be >= 1");
  const auto rates = utilization_rates(m);

  UtilizationSummary s;
  s.bin_width = 1.0 / num_bins;
  s.histogram.assign(num_bins, 0);
  s.max = -1.0;
  s.min = 2.0;
  for (int r = 0; r < m.dims().rows; ++r) {
    for (int c = 0; c < m.dims().cols; ++c) {
      const double u = rates[r][c];
      if (u > s.max) {
        s.max = u;
        s.argmax = {r, c};
      }
      s.min = std::min(s.min, u);
      const int bin = std::min(num_bins - 1, static_cast<int>(u * num_bins));
      ++s.histogram[bin];
    }
  }
  // Mean from integer counts so both policies of a pair agree bit-for-bit.
  s.avg = static_cast<double>(m.total_activity()) /
          (static_cast<double>(m.total_executions()) * m.dims().num_cells());
  return s;
}

std::string export_heatmap(const Heatmap& h) {
  std::ostringstream out;
  out << "#rows=" << h.rows << ",cols=" << h.cols << ",executions=" << h.executions << "\n";
  char buf[32];
  for (const auto& row : h.rates) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.6f", row[c]);
      if (c) out << ",";
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

std::string export_heatmap(const UtilizationMap& m) {
  return export_heatmap(
      Heatmap{m.dims().rows, m.dims().cols, m.total_executions(), utilization_rates(m)});
}

Heatmap parse_heatmap(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("heatmap: empty input");

  Heatmap h;
  unsigned long long executions = 0;
  if (std::sscanf(line.c_str(), "#rows=%d,cols=%d,executions=%llu", &h.rows, &h.cols,
                  &executions) != 3 ||
      h.rows < 1 || h.cols < 1)
    throw std::runtime_error("heatmap: bad header '" + line + "'");
  h.executions = executions;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error("heatmap: bad value '" + cell + "'");
      }
    }
    if (static_cast<int>(row.size()) != h.cols)
      throw std::runtime_error("heatmap: row has " + std::to_string(row.size()) + " values, expected " +
                               std::to_string(h.cols));
    h.rates.push_back(std::move(row));
  }
  if (static_cast<int>(h.rates.size()) != h.rows)
    throw std::runtime_error("heatmap: expected " + std::to_string(h.rows) + " rows, got " +
                             std::to_string(h.rates.size()));
  return h;
}

std::string summary_to_json(const UtilizationSummary& s) {
  nlohmann::ordered_json j;
  j["avg"] = s.avg;
  j["max"] = s.max;
  j["min"] = s.min;
  j["argmax"] = {{"row", s.argmax.row}, {"col", s.argmax.col}};
  j["bin_width"] = s.bin_width;
  j["histogram"] = s.histogram;
  return j.dump(2) + "\n";
}

UtilizationSummary summary_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
    UtilizationSummary s;
    s.avg = j.at("avg").get<double>();
    s.max = j.at("max").get<double>();
    s.min = j.at("min").get<double>();
    s.argmax = {j.at("argmax").at("row").get<int>(), j.at("argmax").at("col").get<int>()};
    s.bin_width = j.value("bin_width", 0.0);
    s.histogram = j.at("histogram").get<std::vector<std::uint64_t>>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("summary: ") + e.what());
  }
}

}  // namespace cgra

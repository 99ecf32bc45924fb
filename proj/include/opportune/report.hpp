#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opportune/radio.hpp"

namespace opportune {

struct DeliveryRecord {
  std::string id;
  NodeId source;
  NodeId destination;
  double created_at;
  double delivered_at;
  std::uint32_t hops;

  friend bool operator==(const DeliveryRecord&, const DeliveryRecord&) = default;
};

/// Raw per-run counters and the delivery log; everything the metrics derive
/// from. n_relayed counts completed copy transfers (delivery hops included);
/// aborted transfers are tracked separately and excluded.
struct RunReport {
  std::string protocol;
  std::uint64_t seed = 0;
  std::uint64_t n_created = 0;
  std::uint64_t n_delivered = 0;
  std::uint64_t n_relayed = 0;
  std::uint64_t n_aborted = 0;
  std::uint64_t n_dropped_overflow = 0;
  std::uint64_t n_dropped_ttl = 0;
  std::vector<DeliveryRecord> deliveries;

  std::uint64_t n_dropped() const { return n_dropped_overflow + n_dropped_ttl; }

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Metric definitions. Undefined cases (no created / no delivered messages)
/// yield nullopt, which serializes to an empty CSV cell.
std::optional<double> delivery_probability(const RunReport& r);
std::optional<double> overhead_ratio(const RunReport& r);
std::optional<double> average_delay(const RunReport& r);
std::optional<double> average_hops(const RunReport& r);

struct RunMetrics {
  std::string protocol;
  std::uint64_t seed = 0;
  std::uint64_t created = 0;
  std::uint64_t delivered = 0;
  std::uint64_t relayed = 0;
  std::uint64_t aborted = 0;
  std::uint64_t dropped_overflow = 0;
  std::uint64_t dropped_ttl = 0;
  std::optional<double> delivery_prob;
  std::optional<double> avg_delay;
  std::optional<double> overhead;
  std::optional<double> avg_hops;
};

RunMetrics compute_metrics(const RunReport& r);

/// Mean and population standard deviation (divisor N) over the runs where the
/// metric was defined; excluded counts how many runs were left out.
struct MetricSummary {
  double mean = 0.0;
  double sd = 0.0;
  std::uint32_t runs = 0;
  std::uint32_t excluded = 0;
};

MetricSummary summarize(std::span<const std::optional<double>> values);

struct ProtocolSummary {
  std::string protocol;
  std::uint32_t runs = 0;
  MetricSummary delivery_prob;
  MetricSummary avg_delay;
  MetricSummary overhead;
  MetricSummary avg_hops;
  MetricSummary dropped;
};

/// Groups by protocol (order of first appearance preserved).
std::vector<ProtocolSummary> aggregate(std::span<const RunMetrics> runs);

/// CSV emission; deterministic bytes for identical inputs. Undefined metrics
/// become empty cells.
void write_runs_csv(const std::string& path, std::span<const RunMetrics> runs);
void write_summary_csv(const std::string& path, std::span<const ProtocolSummary> summaries);
void write_deliveries_csv(const std::string& path, std::span<const RunReport> reports);
/// plot_<metric>.csv with rows protocol,seed,value for the four bar-chart
/// metrics.
void write_plot_csvs(const std::string& directory, std::span<const RunMetrics> runs);

/// All of the above into one directory (runs.csv, summary.csv,
/// deliveries.csv, plot_*.csv). Creates the directory if needed.
void write_outputs(const std::string& directory, std::span<const RunReport> reports);

std::string csv_number(double v);

}  // namespace opportune

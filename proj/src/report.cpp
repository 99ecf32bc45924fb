#include "opportune/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace opportune {

std::optional<double> delivery_probability(const RunReport& r) {
  if (r.n_created == 0) return std::nullopt;
  return static_cast<double>(r.n_delivered) / static_cast<double>(r.n_created);
}

std::optional<double> overhead_ratio(const RunReport& r) {
  if (r.n_delivered == 0) return std::nullopt;
  return static_cast<double>(r.n_relayed - r.n_delivered) / static_cast<double>(r.n_delivered);
}

std::optional<double> average_delay(const RunReport& r) {
  if (r.n_delivered == 0) return std::nullopt;
  double sum = 0.0;
  for (const auto& d : r.deliveries) sum += d.delivered_at - d.created_at;
  return sum / static_cast<double>(r.n_delivered);
}

std::optional<double> average_hops(const RunReport& r) {
  if (r.n_delivered == 0) return std::nullopt;
  double sum = 0.0;
  for (const auto& d : r.deliveries) sum += static_cast<double>(d.hops);
  return sum / static_cast<double>(r.n_delivered);
}

RunMetrics compute_metrics(const RunReport& r) {
  RunMetrics m;
  m.protocol = r.protocol;
  m.seed = r.seed;
  m.created = r.n_created;
  m.delivered = r.n_delivered;
  m.relayed = r.n_relayed;
  m.aborted = r.n_aborted;
  m.dropped_overflow = r.n_dropped_overflow;
  m.dropped_ttl = r.n_dropped_ttl;
  m.delivery_prob = delivery_probability(r);
  m.avg_delay = average_delay(r);
  m.overhead = overhead_ratio(r);
  m.avg_hops = average_hops(r);
  return m;
}

MetricSummary summarize(std::span<const std::optional<double>> values) {
  MetricSummary s;
  double sum = 0.0;
  for (const auto& v : values) {
    if (v.has_value()) {
      sum += *v;
      ++s.runs;
    } else {
      ++s.excluded;
    }
  }
  if (s.runs == 0) return s;
  s.mean = sum / s.runs;
  double ss = 0.0;
  for (const auto& v : values) {
    if (v.has_value()) {
      const double d = *v - s.mean;
      ss += d * d;
    }
  }
  s.sd = std::sqrt(ss / s.runs);  // population sd: divisor N
  return s;
}

std::vector<ProtocolSummary> aggregate(std::span<const RunMetrics> runs) {
  std::vector<ProtocolSummary> out;
  for (const RunMetrics& r : runs) {
    if (std::none_of(out.begin(), out.end(),
                     [&](const ProtocolSummary& s) { return s.protocol == r.protocol; })) {
      ProtocolSummary fresh;
      fresh.protocol = r.protocol;
      out.push_back(std::move(fresh));
    }
  }
  for (ProtocolSummary& s : out) {
    std::vector<std::optional<double>> dp, delay, ovh, hops, dropped;
    for (const RunMetrics& r : runs) {
      if (r.protocol != s.protocol) continue;
      dp.push_back(r.delivery_prob);
      delay.push_back(r.avg_delay);
      ovh.push_back(r.overhead);
      hops.push_back(r.avg_hops);
      dropped.push_back(static_cast<double>(r.dropped_overflow + r.dropped_ttl));
    }
    s.runs = static_cast<std::uint32_t>(dp.size());
    s.delivery_prob = summarize(dp);
    s.avg_delay = summarize(delay);
    s.overhead = summarize(ovh);
    s.avg_hops = summarize(hops);
    s.dropped = summarize(dropped);
  }
  return out;
}

std::string csv_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? csv_number(*v) : std::string(); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write report file: " + path);
  return out;
}

}  // namespace

void write_runs_csv(const std::string& path, std::span<const RunMetrics> runs) {
  auto out = open_out(path);
  out << "protocol,seed,created,delivered,delivery_prob,avg_delay_s,overhead_ratio,avg_hops,"
         "relayed,aborted,dropped,dropped_overflow,dropped_ttl\n";
  for (const RunMetrics& r : runs) {
    out << r.protocol << ',' << r.seed << ',' << r.created << ',' << r.delivered << ','
        << cell(r.delivery_prob) << ',' << cell(r.avg_delay) << ',' << cell(r.overhead) << ','
        << cell(r.avg_hops) << ',' << r.relayed << ',' << r.aborted << ','
        << (r.dropped_overflow + r.dropped_ttl) << ',' << r.dropped_overflow << ','
        << r.dropped_ttl << '\n';
  }
}

void write_summary_csv(const std::string& path, std::span<const ProtocolSummary> summaries) {
  auto out = open_out(path);
  out << "protocol,runs,delivery_prob_mean,delivery_prob_sd,avg_delay_mean_s,avg_delay_sd_s,"
         "avg_delay_excluded,overhead_ratio_mean,overhead_ratio_sd,overhead_ratio_excluded,"
         "avg_hops_mean,avg_hops_sd,avg_hops_excluded,dropped_mean,dropped_sd\n";
  const auto pair = [](const MetricSummary& m) {
    if (m.runs == 0) return std::string(",");
    return csv_number(m.mean) + "," + csv_number(m.sd);
  };
  for (const ProtocolSummary& s : summaries) {
    out << s.protocol << ',' << s.runs << ',' << pair(s.delivery_prob) << ',' << pair(s.avg_delay)
        << ',' << s.avg_delay.excluded << ',' << pair(s.overhead) << ',' << s.overhead.excluded
        << ',' << pair(s.avg_hops) << ',' << s.avg_hops.excluded << ',' << pair(s.dropped) << '\n';
  }
}

void write_deliveries_csv(const std::string& path, std::span<const RunReport> reports) {
  auto out = open_out(path);
  out << "protocol,seed,message_id,source,destination,created_at_s,delivered_at_s,delay_s,hops\n";
  for (const RunReport& r : reports) {
    for (const DeliveryRecord& d : r.deliveries) {
      out << r.protocol << ',' << r.seed << ',' << d.id << ',' << d.source << ',' << d.destination
          << ',' << csv_number(d.created_at) << ',' << csv_number(d.delivered_at) << ','
          << csv_number(d.delivered_at - d.created_at) << ',' << d.hops << '\n';
    }
  }
}

void write_plot_csvs(const std::string& directory, std::span<const RunMetrics> runs) {
  const std::pair<const char*, std::optional<double> RunMetrics::*> metrics[] = {
      {"delivery_prob", &RunMetrics::delivery_prob},
      {"avg_delay", &RunMetrics::avg_delay},
      {"overhead_ratio", &RunMetrics::overhead},
      {"avg_hops", &RunMetrics::avg_hops},
  };
  for (const auto& [name, member] : metrics) {
    auto out = open_out(directory + "/plot_" + name + ".csv");
    out << "protocol,seed,value\n";
    for (const RunMetrics& r : runs) out << r.protocol << ',' << r.seed << ',' << cell(r.*member) << '\n';
  }
}

void write_outputs(const std::string& directory, std::span<const RunReport> reports) {
  std::filesystem::create_directories(directory);
  std::vector<RunMetrics> metrics;
  metrics.reserve(reports.size());
  for (const RunReport& r : reports) metrics.push_back(compute_metrics(r));
  write_runs_csv(directory + "/runs.csv", metrics);
  const auto summaries = aggregate(metrics);
  write_summary_csv(directory + "/summary.csv", summaries);
  write_deliveries_csv(directory + "/deliveries.csv", reports);
  write_plot_csvs(directory, metrics);
}

}  // namespace opportune

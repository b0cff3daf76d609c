#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hypart/hypergraph.hpp"

namespace hypart {

struct IngestOptions {
  std::string agent_col = "agent";
  std::string event_col = "event";
  std::string time_col = "time";
  /// none | day | hour | month | year | prefix:N | a strftime-like pattern
  /// such as "%Y-%m-%d" (its rendered width is used as the prefix length).
  std::string time_bucket = "none";
};

struct SkippedRow {
  std::size_t line = 0;
  std::string reason;
};

/// Triplets mapped to indices in first-appearance order, deduplicated into a hypergraph.
struct TripletDataset {
  std::vector<std::string> agents;  // class A labels
  std::vector<std::string> events;  // class B labels
  std::vector<std::string> times;   // class C labels (after bucketing)
  Hypergraph hypergraph;
  std::size_t raw_count = 0;
  std::size_t unique_count = 0;
  std::vector<SkippedRow> skipped;
};

/// Number of leading characters kept by a time-bucket setting; npos keeps everything.
std::size_t bucket_width(const std::string& bucket);
std::string bucket_time(const std::string& value, std::size_t width);

/// Splits comma-separated text into records (RFC 4180 quoting, quoted fields
/// may span lines). Each record carries the line number it starts on.
struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
  bool malformed = false;
};
std::vector<CsvRecord> parse_csv(const std::string& text);

/// True when the first content line looks like an edge-list header "n1 n2 n3".
bool looks_like_edge_list(const std::string& text);

/// Comma-separated text with a header row, or the edge-list format (whose
/// labels are then the vertex indices). Throws InputError on an empty input or
/// a missing column; malformed rows are skipped and reported.
TripletDataset ingest_text(const std::string& text, const IngestOptions& options);
TripletDataset ingest(const std::filesystem::path& path, const IngestOptions& options);

/// JSON summary: raw and unique counts, class sizes, skipped rows.
std::string ingest_summary_json(const TripletDataset& data);

}  // namespace hypart

#include "hypart/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "hypart/error.hpp"
#include "hypart/io.hpp"

namespace hypart {

namespace {

class LabelIndex {
 public:
  std::uint32_t intern(const std::string& label) {
    auto [it, fresh] = index_.try_emplace(label, static_cast<std::uint32_t>(labels_.size()));
    if (fresh) labels_.push_back(label);
    return it->second;
  }
  std::vector<std::string> take() { return std::move(labels_); }

 private:
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::string> labels_;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::size_t column_of(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InputError("missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

std::size_t bucket_width(const std::string& bucket) {
  if (bucket.empty() || bucket == "none") return std::string::npos;
  if (bucket == "year") return 4;
  if (bucket == "month") return 7;
  if (bucket == "day") return 10;
  if (bucket == "hour") return 13;
  if (bucket.rfind("prefix:", 0) == 0) {
    std::size_t n = 0;
    const char* first = bucket.data() + 7;
    const char* last = bucket.data() + bucket.size();
    const auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc() || ptr != last || n == 0) throw InputError("bad time bucket '" + bucket + "'");
    return n;
  }
  if (bucket.find('%') == std::string::npos) throw InputError("unknown time bucket '" + bucket + "'");
  std::size_t width = 0;
  for (std::size_t i = 0; i < bucket.size(); ++i) {
    if (bucket[i] != '%') {
      ++width;
      continue;
    }
    if (++i == bucket.size()) throw InputError("time bucket pattern ends with '%'");
    switch (bucket[i]) {
      case 'Y':
        width += 4;
        break;
      case 'm':
      case 'd':
      case 'H':
      case 'M':
      case 'S':
        width += 2;
        break;
      case '%':
        width += 1;
        break;
      default:
        throw InputError(std::string("unsupported conversion %") + bucket[i] + " in time bucket");
    }
  }
  return width;
}

std::string bucket_time(const std::string& value, std::size_t width) {
  return width == std::string::npos ? value : value.substr(0, width);
}

std::vector<CsvRecord> parse_csv(const std::string& text) {
  std::vector<CsvRecord> records;
  std::size_t line = 1, i = 0;
  while (i < text.size()) {
    CsvRecord rec;
    rec.line = line;
    std::string field;
    bool in_quotes = false, field_was_quoted = false, done = false;
    while (i < text.size() && !done) {
      const char ch = text[i++];
      if (in_quotes) {
        if (ch == '"') {
          if (i < text.size() && text[i] == '"') {
            field += '"';
            ++i;
          } else {
            in_quotes = false;
          }
        } else {
          if (ch == '\n') ++line;
          field += ch;
        }
        continue;
      }
      switch (ch) {
        case '"':
          if (!trim(field).empty() || field_was_quoted) rec.malformed = true;
          field.clear();
          in_quotes = field_was_quoted = true;
          break;
        case ',':
          rec.fields.push_back(field_was_quoted ? field : trim(field));
          field.clear();
          field_was_quoted = false;
          break;
        case '\n':
          ++line;
          done = true;
          break;
        case '\r':
          break;
        default:
          if (field_was_quoted && ch != ' ' && ch != '\t') rec.malformed = true;
          field += ch;
      }
    }
    if (in_quotes) rec.malformed = true;
    rec.fields.push_back(field_was_quoted ? field : trim(field));
    const bool blank = rec.fields.size() == 1 && rec.fields[0].empty() && !field_was_quoted;
    if (!blank) records.push_back(std::move(rec));
  }
  return records;
}

bool looks_like_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.find(',') != std::string::npos) return false;
    std::istringstream fields(t);
    std::string tok;
    int count = 0;
    while (fields >> tok) {
      if (!std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) return false;
      ++count;
    }
    return count == 3;
  }
  return false;
}

TripletDataset ingest_text(const std::string& text, const IngestOptions& options) {
  TripletDataset data;
  if (looks_like_edge_list(text)) {
    std::istringstream in(text);
    data.hypergraph = read_edge_list(in);
    const ClassSizes s = data.hypergraph.sizes();
    for (std::uint32_t i = 0; i < s.n1; ++i) data.agents.push_back(std::to_string(i));
    for (std::uint32_t i = 0; i < s.n2; ++i) data.events.push_back(std::to_string(i));
    for (std::uint32_t i = 0; i < s.n3; ++i) data.times.push_back(std::to_string(i));
    std::istringstream lines(text);
    std::string line;
    bool header = true;
    while (std::getline(lines, line)) {
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      if (header) {
        header = false;
        continue;
      }
      ++data.raw_count;
    }
    data.unique_count = data.hypergraph.edge_count();
    return data;
  }

  std::vector<CsvRecord> records = parse_csv(text);
  if (records.empty()) throw InputError("input is empty");
  const std::vector<std::string>& header = records.front().fields;
  const std::size_t ca = column_of(header, options.agent_col);
  const std::size_t cb = column_of(header, options.event_col);
  const std::size_t cc = column_of(header, options.time_col);
  const std::size_t width = bucket_width(options.time_bucket);

  LabelIndex agents, events, times;
  std::vector<Triple> triples;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord& rec = records[r];
    if (rec.malformed) {
      data.skipped.push_back({rec.line, "malformed quoting"});
      continue;
    }
    if (rec.fields.size() != header.size()) {
      data.skipped.push_back({rec.line, "expected " + std::to_string(header.size()) + " fields, found " +
                                            std::to_string(rec.fields.size())});
      continue;
    }
    const std::string time = bucket_time(rec.fields[cc], width);
    if (rec.fields[ca].empty() || rec.fields[cb].empty() || time.empty()) {
      data.skipped.push_back({rec.line, "empty agent, event or time"});
      continue;
    }
    triples.push_back({agents.intern(rec.fields[ca]), events.intern(rec.fields[cb]), times.intern(time)});
  }
  data.agents = agents.take();
  data.events = events.take();
  data.times = times.take();
  data.raw_count = triples.size();
  data.hypergraph = Hypergraph({static_cast<std::uint32_t>(data.agents.size()),
                                static_cast<std::uint32_t>(data.events.size()),
                                static_cast<std::uint32_t>(data.times.size())});
  for (const Triple& t : triples) data.hypergraph.insert(t);
  data.unique_count = data.hypergraph.edge_count();
  return data;
}

TripletDataset ingest(const std::filesystem::path& path, const IngestOptions& options) {
  return ingest_text(read_text_file(path), options);
}

std::string ingest_summary_json(const TripletDataset& data) {
  nlohmann::ordered_json j;
  j["raw_records"] = data.raw_count;
  j["unique_hyperedges"] = data.unique_count;
  const ClassSizes s = data.hypergraph.sizes();
  j["class_sizes"] = {s.n1, s.n2, s.n3};
  j["skipped_rows"] = data.skipped.size();
  auto skipped = nlohmann::ordered_json::array();
  for (const SkippedRow& row : data.skipped) skipped.push_back({{"line", row.line}, {"reason", row.reason}});
  j["skipped"] = std::move(skipped);
  return j.dump(2) + "\n";
}

}  // namespace hypart

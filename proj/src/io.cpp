#include "hypart/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hypart/error.hpp"

namespace hypart {

void write_edge_list(std::ostream& out, const Hypergraph& h) {
  const ClassSizes& s = h.sizes();
  out << s.n1 << ' ' << s.n2 << ' ' << s.n3 << '\n';
  for (const Triple& t : h.sorted_edges()) out << t.a << ' ' << t.b << ' ' << t.c << '\n';
}

std::string edge_list_string(const Hypergraph& h) {
  std::ostringstream out;
  write_edge_list(out, h);
  return out.str();
}

Hypergraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  ClassSizes sizes;
  std::vector<Triple> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream fields(line);
    long long x = 0, y = 0, z = 0;
    std::string rest;
    if (!(fields >> x >> y >> z) || (fields >> rest) || x < 0 || y < 0 || z < 0) {
      throw InputError("edge list line " + std::to_string(line_no) + ": expected three non-negative integers");
    }
    if (!have_header) {
      sizes = {static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y),
               static_cast<std::uint32_t>(z)};
      have_header = true;
      continue;
    }
    Triple t{static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y),
             static_cast<std::uint32_t>(z)};
    if (!sizes.contains(t)) {
      throw InputError("edge list line " + std::to_string(line_no) + ": vertex index out of range");
    }
    edges.push_back(t);
  }
  if (!have_header) throw InputError("edge list is empty (missing \"n1 n2 n3\" header)");
  return Hypergraph(sizes, edges);
}

Hypergraph read_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_edge_list(in);
}

std::string degree_sequence_json(const PartiteDegreeSequence& d) {
  nlohmann::ordered_json j;
  j["A"] = d.a;
  j["B"] = d.b;
  j["C"] = d.c;
  return j.dump() + "\n";
}

PartiteDegreeSequence parse_degree_sequence(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("degree sequence JSON: ") + e.what());
  }
  PartiteDegreeSequence d;
  for (VertexClass cls : kAllClasses) {
    const std::string key(1, class_name(cls));
    if (!j.is_object() || !j.contains(key) || !j[key].is_array()) {
      throw InputError("degree sequence JSON: missing array \"" + key + "\"");
    }
    for (const auto& x : j[key]) {
      if (!x.is_number_integer()) throw InputError("degree sequence JSON: non-integer degree");
      d.of(cls).push_back(x.get<std::int64_t>());
    }
  }
  return d;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

PartiteDegreeSequence read_degree_sequence_file(const std::filesystem::path& path) {
  return parse_degree_sequence(read_text_file(path));
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round_real(double x) { return std::strtod(format_real(x).c_str(), nullptr); }

}  // namespace hypart

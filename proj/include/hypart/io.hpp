#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hypart/hypergraph.hpp"

namespace hypart {

// Edge-list text format: a header line "n1 n2 n3", then one "i j k" triple
// per line, 0-based. Blank lines and lines starting with '#' are ignored.
// Writers emit edges in lexicographic order.
void write_edge_list(std::ostream& out, const Hypergraph& h);
std::string edge_list_string(const Hypergraph& h);
Hypergraph read_edge_list(std::istream& in);
Hypergraph read_edge_list_file(const std::filesystem::path& path);

// Degree-sequence JSON: {"A":[...],"B":[...],"C":[...]}.
std::string degree_sequence_json(const PartiteDegreeSequence& d);
PartiteDegreeSequence parse_degree_sequence(const std::string& json_text);
PartiteDegreeSequence read_degree_sequence_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// printf-style "%.12g" formatting used for every float written by the tools.
std::string format_real(double x);
/// x rounded to the value format_real prints, so JSON output is stable.
double round_real(double x);

}  // namespace hypart

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "resmote/dataset.hpp"
#include "resmote/errors.hpp"

namespace resmote {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool parse_double(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::size_t resolve_label_column(const std::vector<std::string_view>& header,
                                 const std::string& label_column) {
  std::size_t found = header.size();
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == label_column) {
      if (found != header.size()) throw ParseError("duplicate label column \"" + label_column + "\"");
      found = j;
    }
  }
  if (found != header.size()) return found;
  std::size_t index = 0;
  auto [ptr, ec] = std::from_chars(label_column.data(), label_column.data() + label_column.size(), index);
  if (ec == std::errc() && ptr == label_column.data() + label_column.size() && index < header.size())
    return index;
  throw ParseError("label column \"" + label_column + "\" not found in header");
}

}  // namespace

Dataset parse_csv(const std::string& text, const std::string& label_column,
                  const std::string& positive_label, const std::string& source_tag) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("csv: missing header row");

  const auto header = split_fields(lines.front());
  const std::size_t label_idx = resolve_label_column(header, label_column);
  if (header.size() < 2) throw ParseError("csv: need at least one feature column and a label column");

  std::vector<std::string> names;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (j != label_idx) names.emplace_back(header[j]);

  const std::size_t rows = lines.size() - 1;

  Dataset data(header.size() - 1, names, source_tag);
  data.reserve(rows);
  FeatureVector x(header.size() - 1);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r]);
    if (fields.size() != header.size())
      throw ParseError("csv: row " + std::to_string(r) + " has " + std::to_string(fields.size()) +
                       " fields, expected " + std::to_string(header.size()));
    std::size_t k = 0;
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (j == label_idx) continue;
      if (!parse_double(fields[j], x[k]))
        throw ParseError("csv: unparseable value \"" + std::string(fields[j]) + "\" at row " +
                         std::to_string(r) + ", column \"" + std::string(header[j]) + "\"");
      ++k;
    }
    data.add(x, fields[label_idx] == positive_label ? Label::positive : Label::negative);
  }
  if (rows < 2) throw ParseError("csv: fewer than 2 data rows");
  if (data.count(Label::positive) == 0 || data.count(Label::negative) == 0)
    throw ParseError("csv: only one label value present (positive label \"" + positive_label + "\")");
  return data;
}

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                 const std::string& positive_label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), label_column, positive_label, path.filename().string());
}

std::string to_csv(const Dataset& data, const std::string& positive_label,
                   const std::string& negative_label) {
  std::string out;
  for (std::size_t j = 0; j < data.dimension(); ++j) {
    out += data.feature_names().empty() ? "x" + std::to_string(j) : data.feature_names()[j];
    out += ',';
  }
  out += "label\n";
  char buf[32];
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.row(i)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      out += ',';
    }
    out += data.label(i) == Label::positive ? positive_label : negative_label;
    out += '\n';
  }
  return out;
}

void save_csv(const Dataset& data, const std::filesystem::path& path,
              const std::string& positive_label, const std::string& negative_label) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << to_csv(data, positive_label, negative_label);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace resmote

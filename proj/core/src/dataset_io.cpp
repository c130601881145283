#include <charconv>
#include <fstream>
#include <map>
#include <string>
#include <system_error>

#include "hgd/dataset.hpp"
#include "hgd/error.hpp"

namespace hgd {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_size(std::string_view s, std::size_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// RFC-4180 field split: quoted fields may contain delimiters and "" escapes.
std::vector<std::string> split_csv(std::string_view line, char delim,
                                   std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  fields.push_back(std::move(cur));
  return fields;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void warn_if_positive_majority(Dataset& data) {
  if (data.is_binary() && data.count(kPositive) > data.count(kNegative)) {
    data.add_warning("positive class (+1) is not the minority in '" +
                     data.name() + "'");
  }
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in = open_input(path);
  std::vector<LabeledInstance> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  std::optional<std::string> negative_label;
  bool header_pending = options.header;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv(line, options.delimiter, line_no);
    if (header_pending) {
      header_pending = false;
      width = fields.size();
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    if (options.label_column >= width) {
      throw ParseError("label column " + std::to_string(options.label_column) +
                           " out of range",
                       line_no);
    }

    LabeledInstance inst;
    const std::string label_text(trim(fields[options.label_column]));
    if (options.positive_label) {
      if (label_text == *options.positive_label) {
        inst.label = kPositive;
      } else if (!negative_label || *negative_label == label_text) {
        negative_label = label_text;
        inst.label = kNegative;
      } else {
        throw ParseError("unknown label value '" + label_text + "'", line_no);
      }
    } else {
      std::size_t id = 0;
      if (!parse_size(label_text, id)) {
        throw ParseError("class id '" + label_text + "' is not a non-negative integer",
                         line_no);
      }
      inst.label = static_cast<int>(id);
    }

    inst.features.reserve(width - 1);
    for (std::size_t j = 0; j < width; ++j) {
      if (j == options.label_column) continue;
      double v = 0.0;
      if (!parse_double(fields[j], v)) {
        throw ParseError("non-numeric cell '" + fields[j] + "' in column " +
                             std::to_string(j),
                         line_no);
      }
      inst.features.push_back(v);
    }
    rows.push_back(std::move(inst));
  }
  if (rows.empty()) {
    throw EmptyDataset("no data rows in '" + path.string() + "'");
  }
  Dataset data(path.stem().string(), std::move(rows));
  warn_if_positive_majority(data);
  return data;
}

Dataset load_libsvm(const std::filesystem::path& path,
                    const LibsvmOptions& options) {
  std::ifstream in = open_input(path);
  struct SparseRow {
    double label;
    std::vector<std::pair<std::size_t, double>> entries;
  };
  std::vector<SparseRow> rows;
  std::map<double, std::size_t> label_values;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = line;
    if (auto hash = rest.find('#'); hash != std::string_view::npos) {
      rest = rest.substr(0, hash);
    }
    rest = trim(rest);
    if (rest.empty()) continue;

    std::vector<std::string_view> tokens;
    while (!rest.empty()) {
      const auto sp = rest.find_first_of(" \t");
      tokens.push_back(rest.substr(0, sp));
      if (sp == std::string_view::npos) break;
      rest = trim(rest.substr(sp));
    }

    SparseRow row;
    if (!parse_double(tokens[0], row.label)) {
      throw ParseError("malformed label '" + std::string(tokens[0]) + "'",
                       line_no);
    }
    std::size_t prev = 0;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      const auto colon = tokens[k].find(':');
      std::size_t idx = 0;
      double val = 0.0;
      if (colon == std::string_view::npos ||
          !parse_size(tokens[k].substr(0, colon), idx) || idx == 0 ||
          !parse_double(tokens[k].substr(colon + 1), val)) {
        throw ParseError("malformed token '" + std::string(tokens[k]) + "'",
                         line_no);
      }
      if (idx <= prev) {
        throw ParseError("feature indices must increase within a line",
                         line_no);
      }
      prev = idx;
      max_index = std::max(max_index, idx);
      row.entries.emplace_back(idx, val);
    }
    ++label_values[row.label];
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw EmptyDataset("no data rows in '" + path.string() + "'");
  }
  if (label_values.size() > 2) {
    throw ParseError("expected two label values, found " +
                         std::to_string(label_values.size()),
                     0);
  }
  // The larger label value is the positive class ({-1,+1} and {0,1} both work).
  const double positive = label_values.rbegin()->first;

  const std::size_t dim = std::max(max_index, options.dimension.value_or(0));
  std::vector<LabeledInstance> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    LabeledInstance inst;
    inst.features.assign(dim, 0.0);
    for (const auto& [idx, val] : row.entries) inst.features[idx - 1] = val;
    inst.label = row.label == positive && label_values.size() == 2 ? kPositive
                                                                    : kNegative;
    out.push_back(std::move(inst));
  }
  Dataset data(path.stem().string(), std::move(out));
  warn_if_positive_majority(data);
  return data;
}

void write_csv(const Dataset& data, const std::filesystem::path& path,
               bool header) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  if (header) {
    out << "label";
    for (std::size_t j = 0; j < data.dim(); ++j) out << ",x" << (j + 1);
    out << '\n';
  }
  for (const auto& inst : data.instances()) {
    out << inst.label;
    for (double v : inst.features) out << ',' << format_double(v);
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_libsvm(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  for (const auto& inst : data.instances()) {
    out << (inst.label > 0 ? "+1" : "-1");
    for (std::size_t j = 0; j < inst.features.size(); ++j) {
      if (inst.features[j] != 0.0) {
        out << ' ' << (j + 1) << ':' << format_double(inst.features[j]);
      }
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace hgd

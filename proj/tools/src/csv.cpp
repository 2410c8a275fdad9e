#include "sigmaflow_cli/csv.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace sigmaflow::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

std::string quote_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header,
                     const std::string& config_hash, const std::vector<std::string>& comments)
    : out_(out), columns_(header.size()) {
  out_ << "# config_hash=" << config_hash << "\n";
  for (const auto& c : comments) out_ << "# " << c << "\n";
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw std::logic_error("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << quote_field(fields[i]);
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> fields;
  fields.reserve(values.size());
  for (double v : values) fields.push_back(format_number(v));
  row(fields);
}

}  // namespace sigmaflow::cli

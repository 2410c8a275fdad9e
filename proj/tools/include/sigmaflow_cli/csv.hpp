#pragma once

// CSV output: RFC-4180 quoting, '.' decimal point, 17 significant digits.

#include <ostream>
#include <string>
#include <vector>

namespace sigmaflow::cli {

/// printf "%.17g"; nan and inf spelled out.
std::string format_number(double value);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string quote_field(const std::string& field);

class CsvWriter {
 public:
  /// Writes "# config_hash=<hash>", any extra comment lines, then the header.
  CsvWriter(std::ostream& out, const std::vector<std::string>& header, const std::string& config_hash,
            const std::vector<std::string>& comments = {});

  void row(const std::vector<std::string>& fields);
  void row(const std::vector<double>& values);

  std::size_t columns() const noexcept { return columns_; }

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace sigmaflow::cli

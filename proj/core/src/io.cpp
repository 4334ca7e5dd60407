#include "nlkg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nlkg/errors.hpp"

namespace nlkg {

std::string format_double(double x) {
  // %.17g always round-trips but prints noise digits for most values; try
  // increasing precision until the parse comes back exact.
  char buf[40];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::stod(buf) == x) break;
  }
  return buf;
}

std::string csv_string(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) os << ",";
    os << header[i];
  }
  os << "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw IoError("csv row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << format_double(row[i]);
    }
    os << "\n";
  }
  return os.str();
}

void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  const std::string body = csv_string(header, rows);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << body;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace nlkg

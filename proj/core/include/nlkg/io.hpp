#pragma once

#include <string>
#include <vector>

namespace nlkg {

// shortest representation that round-trips the double exactly
std::string format_double(double x);

// CSV with a header row; numbers via format_double so identical inputs give
// byte-identical files
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string csv_string(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

}  // namespace nlkg

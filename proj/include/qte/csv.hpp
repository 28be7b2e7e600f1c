#pragma once

#include <string>
#include <vector>

namespace qte {

// Splits one CSV record. Handles quoted fields with embedded commas and
// doubled-quote escapes; embedded newlines are not supported.
std::vector<std::string> split_csv_line(const std::string& line);

// Reads a whole CSV file; blank lines are skipped.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

} // namespace qte

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace heatlab {

// Canonical shortest-stable text form used in every CSV cell so repeated
// runs produce byte-identical files.
std::string format_double(double value);

// FNV-1a 64-bit hash of a byte string.
std::uint64_t fnv1a_64(std::string_view bytes);

// Lower-case 16-digit hex rendering of a 64-bit hash.
std::string hash_hex(std::uint64_t value);

struct CsvTable {
  // Each entry becomes a leading "# ..." line; used for run metadata such as
  // the configuration hash.  No timestamps so output is reproducible.
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::string& path, const CsvTable& table);

}  // namespace heatlab

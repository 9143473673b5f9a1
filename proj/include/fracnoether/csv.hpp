#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fracnoether {

/// 17 significant digits; non-finite values become empty fields.
std::string format_real(double v);

/// Shortest round-trip form.
std::string format_short(double v);

/// Shortest round-trip form, always with a decimal point ("1.0", "0.25").
std::string format_alpha(double alpha);

struct CsvTable {
  std::vector<std::string> comments;  // written as "# ..." lines before the header
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
};

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace fracnoether

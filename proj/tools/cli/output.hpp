#pragma once

#include <ostream>
#include <string>

namespace northpole::cli {

/// Shortest decimal text that parses back to exactly x.
std::string format_double(double x);

/// Writes `fields` joined by commas followed by LF.
template <class... Fields>
void write_csv_row(std::ostream& out, const Fields&... fields) {
  bool first = true;
  ((out << (first ? "" : ",") << fields, first = false), ...);
  out << '\n';
}

}  // namespace northpole::cli

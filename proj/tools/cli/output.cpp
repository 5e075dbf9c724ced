#include "cli/output.hpp"

#include <array>
#include <charconv>

namespace northpole::cli {

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  (void)ec;
  return std::string(buf.data(), end);
}

}  // namespace northpole::cli

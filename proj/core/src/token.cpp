#include "quperman/token.hpp"

#include <algorithm>

namespace quperman {

std::size_t count_lines(std::string_view content) {
  if (content.empty()) return 0;
  auto n = static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n'));
  if (content.back() != '\n') ++n;
  return n;
}

}  // namespace quperman

#include "grbench/sysinfo.hpp"

#include <cctype>
#include <fstream>
#include <string>

namespace grbench {

std::optional<std::uint64_t> process_resident_bytes() {
  std::ifstream status("/proc/self/status");
  if (!status) return std::nullopt;
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmRSS:", 0) != 0) continue;
    // Format: "VmRSS:     1234 kB"
    std::size_t pos = 6;
    while (pos < line.size() && !std::isdigit(static_cast<unsigned char>(line[pos]))) {
      ++pos;
    }
    std::uint64_t kb = 0;
    bool any = false;
    while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) {
      kb = kb * 10 + static_cast<std::uint64_t>(line[pos] - '0');
      ++pos;
      any = true;
    }
    if (!any) return std::nullopt;
    return kb * 1024;
  }
  return std::nullopt;
}

}  // namespace grbench

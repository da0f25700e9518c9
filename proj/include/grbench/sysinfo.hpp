#ifndef GRBENCH_SYSINFO_HPP_
#define GRBENCH_SYSINFO_HPP_

#include <cstdint>
#include <optional>

namespace grbench {

/// Resident set size of this process in bytes, or empty where /proc is not
/// available.
std::optional<std::uint64_t> process_resident_bytes();

}  // namespace grbench

#endif  // GRBENCH_SYSINFO_HPP_

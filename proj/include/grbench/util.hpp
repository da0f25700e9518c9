#ifndef GRBENCH_UTIL_HPP_
#define GRBENCH_UTIL_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace grbench::util {

std::string read_file(const std::filesystem::path& file);
void write_file(const std::filesystem::path& file, std::string_view content);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

double parse_double(std::string_view text);
std::uint64_t parse_u64(std::string_view text);
std::int64_t parse_i64(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);

/// Lines of a text blob, tolerant of \r\n and of a trailing newline;
/// trailing blank lines are dropped.
std::vector<std::string_view> text_lines(std::string_view text);

std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent RNG seed for a named sub-stream of a run.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

std::uint64_t fnv1a(std::string_view data,
                    std::uint64_t seed = 0xCBF29CE484222325ULL);

}  // namespace grbench::util

#endif  // GRBENCH_UTIL_HPP_

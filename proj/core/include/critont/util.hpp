#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace critont {

// Shortest round-trip decimal form (std::to_chars), locale independent.
std::string to_string_shortest(double value);

// Locale-independent strtod via std::from_chars; nullopt unless the whole
// string parses.
std::optional<double> parse_double(std::string_view text);
std::optional<std::uint64_t> parse_uint(std::string_view text);

// Fixed-point rendering with the given number of decimals (coverage scores
// are reported to 4).
std::string format_fixed(double value, int decimals);

// FNV-1a 64-bit content digest, reported as 16 hex digits. Ties manifests to
// exact inputs; not cryptographic.
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

// Write-then-rename so readers never observe a partial file.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string now_iso8601_utc();

} // namespace critont

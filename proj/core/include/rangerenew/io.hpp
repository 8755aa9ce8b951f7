#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rangerenew {

// Full-precision decimal formatting (17 significant digits) so CSV output
// round-trips to the same double and diffs bitwise.
std::string format_g17(double x);

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

// The comment header every output file starts with: tool version, a hash of
// the effective configuration, and the master seed. No timestamps, so equal
// configurations produce byte-identical files.
struct OutputMeta {
    std::string version;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

std::string csv_comment_header(const OutputMeta& meta);

// Writes via a temporary file in the same directory plus rename, so readers
// never observe a partial file. Throws std::runtime_error on any I/O error.
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace rangerenew

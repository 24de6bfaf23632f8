#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lonqap/qap.hpp"

namespace lonqap {

/// Parses QAPLIB-style text: n, then n*n entries of A (row-major), then n*n of B.
/// Any whitespace separates tokens. Non-zero diagonals are accepted but reported
/// through `warnings` when given. Throws ParseError.
QapInstance parse_instance(std::string_view text, std::string label = {},
                           std::vector<std::string>* warnings = nullptr);

QapInstance load_instance(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

/// Canonical serialization: n, blank line, rows of A, blank line, rows of B.
std::string format_instance(const QapInstance& inst);

void save_instance(const QapInstance& inst, const std::filesystem::path& path);

/// Writes `text` to `path`, throwing std::runtime_error if the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace lonqap

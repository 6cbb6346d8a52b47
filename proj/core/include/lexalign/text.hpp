// Copyright 2026 The lexalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEXALIGN_TEXT_HPP_
#define LEXALIGN_TEXT_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexalign {

/// Unicode NFC normalization of a UTF-8 string. Invalid UTF-8 throws
/// Error(kMalformedRow).
std::string nfc(std::string_view utf8);

/// Full Unicode lowercase mapping (locale independent).
std::string lowercase(std::string_view utf8);

/// Splits on a single-character delimiter; empty fields are kept.
std::vector<std::string_view> split(std::string_view line, char delim);

/// Strips a trailing '\r' left by CRLF files.
std::string_view chomp(std::string_view line);

struct TextRecord {
  std::size_t line = 0;  // 1-based physical line
  std::vector<std::string> fields;
};

struct DelimitedFile {
  std::vector<std::string> header;
  std::vector<TextRecord> records;
};

/// Reads a header-first delimited text file (TSV/CSV without quoting).
/// Blank lines are skipped and CRLF endings tolerated.
DelimitedFile read_delimited(const std::filesystem::path& path, char delim);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Hex SHA-256 of a byte string.
std::string sha256_bytes(std::string_view bytes);

/// Shortest round-trip decimal representation, fixed across runs.
std::string format_real(double value);

/// Strict decimal parse of the whole (space-trimmed) field; nullopt on
/// failure or a non-finite result.
std::optional<double> parse_real(std::string_view text);

}  // namespace lexalign

#endif  // LEXALIGN_TEXT_HPP_

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

#ifndef LEXALIGN_TABLE_IO_HPP_
#define LEXALIGN_TABLE_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lexalign/metrics.hpp"

namespace lexalign {

/// CSV header shared by every table file.
inline constexpr const char* kTableCsvHeader =
    "metric,lang_a,lang_b,concept_id,value,survivors_fwd,survivors_bwd";

/// One row per cell in canonical key order. A gap cell carries its reason
/// code in the `value` column.
void write_table_csv(std::ostream& out, const AlignmentTable& table);
void write_table_csv(const std::filesystem::path& path, const AlignmentTable& table);

/// {"k", "provenance", "cells": [{..., "value"} | {..., "reason"}]}.
std::string table_to_json(const AlignmentTable& table);
void write_table_json(const std::filesystem::path& path, const AlignmentTable& table);

/// Inverse of write_table_csv. Throws kMalformedRow.
AlignmentTable read_table_csv(const std::filesystem::path& path);

}  // namespace lexalign

#endif  // LEXALIGN_TABLE_IO_HPP_

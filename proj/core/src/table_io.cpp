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

#include "lexalign/table_io.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "lexalign/error.hpp"
#include "lexalign/text.hpp"

namespace lexalign {

void write_table_csv(std::ostream& out, const AlignmentTable& table) {
  out << kTableCsvHeader << '\n';
  for (const auto& [key, cell] : table.cells()) {
    out << to_string(cell.metric) << ',' << cell.pair.a << ',' << cell.pair.b << ','
        << cell.concept_id << ',' << (cell.value ? format_real(*cell.value) : cell.reason)
        << ',' << cell.survivors_forward << ',' << cell.survivors_backward << '\n';
  }
}

void write_table_csv(const std::filesystem::path& path, const AlignmentTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_table_csv(out, table);
}

std::string table_to_json(const AlignmentTable& table) {
  nlohmann::ordered_json doc;
  doc["k"] = table.k;
  doc["provenance"] = table.provenance;
  auto cells = nlohmann::ordered_json::array();
  for (const auto& [key, cell] : table.cells()) {
    nlohmann::ordered_json row;
    row["metric"] = to_string(cell.metric);
    row["lang_a"] = cell.pair.a;
    row["lang_b"] = cell.pair.b;
    row["concept_id"] = cell.concept_id;
    if (cell.value) {
      row["value"] = *cell.value;
    } else {
      row["reason"] = cell.reason;
    }
    row["survivors_fwd"] = cell.survivors_forward;
    row["survivors_bwd"] = cell.survivors_backward;
    cells.push_back(std::move(row));
  }
  doc["cells"] = std::move(cells);
  return doc.dump(2) + "\n";
}

void write_table_json(const std::filesystem::path& path, const AlignmentTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << table_to_json(table);
}

AlignmentTable read_table_csv(const std::filesystem::path& path) {
  DelimitedFile file = read_delimited(path, ',');
  if (fmt::format("{}", fmt::join(file.header, ",")) != kTableCsvHeader) {
    throw Error(ErrorCode::kMalformedRow, path.string() + ": unexpected table header");
  }
  AlignmentTable table;
  for (const auto& record : file.records) {
    const auto& f = record.fields;
    auto bad = [&](std::string_view what) {
      return Error(ErrorCode::kMalformedRow,
                   fmt::format("{} line {}: {}", path.string(), record.line, what));
    };
    if (f.size() != 7) throw bad("expected 7 fields");
    AlignmentCell cell;
    try {
      cell.metric = parse_metric(f[0]);
    } catch (const Error&) {
      throw bad("unknown metric");
    }
    if (f[2] < f[1]) throw bad("language pair not in canonical order");
    cell.pair = LanguagePair{f[1], f[2]};
    cell.concept_id = f[3];
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(f[4].data(), f[4].data() + f[4].size(), value);
    if (ec == std::errc() && ptr == f[4].data() + f[4].size()) {
      cell.value = value;
    } else if (!f[4].empty()) {
      cell.reason = f[4];
    } else {
      throw bad("empty value");
    }
    auto parse_count = [&](const std::string& s) {
      std::size_t n = 0;
      auto [p, e] = std::from_chars(s.data(), s.data() + s.size(), n);
      if (e != std::errc() || p != s.data() + s.size()) throw bad("bad survivor count");
      return n;
    };
    cell.survivors_forward = parse_count(f[5]);
    cell.survivors_backward = parse_count(f[6]);
    table.insert(std::move(cell));
  }
  return table;
}

}  // namespace lexalign

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

#include "config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace lexalign::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  [[noreturn]] void fail(std::string_view what) const {
    throw ConfigError(fmt::format("config line {}: {}", line_, what));
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_end_or_comment() {
    skip_space();
    return pos_ >= text_.size() || text_[pos_] == '#';
  }

  std::string parse_string() {
    if (text_[pos_] != '"') fail("expected '\"'");
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_++];
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("dangling escape");
        const char e = text_[pos_++];
        switch (e) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default: fail(fmt::format("unsupported escape '\\{}'", e));
        }
      } else {
        out += c;
      }
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  ConfigValue parse_scalar() {
    skip_space();
    if (pos_ >= text_.size()) fail("missing value");
    if (text_[pos_] == '"') return parse_string();
    std::size_t end = pos_;
    while (end < text_.size() && text_[end] != ',' && text_[end] != ']' && text_[end] != '#' &&
           text_[end] != ' ' && text_[end] != '\t') {
      ++end;
    }
    const std::string_view token = text_.substr(pos_, end - pos_);
    pos_ = end;
    if (token == "true") return true;
    if (token == "false") return false;
    std::string cleaned;
    for (char c : token) {
      if (c != '_') cleaned += c;
    }
    std::string_view digits = cleaned;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    std::int64_t integer = 0;
    auto [ip, ie] = std::from_chars(digits.data(), digits.data() + digits.size(), integer);
    if (ie == std::errc() && ip == digits.data() + digits.size() && !digits.empty()) {
      return integer;
    }
    double real = 0.0;
    auto [rp, re] = std::from_chars(digits.data(), digits.data() + digits.size(), real);
    if (re == std::errc() && rp == digits.data() + digits.size() && !digits.empty()) return real;
    fail(fmt::format("cannot parse value '{}'", token));
  }

  ConfigValue parse_value() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '[') {
      ++pos_;
      std::vector<std::string> items;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
        return items;
      }
      while (true) {
        ConfigValue v = parse_scalar();
        if (auto* s = std::get_if<std::string>(&v)) {
          items.push_back(*s);
        } else if (auto* i = std::get_if<std::int64_t>(&v)) {
          items.push_back(std::to_string(*i));
        } else {
          fail("arrays hold strings or integers only");
        }
        skip_space();
        if (pos_ >= text_.size()) fail("unterminated array");
        if (text_[pos_] == ',') {
          ++pos_;
          skip_space();
          if (pos_ < text_.size() && text_[pos_] == ']') {
            ++pos_;
            break;
          }
          continue;
        }
        if (text_[pos_] == ']') {
          ++pos_;
          break;
        }
        fail("expected ',' or ']'");
      }
      return items;
    }
    return parse_scalar();
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

bool valid_key(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

class Reader {
 public:
  Reader(const ConfigDocument& doc, std::filesystem::path base) : doc_(doc), base_(std::move(base)) {}

  const ConfigValue* get(const std::string& section, const std::string& key) {
    auto s = doc_.find(section);
    if (s == doc_.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    used_.emplace(section, key);
    return &k->second;
  }

  std::optional<std::string> string(const std::string& section, const std::string& key) {
    const ConfigValue* v = get(section, key);
    if (v == nullptr) return std::nullopt;
    if (auto* s = std::get_if<std::string>(v)) return *s;
    throw ConfigError(fmt::format("[{}] {} must be a string", section, key));
  }

  std::optional<std::filesystem::path> path(const std::string& section, const std::string& key) {
    auto s = string(section, key);
    if (!s) return std::nullopt;
    return resolve(*s);
  }

  std::filesystem::path resolve(const std::string& p) const {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : (base_ / path).lexically_normal();
  }

  std::optional<std::int64_t> integer(const std::string& section, const std::string& key) {
    const ConfigValue* v = get(section, key);
    if (v == nullptr) return std::nullopt;
    if (auto* i = std::get_if<std::int64_t>(v)) return *i;
    throw ConfigError(fmt::format("[{}] {} must be an integer", section, key));
  }

  std::optional<std::size_t> count(const std::string& section, const std::string& key,
                                   std::int64_t minimum) {
    auto i = integer(section, key);
    if (!i) return std::nullopt;
    if (*i < minimum) {
      throw ConfigError(fmt::format("[{}] {} must be >= {}", section, key, minimum));
    }
    return static_cast<std::size_t>(*i);
  }

  std::optional<bool> boolean(const std::string& section, const std::string& key) {
    const ConfigValue* v = get(section, key);
    if (v == nullptr) return std::nullopt;
    if (auto* b = std::get_if<bool>(v)) return *b;
    throw ConfigError(fmt::format("[{}] {} must be true or false", section, key));
  }

  std::optional<std::vector<std::string>> list(const std::string& section,
                                               const std::string& key) {
    const ConfigValue* v = get(section, key);
    if (v == nullptr) return std::nullopt;
    if (auto* l = std::get_if<std::vector<std::string>>(v)) return *l;
    if (auto* s = std::get_if<std::string>(v)) return std::vector<std::string>{*s};
    if (auto* i = std::get_if<std::int64_t>(v)) {
      return std::vector<std::string>{std::to_string(*i)};
    }
    throw ConfigError(fmt::format("[{}] {} must be an array", section, key));
  }

  std::map<std::string, std::filesystem::path> path_table(const std::string& section) {
    std::map<std::string, std::filesystem::path> out;
    auto s = doc_.find(section);
    if (s == doc_.end()) return out;
    for (const auto& [key, value] : s->second) out.emplace(key, *path(section, key));
    return out;
  }

  void reject_unknown() const {
    for (const auto& [section, keys] : doc_) {
      for (const auto& [key, value] : keys) {
        if (!used_.contains({section, key})) {
          throw ConfigError(fmt::format("unknown config key [{}] {}", section, key));
        }
      }
    }
  }

 private:
  const ConfigDocument& doc_;
  std::filesystem::path base_;
  std::set<std::pair<std::string, std::string>> used_;
};

}  // namespace

ConfigDocument parse_config(std::string_view text) {
  ConfigDocument doc;
  std::string section;
  doc[section];
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string_view::npos) {
        throw ConfigError(fmt::format("config line {}: unterminated section header", line_no));
      }
      section = std::string(trim(line.substr(1, close - 1)));
      const auto rest = trim(line.substr(close + 1));
      if (!valid_key(section) || (!rest.empty() && rest.front() != '#')) {
        throw ConfigError(fmt::format("config line {}: bad section header", line_no));
      }
      doc[section];
    } else {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(fmt::format("config line {}: expected key = value", line_no));
      }
      std::string key(trim(line.substr(0, eq)));
      if (key.size() >= 2 && key.front() == '"' && key.back() == '"') {
        key = key.substr(1, key.size() - 2);
      } else if (!valid_key(key)) {
        throw ConfigError(fmt::format("config line {}: bad key '{}'", line_no, key));
      }
      LineParser parser(line.substr(eq + 1), line_no);
      ConfigValue value = parser.parse_value();
      if (!parser.at_end_or_comment()) parser.fail("trailing characters");
      if (!doc[section].emplace(key, std::move(value)).second) {
        throw ConfigError(fmt::format("config line {}: duplicate key '{}'", line_no, key));
      }
    }
    if (end == text.size()) break;
  }
  return doc;
}

PipelineConfig interpret_config(const ConfigDocument& doc, const std::filesystem::path& base_dir) {
  Reader r(doc, base_dir);
  PipelineConfig c;
  c.base_dir = base_dir;

  auto lexicon = r.path("inputs", "lexicon");
  if (!lexicon) throw ConfigError("config needs [inputs] lexicon");
  c.lexicon = *lexicon;
  c.domains = r.path("inputs", "domains");
  c.embeddings = r.path_table("embeddings");
  c.embeddings_ave = r.path_table("embeddings_ave");
  c.clouds = r.path_table("clouds");
  c.gaps = r.path("gaps", "inventory");
  c.concept_map = r.path("gaps", "concept_map");
  c.concept_features = r.path("features", "concepts");
  c.coordinates = r.path("features", "coordinates");
  c.traits = r.path("features", "traits");
  c.norms = r.path("features", "norms");

  if (auto k = r.count("run", "k", 1)) c.k = *k;
  if (auto v = r.list("run", "metrics")) c.metrics = *v;
  if (auto v = r.list("run", "languages")) c.languages = *v;
  if (auto v = r.string("run", "correlation")) c.correlation = *v;
  if (auto v = r.integer("run", "seed")) c.seed = static_cast<std::uint64_t>(*v);
  if (auto v = r.count("run", "min_survivors", 3)) c.min_survivors = *v;
  if (auto v = r.string("run", "cloud_aggregation")) c.cloud_aggregation = *v;
  if (auto v = r.boolean("run", "case_fallback")) c.case_fallback = *v;
  if (auto v = r.count("run", "jobs", 1)) c.jobs = *v;
  if (auto v = r.string("run", "output")) c.output = r.resolve(*v);
  else c.output = r.resolve(c.output.string());

  if (auto v = r.count("validate", "permutations", 1)) c.permutations = *v;
  if (auto v = r.list("validate", "removed_domains")) {
    c.removed_domains.clear();
    for (const auto& s : *v) {
      std::size_t j = 0;
      auto [p, e] = std::from_chars(s.data(), s.data() + s.size(), j);
      if (e != std::errc() || p != s.data() + s.size()) {
        throw ConfigError("[validate] removed_domains must hold non-negative integers");
      }
      c.removed_domains.push_back(j);
    }
  }
  if (auto v = r.count("validate", "trials", 1)) c.trials = *v;
  if (auto v = r.list("validate", "shuffle_pair")) {
    if (v->size() != 2) throw ConfigError("[validate] shuffle_pair needs two languages");
    c.shuffle_pair = *v;
  }

  if (auto v = r.count("polysemy", "max_components", 1)) c.max_components = *v;
  if (auto v = r.count("polysemy", "repeats", 1)) c.repeats = *v;
  if (auto v = r.string("polysemy", "measure")) c.polysemy_measure = *v;

  r.reject_unknown();

  if (c.k != 10 && c.k != 50 && c.k != 100 && c.k != 1000) {
    c.warnings.push_back(fmt::format("k = {} is outside the usual {{10, 50, 100, 1000}}", c.k));
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInput(fmt::format("cannot read config {}", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  const auto base = std::filesystem::absolute(path).parent_path();
  PipelineConfig c = interpret_config(parse_config(text.str()), base);
  c.source = path;
  return c;
}

std::map<std::string, std::filesystem::path> PipelineConfig::inputs() const {
  std::map<std::string, std::filesystem::path> out;
  out.emplace("lexicon", lexicon);
  if (domains) out.emplace("domains", *domains);
  for (const auto& [lang, p] : embeddings) out.emplace("embeddings." + lang, p);
  for (const auto& [lang, p] : embeddings_ave) out.emplace("embeddings_ave." + lang, p);
  for (const auto& [lang, p] : clouds) out.emplace("clouds." + lang, p);
  if (gaps) out.emplace("gaps.inventory", *gaps);
  if (concept_map) out.emplace("gaps.concept_map", *concept_map);
  if (concept_features) out.emplace("features.concepts", *concept_features);
  if (coordinates) out.emplace("features.coordinates", *coordinates);
  if (traits) out.emplace("features.traits", *traits);
  if (norms) out.emplace("features.norms", *norms);
  return out;
}

void PipelineConfig::check_inputs() const {
  for (const auto& [label, p] : inputs()) {
    if (!std::filesystem::is_regular_file(p)) {
      throw MissingInput(fmt::format("input {} not found: {}", label, p.string()));
    }
  }
}

}  // namespace lexalign::cli

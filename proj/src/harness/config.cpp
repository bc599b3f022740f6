// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "submapg/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "submapg/errors.hpp"

namespace submapg {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& s) {
  const auto pos = s.find_first_of("#;");
  return pos == std::string::npos ? s : s.substr(0, pos);
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in, const std::string& source) {
  ConfigFile file;
  file.source_ = source;
  std::string section;
  std::string raw;
  int line = 0;
  auto error = [&](const std::string& message) {
    throw ConfigError(source + ":" + std::to_string(line) + ": " + message);
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(strip_comment(raw));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') error("unterminated section header");
      section = trim(text.substr(1, text.size() - 2));
      if (section.empty()) error("empty section name");
      if (std::find(file.sections_.begin(), file.sections_.end(), section) !=
          file.sections_.end()) {
        error("duplicate section [" + section + "]");
      }
      file.sections_.push_back(section);
      file.entries_[section];
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) error("expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) error("missing key before '='");
    if (section.empty()) error("key '" + key + "' outside any section");
    auto& keys = file.entries_[section];
    if (keys.count(key)) error("duplicate key '" + section + "." + key + "'");
    keys[key] = Entry{value, line, false};
  }
  return file;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse(in, path);
}

const ConfigFile::Entry* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
  auto s = entries_.find(section);
  if (s == entries_.end()) return nullptr;
  auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  k->second.used = true;
  return &k->second;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  auto s = entries_.find(section);
  return s != entries_.end() && s->second.count(key) != 0;
}

bool ConfigFile::has_section(const std::string& section) const {
  return entries_.count(section) != 0;
}

void ConfigFile::fail(const std::string& section, const std::string& key,
                      const std::string& message) const {
  std::string where = source_;
  auto s = entries_.find(section);
  if (s != entries_.end()) {
    auto k = s->second.find(key);
    if (k != s->second.end()) where += ":" + std::to_string(k->second.line);
  }
  throw ConfigError(where + ": key '" + section + "." + key + "': " + message);
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key,
                                   const std::string& fallback) const {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

std::int64_t ConfigFile::get_int(const std::string& section,
                                 const std::string& key,
                                 std::int64_t fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  std::int64_t v = 0;
  const auto* end = e->value.data() + e->value.size();
  auto [ptr, ec] = std::from_chars(e->value.data(), end, v);
  if (ec != std::errc() || ptr != end) fail(section, key, "expected an integer");
  return v;
}

std::uint64_t ConfigFile::get_u64(const std::string& section,
                                  const std::string& key,
                                  std::uint64_t fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  std::uint64_t v = 0;
  const auto* end = e->value.data() + e->value.size();
  auto [ptr, ec] = std::from_chars(e->value.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    fail(section, key, "expected a nonnegative integer");
  }
  return v;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  std::istringstream in(e->value);
  in.imbue(std::locale::classic());
  double v = 0.0;
  in >> v;
  if (!in || !in.eof()) fail(section, key, "expected a number");
  return v;
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
  if (e->value == "false" || e->value == "0" || e->value == "no") return false;
  fail(section, key, "expected true or false");
}

std::vector<std::uint64_t> ConfigFile::get_u64_list(
    const std::string& section, const std::string& key,
    const std::vector<std::uint64_t>& fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  std::vector<std::uint64_t> out;
  std::string item;
  std::istringstream in(e->value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    // a..b expands to the inclusive range
    const auto dots = item.find("..");
    std::uint64_t lo = 0, hi = 0;
    auto parse = [&](const std::string& s, std::uint64_t& v) {
      const auto* end = s.data() + s.size();
      auto [ptr, ec] = std::from_chars(s.data(), end, v);
      if (s.empty() || ec != std::errc() || ptr != end) {
        fail(section, key, "expected a list of nonnegative integers");
      }
    };
    if (dots == std::string::npos) {
      parse(item, lo);
      hi = lo;
    } else {
      parse(trim(item.substr(0, dots)), lo);
      parse(trim(item.substr(dots + 2)), hi);
      if (hi < lo) fail(section, key, "empty range");
    }
    for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) fail(section, key, "empty list");
  return out;
}

void ConfigFile::require_all_used() const {
  for (const auto& section : sections_) {
    for (const auto& [key, entry] : entries_.at(section)) {
      if (!entry.used) {
        throw ConfigError(source_ + ":" + std::to_string(entry.line) +
                          ": unknown key '" + section + "." + key + "'");
      }
    }
  }
}

}  // namespace submapg

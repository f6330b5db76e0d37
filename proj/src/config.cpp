#include "equilab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include "equilab/errors.hpp"

namespace equilab {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

double parse_real(const std::string& text, const std::string& field) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ValidationError(field, "expected a finite real, got '" + text + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& field) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError(field, "expected an unsigned integer, got '" + text + "'");
  }
  return v;
}

ParamMap ParamMap::parse(std::istream& in) {
  ParamMap out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config", "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ValidationError("config", "line " + std::to_string(line_no) + ": empty key");
    out.entries_[key] = trim(line.substr(eq + 1));
  }
  return out;
}

ParamMap ParamMap::parse(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

void ParamMap::merge(const ParamMap& overrides) {
  for (const auto& [k, v] : overrides.entries_) entries_[k] = v;
}

const std::string& ParamMap::str(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ValidationError(key, "required parameter is missing");
  return it->second;
}

double ParamMap::real(const std::string& key) const { return parse_real(str(key), key); }

std::int64_t ParamMap::integer(const std::string& key) const {
  const std::string& text = str(key);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError(key, "expected an integer, got '" + text + "'");
  }
  return v;
}

std::uint64_t ParamMap::u64(const std::string& key) const { return parse_u64(str(key), key); }

bool ParamMap::boolean(const std::string& key) const {
  const std::string& text = str(key);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ValidationError(key, "expected true/false, got '" + text + "'");
}

std::vector<std::string> ParamMap::list(const std::string& key) const {
  std::vector<std::string> items;
  std::stringstream ss(str(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace equilab

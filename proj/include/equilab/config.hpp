#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace equilab {

/// Flat `key = value` settings; '#' starts a comment, blank lines are
/// ignored. Keys match the CLI flag names without the leading dashes.
class ParamMap {
 public:
  ParamMap() = default;
  explicit ParamMap(std::map<std::string, std::string> entries) : entries_(std::move(entries)) {}

  /// Throws ValidationError("config") with the line number on malformed input.
  static ParamMap parse(std::istream& in);
  static ParamMap parse(const std::string& text);

  bool contains(const std::string& key) const { return entries_.count(key) != 0; }
  void set(const std::string& key, std::string value) { entries_[key] = std::move(value); }
  void erase(const std::string& key) { entries_.erase(key); }
  /// Later values win.
  void merge(const ParamMap& overrides);

  const std::string& str(const std::string& key) const;
  double real(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::uint64_t u64(const std::string& key) const;
  bool boolean(const std::string& key) const;
  std::vector<std::string> list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

  friend bool operator==(const ParamMap&, const ParamMap&) = default;

 private:
  std::map<std::string, std::string> entries_;
};

double parse_real(const std::string& text, const std::string& field);
std::uint64_t parse_u64(const std::string& text, const std::string& field);

}  // namespace equilab

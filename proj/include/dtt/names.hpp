#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace dtt {

// Small sorted set of variable names.
class NameSet {
 public:
  NameSet() = default;
  NameSet(std::initializer_list<std::string> names);

  bool contains(std::string_view name) const;
  bool empty() const { return names_.empty(); }
  std::size_t size() const { return names_.size(); }
  void insert(std::string name);
  void erase(std::string_view name);
  void merge(const NameSet& other);
  bool intersects(const NameSet& other) const;
  bool subset_of(const NameSet& other) const;

  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }

  friend bool operator==(const NameSet&, const NameSet&) = default;

 private:
  std::vector<std::string> names_;
};

// Generated names have the form base#N. '#' cannot appear in source
// identifiers, so generated names never collide with user names.
std::string fresh_name(std::string_view base);
std::string_view base_name(std::string_view name);

}  // namespace dtt

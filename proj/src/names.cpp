#include "dtt/names.hpp"

#include <atomic>

namespace dtt {

NameSet::NameSet(std::initializer_list<std::string> names) {
  for (const auto& n : names) insert(n);
}

bool NameSet::contains(std::string_view name) const {
  return std::binary_search(names_.begin(), names_.end(), name);
}

void NameSet::insert(std::string name) {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) names_.insert(it, std::move(name));
}

void NameSet::erase(std::string_view name) {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it != names_.end() && *it == name) names_.erase(it);
}

void NameSet::merge(const NameSet& other) {
  if (other.empty()) return;
  if (empty()) {
    names_ = other.names_;
    return;
  }
  std::vector<std::string> out;
  out.reserve(names_.size() + other.names_.size());
  std::set_union(names_.begin(), names_.end(), other.names_.begin(), other.names_.end(),
                 std::back_inserter(out));
  names_ = std::move(out);
}

bool NameSet::intersects(const NameSet& other) const {
  auto a = names_.begin();
  auto b = other.names_.begin();
  while (a != names_.end() && b != other.names_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      return true;
    }
  }
  return false;
}

bool NameSet::subset_of(const NameSet& other) const {
  return std::includes(other.names_.begin(), other.names_.end(), names_.begin(), names_.end());
}

std::string_view base_name(std::string_view name) {
  auto pos = name.find('#');
  return pos == std::string_view::npos ? name : name.substr(0, pos);
}

std::string fresh_name(std::string_view base) {
  static std::atomic<unsigned long long> counter{0};
  auto stem = base_name(base);
  if (stem.empty()) stem = "v";
  return std::string(stem) + "#" + std::to_string(++counter);
}

}  // namespace dtt

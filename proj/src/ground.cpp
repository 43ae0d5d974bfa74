#include "mkit/ground.hpp"

#include "mkit/errors.hpp"

namespace mkit {

GroundSet::GroundSet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() > 64)
    throw DomainError("ground set exceeds 64 elements");
  for (int i = 0; i < static_cast<int>(labels_.size()); ++i) {
    if (labels_[i].empty()) throw DomainError("ground labels must be non-empty");
    if (!index_.emplace(labels_[i], i).second)
      throw DomainError("duplicate ground label: " + labels_[i]);
  }
}

const std::string& GroundSet::label(int i) const {
  if (i < 0 || i >= size()) throw DomainError("element index out of range");
  return labels_[i];
}

bool GroundSet::has(const std::string& label) const {
  return index_.count(label) != 0;
}

int GroundSet::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw DomainError("unknown ground label: " + label);
  return it->second;
}

Mask GroundSet::mask_of(const std::vector<std::string>& labels) const {
  Mask m = 0;
  for (const auto& l : labels) m |= bit(index(l));
  return m;
}

std::vector<std::string> GroundSet::labels_of(Mask m) const {
  if (m & ~full()) throw DomainError("mask has bits outside the ground set");
  std::vector<std::string> out;
  for_each_element(m, [&](int e) { out.push_back(labels_[e]); });
  return out;
}

GroundPtr make_ground(std::vector<std::string> labels) {
  return std::make_shared<const GroundSet>(std::move(labels));
}

std::vector<std::string> numeric_labels(int n, int first) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(first + i));
  return out;
}

}  // namespace mkit

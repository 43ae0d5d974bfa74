#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mkit/mask.hpp"

namespace mkit {

// Ordered set of distinct element labels. Element i of a mask refers to
// labels()[i]; the declared order is the total order used everywhere.
class GroundSet {
 public:
  explicit GroundSet(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  Mask full() const { return all_of(size()); }

  const std::string& label(int i) const;
  const std::vector<std::string>& labels() const { return labels_; }

  bool has(const std::string& label) const;
  int index(const std::string& label) const;  // DomainError when unknown

  Mask mask_of(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels_of(Mask m) const;

 private:
  std::vector<std::string> labels_;
  std::map<std::string, int> index_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

GroundPtr make_ground(std::vector<std::string> labels);

// "1", "2", ..., "n".
std::vector<std::string> numeric_labels(int n, int first = 1);

}  // namespace mkit

#pragma once

#include <vector>

namespace psembed {

// Assignment of graph vertices to points of the input set, by point index.
struct Mapping {
  std::vector<int> point_index;  // vertex id -> index into the point set

  int size() const { return static_cast<int>(point_index.size()); }
  friend bool operator==(const Mapping&, const Mapping&) = default;
};

}  // namespace psembed

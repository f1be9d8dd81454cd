#pragma once

#include <span>
#include <vector>

#include "scriptorium/components.hpp"
#include "scriptorium/seams.hpp"

namespace scriptorium {

// One text line's worth of components, keyed by how many seams pass below
// the members' centroids. members holds component indices; centroids is the
// parallel list of their centroid points.
struct LineBin {
  int key = 0;
  std::vector<int> members;
  std::vector<Point> centroids;
};

// Number of seams whose row at the centroid's (rounded) column is strictly
// greater, i.e. strictly lower on the page. A seam exactly at the centroid
// row does not count.
int seams_below(const Point& p, std::span<const Seam> seams);

// Groups components by their seams-below count, then dissolves bins with at
// most small_bin_threshold members (smallest first, ties by lower key): each
// member moves to the bin holding its nearest foreign centroid. Bins come
// back ordered top line first (descending key). The partition is independent
// of the input component order.
std::vector<LineBin> bin_centroids(const ComponentSet& components,
                                   std::span<const Seam> seams,
                                   int small_bin_threshold = 2);

}  // namespace scriptorium

#include "scriptorium/components.hpp"

#include <cstdint>
#include <numeric>

namespace scriptorium {

namespace {

// Union-find over provisional row-scan labels.
struct UnionFind {
  std::vector<std::int32_t> parent;

  std::int32_t add() {
    parent.push_back(static_cast<std::int32_t>(parent.size()));
    return parent.back();
  }

  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent[b] = a;
    else
      parent[a] = b;
  }
};

}  // namespace

ComponentSet connected_components(const MaskRaster& mask, Connectivity conn) {
  const int n = mask.rows();
  const int m = mask.cols();
  const bool eight = conn == Connectivity::Eight;

  Raster<std::int32_t> labels(n, m, -1);
  UnionFind uf;

  // First pass: provisional labels, merging with already-scanned neighbors
  // (west, north-west, north, north-east).
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m; ++c) {
      if (!mask(r, c)) continue;
      std::int32_t label = -1;
      auto merge_with = [&](int rr, int cc) {
        if (rr < 0 || cc < 0 || cc >= m) return;
        std::int32_t other = labels(rr, cc);
        if (other < 0) return;
        if (label < 0)
          label = other;
        else
          uf.unite(label, other);
      };
      merge_with(r, c - 1);
      merge_with(r - 1, c);
      if (eight) {
        merge_with(r - 1, c - 1);
        merge_with(r - 1, c + 1);
      }
      if (label < 0) label = uf.add();
      labels(r, c) = label;
    }
  }

  // Second pass: map roots to dense component indices in row-major order of
  // first occurrence, then collect pixels (row-major within each component).
  std::vector<std::int32_t> root_to_index(uf.parent.size(), -1);
  ComponentSet out;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m; ++c) {
      std::int32_t label = labels(r, c);
      if (label < 0) continue;
      std::int32_t root = uf.find(label);
      std::int32_t index = root_to_index[root];
      if (index < 0) {
        index = static_cast<std::int32_t>(out.items.size());
        root_to_index[root] = index;
        out.items.emplace_back();
      }
      out.items[index].pixels.push_back(Pixel{r, c});
    }
  }

  for (Component& comp : out.items) {
    double sr = 0.0;
    double sc = 0.0;
    for (const Pixel& p : comp.pixels) {
      sr += p.row;
      sc += p.col;
    }
    const double k = static_cast<double>(comp.pixels.size());
    comp.centroid = Point{sr / k, sc / k};
  }
  return out;
}

}  // namespace scriptorium

#include "scriptorium/binning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "scriptorium/errors.hpp"

namespace scriptorium {

int seams_below(const Point& p, std::span<const Seam> seams) {
  int count = 0;
  for (const Seam& seam : seams) {
    if (seam.rows.empty()) continue;
    const int max_col = static_cast<int>(seam.rows.size()) - 1;
    const int col =
        std::clamp(static_cast<int>(std::lround(p.col)), 0, max_col);
    if (static_cast<double>(seam.rows[col]) > p.row) ++count;
  }
  return count;
}

namespace {

struct Candidate {
  double dist_sq = std::numeric_limits<double>::infinity();
  Point centroid{std::numeric_limits<double>::max(),
                 std::numeric_limits<double>::max()};
  int bin = -1;
  int bin_key = 0;

  bool better_than(const Candidate& other) const {
    if (dist_sq != other.dist_sq) return dist_sq < other.dist_sq;
    if (centroid.row != other.centroid.row)
      return centroid.row < other.centroid.row;
    if (centroid.col != other.centroid.col)
      return centroid.col < other.centroid.col;
    return bin_key < other.bin_key;
  }
};

}  // namespace

std::vector<LineBin> bin_centroids(const ComponentSet& components,
                                   std::span<const Seam> seams,
                                   int small_bin_threshold) {
  if (small_bin_threshold < 0)
    throw InputError("small bin threshold must be >= 0");
  if (components.count() == 0) return {};

  std::map<int, LineBin> by_key;
  for (int i = 0; i < components.count(); ++i) {
    const Point& centroid = components.items[i].centroid;
    const int key = seams_below(centroid, seams);
    LineBin& bin = by_key[key];
    bin.key = key;
    bin.members.push_back(i);
    bin.centroids.push_back(centroid);
  }

  std::vector<LineBin> bins;
  bins.reserve(by_key.size());
  for (auto& [key, bin] : by_key) bins.push_back(std::move(bin));

  // Dissolve undersized bins, smallest first (ties: lower key). Every member
  // of the dissolved bin joins the bin holding its nearest foreign centroid.
  while (bins.size() > 1) {
    int victim = -1;
    for (std::size_t b = 0; b < bins.size(); ++b) {
      if (static_cast<int>(bins[b].members.size()) > small_bin_threshold)
        continue;
      if (victim < 0 ||
          bins[b].members.size() < bins[victim].members.size() ||
          (bins[b].members.size() == bins[victim].members.size() &&
           bins[b].key < bins[victim].key))
        victim = static_cast<int>(b);
    }
    if (victim < 0) break;

    const LineBin dissolved = bins[victim];
    bins.erase(bins.begin() + victim);

    // Pick every target against the state before any reassignment so that
    // members of the dissolving bin never attract each other.
    std::vector<int> targets(dissolved.members.size());
    for (std::size_t k = 0; k < dissolved.members.size(); ++k) {
      const Point& from = dissolved.centroids[k];
      Candidate best;
      for (std::size_t b = 0; b < bins.size(); ++b) {
        for (const Point& to : bins[b].centroids) {
          const double dr = from.row - to.row;
          const double dc = from.col - to.col;
          Candidate cand{dr * dr + dc * dc, to, static_cast<int>(b),
                         bins[b].key};
          if (cand.better_than(best)) best = cand;
        }
      }
      targets[k] = best.bin;
    }
    for (std::size_t k = 0; k < dissolved.members.size(); ++k) {
      bins[targets[k]].members.push_back(dissolved.members[k]);
      bins[targets[k]].centroids.push_back(dissolved.centroids[k]);
    }
  }

  // Top line first: centroids near the top have the most seams below them.
  std::sort(bins.begin(), bins.end(),
            [](const LineBin& a, const LineBin& b) { return a.key > b.key; });
  for (LineBin& bin : bins) {
    std::vector<std::size_t> idx(bin.members.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return bin.members[a] < bin.members[b];
    });
    LineBin sorted;
    sorted.key = bin.key;
    for (const std::size_t i : idx) {
      sorted.members.push_back(bin.members[i]);
      sorted.centroids.push_back(bin.centroids[i]);
    }
    bin = std::move(sorted);
  }
  return bins;
}

}  // namespace scriptorium

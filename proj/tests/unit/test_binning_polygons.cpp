#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "scriptorium/binning.hpp"
#include "scriptorium/components.hpp"
#include "scriptorium/errors.hpp"
#include "scriptorium/geometry.hpp"
#include "scriptorium/polygons.hpp"
#include "test_util.hpp"

using namespace scriptorium;
using oracle::TestRng;

namespace {

Seam straight_seam(int row, int cols) {
  Seam seam;
  seam.rows.assign(cols, row);
  seam.start_row = row;
  seam.cost = 1.0;
  seam.fitness = 1.0;
  return seam;
}

ComponentSet components_at(const std::vector<Point>& centroids) {
  ComponentSet set;
  for (const Point& p : centroids) {
    Component comp;
    comp.centroid = p;
    comp.pixels.push_back(Pixel{static_cast<int>(std::lround(p.row)),
                                static_cast<int>(std::lround(p.col))});
    set.items.push_back(std::move(comp));
  }
  return set;
}

// Equality of two partitions expressed as sets of centroid-coordinate sets.
using PartitionKey = std::set<std::pair<double, double>>;

std::set<PartitionKey> partition_of(const std::vector<LineBin>& bins) {
  std::set<PartitionKey> partition;
  for (const LineBin& bin : bins) {
    PartitionKey key;
    for (const Point& p : bin.centroids) key.insert({p.row, p.col});
    partition.insert(std::move(key));
  }
  return partition;
}

// Dashed horizontal strips of 3x3 blobs, one strip per requested top row.
MaskRaster strip_mask(int rows, int cols, const std::vector<int>& strip_tops,
                      int spacing = 8) {
  MaskRaster mask(rows, cols, 0);
  for (const int top : strip_tops)
    for (int c0 = 2; c0 + 3 < cols; c0 += spacing)
      for (int r = top; r < top + 3; ++r)
        for (int c = c0; c < c0 + 3; ++c) mask(r, c) = 1;
  return mask;
}

}  // namespace

TEST_CASE("seams below count strictly lower seam rows") {
  const std::vector<Seam> seams = {straight_seam(10, 20)};
  CHECK(seams_below(Point{5.0, 7.3}, seams) == 1);
  CHECK(seams_below(Point{10.0, 7.3}, seams) == 0);  // exactly on the seam
  CHECK(seams_below(Point{10.4, 7.3}, seams) == 0);
  CHECK(seams_below(Point{11.0, 7.3}, seams) == 0);
}

TEST_CASE("seams below samples the seam at the rounded column") {
  Seam step;
  step.rows.assign(20, 0);
  for (int c = 10; c < 20; ++c) step.rows[c] = 20;
  const std::vector<Seam> seams = {step};
  CHECK(seams_below(Point{5.0, 9.49}, seams) == 0);  // rounds to column 9
  CHECK(seams_below(Point{5.0, 9.5}, seams) == 1);   // rounds to column 10
}

TEST_CASE("binning groups centroids by their seam key") {
  const ComponentSet set = components_at({
      {3.0, 5.0}, {4.0, 12.0}, {5.0, 22.0},     // above both seams: key 2
      {12.0, 6.0}, {13.0, 14.0}, {14.0, 25.0},  // between: key 1
      {24.0, 4.0}, {25.0, 15.0}, {26.0, 27.0},  // below both: key 0
  });
  const std::vector<Seam> seams = {straight_seam(10, 30),
                                   straight_seam(20, 30)};
  const std::vector<LineBin> bins = bin_centroids(set, seams, 2);
  REQUIRE(bins.size() == 3);
  CHECK(bins[0].key == 2);
  CHECK(bins[1].key == 1);
  CHECK(bins[2].key == 0);
  for (const LineBin& bin : bins) {
    CHECK(bin.members.size() == 3);
    for (const int member : bin.members)
      CHECK(seams_below(set.items[member].centroid, seams) == bin.key);
  }
}

TEST_CASE("small bins dissolve into the nearest neighbour's bin") {
  const ComponentSet set = components_at({
      {3.0, 5.0}, {4.0, 10.0}, {5.0, 15.0},     // key 2
      {11.0, 5.2},                              // key 1, lone straggler
      {24.0, 5.0}, {25.0, 10.0}, {26.0, 15.0},  // key 0
  });
  const std::vector<Seam> seams = {straight_seam(9, 30),
                                   straight_seam(20, 30)};
  const std::vector<LineBin> bins = bin_centroids(set, seams, 2);
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].key == 2);
  CHECK(bins[0].members.size() == 4);  // absorbed the straggler
  CHECK(bins[1].key == 0);
  CHECK(bins[1].members.size() == 3);

  int total = 0;
  for (const LineBin& bin : bins) total += static_cast<int>(bin.members.size());
  CHECK(total == set.count());
}

TEST_CASE("minimum spanning tree of tiny inputs") {
  CHECK_THROWS_AS(minimum_spanning_tree({}), InputError);
  CHECK(minimum_spanning_tree(std::vector<Point>{{1.0, 1.0}}).empty());

  const std::vector<Point> pair = {{0.0, 0.0}, {3.0, 4.0}};
  const std::vector<MstEdge> one = minimum_spanning_tree(pair);
  REQUIRE(one.size() == 1);
  CHECK(one[0].a == 0);
  CHECK(one[0].b == 1);
  CHECK(one[0].weight == doctest::Approx(5.0));

  const std::vector<Point> corner = {{0.0, 0.0}, {0.0, 3.0}, {4.0, 0.0}};
  const std::vector<MstEdge> two = minimum_spanning_tree(corner);
  REQUIRE(two.size() == 2);
  CHECK(two[0].a == 0);
  CHECK(two[0].b == 1);
  CHECK(two[1].a == 0);
  CHECK(two[1].b == 2);
}

TEST_CASE("fragmented canvases are reported, empty canvases rejected") {
  MaskRaster split(24, 24, 0);
  split(1, 1) = 1;
  split(20, 20) = 1;
  CHECK(!try_extract_polygon(split).has_value());
  CHECK_THROWS_AS(extract_polygon(split), InputError);
  CHECK_THROWS_AS(extract_polygon(MaskRaster(8, 8, 0)), InputError);
}

TEST_CASE("polygon simplification keeps corners and drops collinear points") {
  const std::vector<Point> outline = {{0.0, 0.0}, {0.0, 2.0}, {0.0, 4.0},
                                      {2.0, 4.0}, {4.0, 4.0}, {4.0, 2.0},
                                      {4.0, 0.0}, {2.0, 0.0}};
  const std::vector<Point> slim = simplify_polygon(outline, 0.5);
  CHECK(slim.size() == 4);
  const std::set<std::pair<double, double>> kept = [&] {
    std::set<std::pair<double, double>> s;
    for (const Point& p : slim) s.insert({p.row, p.col});
    return s;
  }();
  CHECK(kept.count({0.0, 0.0}));
  CHECK(kept.count({0.0, 4.0}));
  CHECK(kept.count({4.0, 4.0}));
  CHECK(kept.count({4.0, 0.0}));
}

TEST_CASE("line extraction bridges the members of each bin") {
  const MaskRaster mask = strip_mask(100, 80, {10, 40, 70});
  const ComponentSet set = connected_components(mask, Connectivity::Eight);
  REQUIRE(set.count() >= 9);
  const std::vector<Seam> seams = {straight_seam(30, 80),
                                   straight_seam(60, 80)};
  const std::vector<LineBin> bins = bin_centroids(set, seams, 2);
  REQUIRE(bins.size() == 3);

  const std::vector<LinePolygon> polygons =
      extract_line_polygons(bins, set, 100, 80, PolygonParams{});
  REQUIRE(polygons.size() == bins.size());
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    CHECK(polygons[i].line_index == static_cast<int>(i));
    CHECK(polygons[i].members == bins[i].members);
    for (const int member : bins[i].members)
      for (const Pixel& p : set.items[member].pixels)
        CHECK(polygon_contains(polygons[i].vertices, p));
  }

  // Centroids sit inside their own line's polygon and nobody else's.
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    for (std::size_t j = 0; j < polygons.size(); ++j) {
      for (const Point& centroid : bins[j].centroids) {
        if (i == j)
          CHECK(polygon_contains(polygons[i].vertices, centroid));
        else
          CHECK_FALSE(polygon_contains(polygons[i].vertices, centroid));
      }
    }
  }
}

TEST_CASE("a bin whose claimed centroids miss its members fails loudly") {
  MaskRaster mask(60, 60, 0);
  for (int r = 4; r < 7; ++r)
    for (int c = 4; c < 7; ++c) mask(r, c) = 1;
  for (int r = 50; r < 53; ++r)
    for (int c = 50; c < 53; ++c) mask(r, c) = 1;
  const ComponentSet set = connected_components(mask, Connectivity::Eight);
  REQUIRE(set.count() == 2);

  LineBin lying;
  lying.key = 0;
  lying.members = {0, 1};
  lying.centroids = {{5.0, 5.0}, {5.0, 6.0}};  // far from the second blob
  CHECK_THROWS_AS(
      extract_line_polygons(std::vector<LineBin>{lying}, set, 60, 60,
                            PolygonParams{}),
      InputError);
}

TEST_SUITE("properties") {

TEST_CASE("binning partitions the component indices") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    INFO("seed ", seed);
    TestRng rng(seed * 1613);
    const int rows = 40, cols = 48;
    const MaskRaster mask = oracle::random_mask(seed * 1613 + 1, rows, cols, 0.08);
    const ComponentSet set = connected_components(mask, Connectivity::Eight);
    if (set.count() == 0) continue;

    std::vector<Seam> seams;
    const int seam_count = rng.range(1, 4);
    for (int i = 0; i < seam_count; ++i)
      seams.push_back(straight_seam(rng.range(0, rows - 1), cols));

    for (const int threshold : {0, 2}) {
      const std::vector<LineBin> bins = bin_centroids(set, seams, threshold);
      std::set<int> seen;
      int total = 0;
      for (const LineBin& bin : bins) {
        CHECK(bin.members.size() == bin.centroids.size());
        for (const int member : bin.members) {
          CHECK(member >= 0);
          CHECK(member < set.count());
          seen.insert(member);
          ++total;
        }
      }
      CHECK(total == set.count());                      // conservation
      CHECK(static_cast<int>(seen.size()) == set.count());  // disjoint
    }
  }
}

TEST_CASE("without dissolution the bin is exactly the seam key") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    INFO("seed ", seed);
    TestRng rng(seed * 1721);
    const int rows = 36, cols = 40;
    const MaskRaster mask = oracle::random_mask(seed * 1721 + 1, rows, cols, 0.1);
    const ComponentSet set = connected_components(mask, Connectivity::Eight);
    if (set.count() == 0) continue;

    std::vector<Seam> seams;
    for (int i = 0, n = rng.range(1, 3); i < n; ++i)
      seams.push_back(straight_seam(rng.range(0, rows - 1), cols));

    const std::vector<LineBin> bins = bin_centroids(set, seams, 0);
    int previous_key = std::numeric_limits<int>::max();
    for (const LineBin& bin : bins) {
      CHECK(bin.key < previous_key);  // strictly descending, top line first
      previous_key = bin.key;
      for (const int member : bin.members)
        CHECK(seams_below(set.items[member].centroid, seams) == bin.key);
    }
  }
}

TEST_CASE("dissolution conserves members and invents no keys") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    INFO("seed ", seed);
    TestRng rng(seed * 1831);
    const int rows = 36, cols = 40;
    const MaskRaster mask = oracle::random_mask(seed * 1831 + 1, rows, cols, 0.06);
    const ComponentSet set = connected_components(mask, Connectivity::Eight);
    if (set.count() < 2) continue;

    std::vector<Seam> seams;
    for (int i = 0, n = rng.range(1, 4); i < n; ++i)
      seams.push_back(straight_seam(rng.range(0, rows - 1), cols));

    const std::vector<LineBin> raw = bin_centroids(set, seams, 0);
    const std::vector<LineBin> cooked = bin_centroids(set, seams, 2);

    std::set<int> raw_keys, cooked_keys;
    int raw_total = 0, cooked_total = 0;
    for (const LineBin& bin : raw) {
      raw_keys.insert(bin.key);
      raw_total += static_cast<int>(bin.members.size());
    }
    for (const LineBin& bin : cooked) {
      cooked_keys.insert(bin.key);
      cooked_total += static_cast<int>(bin.members.size());
    }
    CHECK(cooked_total == raw_total);
    for (const int key : cooked_keys) CHECK(raw_keys.count(key) == 1);
  }
}

TEST_CASE("binning ignores the order components arrive in") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    INFO("seed ", seed);
    TestRng rng(seed * 1913);
    const int count = rng.range(3, 14);
    ComponentSet forward;
    for (int i = 0; i < count; ++i) {
      Component comp;
      comp.centroid = Point{rng.unit() * 60.0, rng.unit() * 50.0};
      comp.pixels.push_back(Pixel{0, 0});
      forward.items.push_back(std::move(comp));
    }
    ComponentSet backward;
    backward.items.assign(forward.items.rbegin(), forward.items.rend());

    std::vector<Seam> seams;
    for (int i = 0, n = rng.range(1, 3); i < n; ++i)
      seams.push_back(straight_seam(rng.range(0, 59), 50));

    CHECK(partition_of(bin_centroids(forward, seams, 2)) ==
          partition_of(bin_centroids(backward, seams, 2)));
  }
}

TEST_CASE("spanning tree weight matches full tree enumeration") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    INFO("seed ", seed);
    TestRng rng(seed * 2027);
    const int count = rng.range(2, 6);
    const std::vector<Point> points =
        oracle::random_points(seed * 2027 + 1, count, 64, 64);

    const std::vector<MstEdge> edges = minimum_spanning_tree(points);
    REQUIRE(static_cast<int>(edges.size()) == count - 1);
    std::vector<std::pair<int, int>> pairs;
    for (const MstEdge& e : edges) {
      CHECK(e.a < e.b);
      pairs.emplace_back(e.a, e.b);
    }
    CHECK(std::is_sorted(pairs.begin(), pairs.end()));
    CHECK(oracle::edge_weight_sum(points, pairs) ==
          oracle::brute_mst_weight(points));

    // The edge set spans every point.
    std::vector<int> parent(count);
    for (int i = 0; i < count; ++i) parent[i] = i;
    const std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [a, b] : pairs) parent[find(a)] = find(b);
    for (int i = 1; i < count; ++i) CHECK(find(0) == find(i));
  }
}

TEST_CASE("extracted polygons cover their members and only their members") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    INFO("seed ", seed);
    TestRng rng(seed * 2129);
    const int strips = rng.range(2, 3);
    std::vector<int> tops;
    for (int i = 0; i < strips; ++i) tops.push_back(6 + 26 * i);
    const int rows = tops.back() + 20;
    const int cols = rng.range(40, 64);
    const MaskRaster mask = strip_mask(rows, cols, tops, rng.range(7, 10));
    const ComponentSet set = connected_components(mask, Connectivity::Eight);

    std::vector<Seam> seams;
    for (int i = 0; i + 1 < strips; ++i)
      seams.push_back(straight_seam(tops[i] + 14, cols));

    const std::vector<LineBin> bins = bin_centroids(set, seams, 2);
    REQUIRE(static_cast<int>(bins.size()) == strips);
    const std::vector<LinePolygon> polygons =
        extract_line_polygons(bins, set, rows, cols, PolygonParams{});
    REQUIRE(polygons.size() == bins.size());

    for (std::size_t i = 0; i < polygons.size(); ++i) {
      for (const int member : bins[i].members)
        for (const Pixel& p : set.items[member].pixels)
          CHECK(polygon_contains(polygons[i].vertices, p));
      for (std::size_t j = 0; j < polygons.size(); ++j) {
        for (const Point& centroid : bins[j].centroids) {
          if (i == j)
            CHECK(polygon_contains(polygons[i].vertices, centroid));
          else
            CHECK_FALSE(polygon_contains(polygons[i].vertices, centroid));
        }
      }
    }
  }
}

}  // TEST_SUITE

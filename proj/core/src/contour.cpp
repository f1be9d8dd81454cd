#include "scriptorium/contour.hpp"

#include <cstddef>
#include <cstdint>
#include <unordered_set>

#include "scriptorium/components.hpp"

namespace scriptorium {

namespace {

// Clockwise Moore neighborhood starting north.
constexpr int kDr[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
constexpr int kDc[8] = {0, 1, 1, 1, 0, -1, -1, -1};

int direction_index(const Pixel& from, const Pixel& to) {
  for (int i = 0; i < 8; ++i)
    if (from.row + kDr[i] == to.row && from.col + kDc[i] == to.col) return i;
  return -1;
}

}  // namespace

std::vector<Pixel> trace_outer_contour(const MaskRaster& mask) {
  std::size_t fg = 0;
  for (std::uint8_t v : mask.data())
    if (v) ++fg;
  if (fg == 0) throw InputError("empty line");

  ComponentSet cs = connected_components(mask, Connectivity::Eight);
  if (cs.count() > 1) throw InputError("disconnected line");

  const Pixel start = cs.items[0].pixels.front();  // topmost, then leftmost
  const Pixel start_backtrack{start.row, start.col - 1};

  // The walk is a deterministic map on (pixel, backtrack) states, so it ends
  // the first time a state recurs. Backtrack cells can lie one step outside
  // the raster, hence the shifted packing.
  const auto pack = [&](const Pixel& p) {
    return static_cast<std::uint64_t>(p.row + 1) * (mask.cols() + 2) +
           static_cast<std::uint64_t>(p.col + 1);
  };
  const auto state_key = [&](const Pixel& p, const Pixel& back) {
    return (pack(p) << 32) | pack(back);
  };

  std::vector<Pixel> contour{start};
  Pixel cur = start;
  Pixel backtrack = start_backtrack;
  std::unordered_set<std::uint64_t> seen{state_key(cur, backtrack)};

  const std::size_t max_steps = 16 * (fg + 2);
  for (std::size_t step = 0; step < max_steps; ++step) {
    const int entry = direction_index(cur, backtrack);
    Pixel next{};
    Pixel next_backtrack{};
    bool found = false;
    for (int j = 1; j <= 8; ++j) {
      const int d = (entry + j) % 8;
      const int rr = cur.row + kDr[d];
      const int cc = cur.col + kDc[d];
      if (mask.in_bounds(rr, cc) && mask(rr, cc)) {
        next = Pixel{rr, cc};
        const int prev = (entry + j - 1) % 8;
        next_backtrack = Pixel{cur.row + kDr[prev], cur.col + kDc[prev]};
        found = true;
        break;
      }
    }
    if (!found) return contour;  // isolated pixel

    if (!seen.insert(state_key(next, next_backtrack)).second) return contour;

    contour.push_back(next);
    cur = next;
    backtrack = next_backtrack;
  }
  throw InvariantError("contour trace did not terminate");
}

}  // namespace scriptorium

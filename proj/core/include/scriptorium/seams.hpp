#pragma once

#include <cstdint>
#include <vector>

#include "scriptorium/raster.hpp"

namespace scriptorium {

enum class SeamDirection { LeftToRight, RightToLeft };

// Casting parameters: one seam starts every alpha rows, and each +-1 row move
// costs beta on top of the entered pixel's energy.
struct SeamParams {
  int alpha = 120;
  double beta = 3.0;
};

// A column-monotone path across the page: one row per column, adjacent rows
// differing by at most 1. cost accumulates the energy of every entered pixel
// plus the deviation penalties; fitness is its inverse.
struct Seam {
  std::vector<int> rows;
  SeamDirection direction = SeamDirection::LeftToRight;
  int start_row = 0;
  double cost = 0.0;
  double fitness = 0.0;
};

// Dynamic program over one travel direction. Solves every start row at once:
// two rolling column buffers for the costs plus a full move table for path
// reconstruction. Right-to-left fields walk the energy map's columns in
// reverse; extracted seams are always in page column order.
class SeamField {
 public:
  SeamField(const GrayRaster& energy, double beta, SeamDirection direction);

  // Minimum path cost from the given start row (at the travel origin column).
  double start_cost(int start_row) const;

  Seam cast(int start_row) const;

  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  SeamDirection direction_;
  std::vector<double> start_cost_;
  std::vector<std::int8_t> moves_;  // (cols-1) x rows, travel order
};

// Minimum-cost monotone path pinned at start_row in the first column of
// travel, with a free ending row. Ties prefer staying level, then moving up,
// then moving down.
Seam cast_seam(const GrayRaster& energy, int start_row, SeamDirection direction,
               double beta);

// One seam per start row in {0, alpha, 2*alpha, ...} per direction:
// 2 * ceil(n / alpha) seams in total.
std::vector<Seam> cast_all(const GrayRaster& energy, const SeamParams& params);

// Wherever two seams cross at two or more columns, the lower-fitness seam
// adopts the higher-fitness seam's rows between the first and last crossing.
// Pairs are processed in fitness order and iterated to a fixpoint (at most 10
// passes). Results stay column-monotone.
std::vector<Seam> merge_seams(std::vector<Seam> seams);

}  // namespace scriptorium

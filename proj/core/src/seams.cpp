#include "scriptorium/seams.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "scriptorium/errors.hpp"

namespace scriptorium {

namespace {

double fitness_of(double cost) {
  return cost > 0.0 ? 1.0 / cost : std::numeric_limits<double>::infinity();
}

void check_monotone(const Seam& seam) {
  for (std::size_t c = 1; c < seam.rows.size(); ++c)
    if (std::abs(seam.rows[c] - seam.rows[c - 1]) > 1)
      throw InvariantError("seam lost column monotonicity during merging");
}

// Columns where the two seams touch or where the sign of their row difference
// flips relative to the last nonzero sign.
std::vector<int> crossing_columns(const Seam& a, const Seam& b) {
  std::vector<int> crossings;
  int last_sign = 0;
  for (std::size_t c = 0; c < a.rows.size(); ++c) {
    const int diff = a.rows[c] - b.rows[c];
    if (diff == 0) {
      crossings.push_back(static_cast<int>(c));
      continue;
    }
    const int sign = diff > 0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign)
      crossings.push_back(static_cast<int>(c));
    last_sign = sign;
  }
  return crossings;
}

}  // namespace

SeamField::SeamField(const GrayRaster& energy, double beta,
                     SeamDirection direction)
    : rows_(energy.rows()), cols_(energy.cols()), direction_(direction) {
  if (beta < 0.0) throw InputError("seam deviation penalty must be >= 0");

  const int n = rows_;
  const int m = cols_;
  // Travel column t maps to page column t (left-to-right) or m-1-t.
  const auto page_col = [&](int t) {
    return direction_ == SeamDirection::LeftToRight ? t : m - 1 - t;
  };

  moves_.assign(static_cast<std::size_t>(std::max(m - 1, 0)) * n, 0);
  std::vector<double> next(n, 0.0);  // costs at travel column t+1
  std::vector<double> cur(n, 0.0);

  static constexpr int kMovePreference[3] = {0, -1, 1};
  for (int t = m - 2; t >= 0; --t) {
    const int entered_col = page_col(t + 1);
    std::int8_t* move_row = moves_.data() + static_cast<std::size_t>(t) * n;
    for (int r = 0; r < n; ++r) {
      double best = std::numeric_limits<double>::infinity();
      std::int8_t best_move = 0;
      for (const int dr : kMovePreference) {
        const int nr = r + dr;
        if (nr < 0 || nr >= n) continue;
        const double step =
            energy(nr, entered_col) + beta * std::abs(dr);
        const double total = step + next[nr];
        if (total < best) {
          best = total;
          best_move = static_cast<std::int8_t>(dr);
        }
      }
      cur[r] = best;
      move_row[r] = best_move;
    }
    std::swap(cur, next);
  }
  start_cost_ = std::move(next);
}

double SeamField::start_cost(int start_row) const {
  if (start_row < 0 || start_row >= rows_)
    throw InputError("seam start row out of bounds");
  return start_cost_[start_row];
}

Seam SeamField::cast(int start_row) const {
  const double cost = start_cost(start_row);

  Seam seam;
  seam.direction = direction_;
  seam.start_row = start_row;
  seam.cost = cost;
  seam.fitness = fitness_of(cost);
  seam.rows.assign(cols_, start_row);

  int r = start_row;
  for (int t = 0; t < cols_ - 1; ++t) {
    r += moves_[static_cast<std::size_t>(t) * rows_ + r];
    const int col =
        direction_ == SeamDirection::LeftToRight ? t + 1 : cols_ - 2 - t;
    seam.rows[col] = r;
  }
  return seam;
}

Seam cast_seam(const GrayRaster& energy, int start_row, SeamDirection direction,
               double beta) {
  return SeamField(energy, beta, direction).cast(start_row);
}

std::vector<Seam> cast_all(const GrayRaster& energy, const SeamParams& params) {
  if (params.alpha < 1) throw InputError("seam spacing alpha must be >= 1");

  std::vector<int> starts;
  for (int r = 0; r < energy.rows(); r += params.alpha) starts.push_back(r);

  std::vector<Seam> seams;
  seams.reserve(2 * starts.size());
  for (const SeamDirection dir :
       {SeamDirection::LeftToRight, SeamDirection::RightToLeft}) {
    const SeamField field(energy, params.beta, dir);
    for (const int start : starts) seams.push_back(field.cast(start));
  }
  return seams;
}

std::vector<Seam> merge_seams(std::vector<Seam> seams) {
  if (seams.size() < 2) return seams;
  const std::size_t width = seams[0].rows.size();
  for (const Seam& s : seams)
    if (s.rows.size() != width)
      throw InputError("merge_seams: seams span different column counts");

  // Fittest first; ties by start row, then by direction of travel.
  std::vector<int> order(seams.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (seams[a].fitness != seams[b].fitness)
      return seams[a].fitness > seams[b].fitness;
    if (seams[a].start_row != seams[b].start_row)
      return seams[a].start_row < seams[b].start_row;
    return static_cast<int>(seams[a].direction) <
           static_cast<int>(seams[b].direction);
  });

  constexpr int kMaxPasses = 10;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Seam& strong = seams[order[i]];
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        Seam& weak = seams[order[j]];
        const std::vector<int> crossings = crossing_columns(strong, weak);
        if (crossings.size() < 2) continue;
        // Copy over [first crossing, last crossing). At a touch column the
        // copy is a no-op; at a transversal crossing the neighbouring rows of
        // the two seams coincide, so both junctions stay monotone.
        for (int c = crossings.front(); c < crossings.back(); ++c) {
          if (weak.rows[c] != strong.rows[c]) {
            weak.rows[c] = strong.rows[c];
            changed = true;
          }
        }
        check_monotone(weak);
      }
    }
    if (!changed) break;
  }
  return seams;
}

}  // namespace scriptorium

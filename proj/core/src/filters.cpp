#include "scriptorium/filters.hpp"

#include <algorithm>
#include <vector>

namespace scriptorium {

namespace {

void require_positive(int k) {
  if (k < 1) throw InputError("filter kernel size must be at least 1");
}

}  // namespace

Window window_offsets(int k, KernelAnchor anchor) {
  const int lo = anchor == KernelAnchor::Centered ? -(k / 2) : -((k - 1) / 2);
  return Window{lo, lo + k - 1};
}

GrayRaster box_filter(const GrayRaster& in, int k, KernelAnchor row_anchor,
                      KernelAnchor col_anchor) {
  require_positive(k);
  const int n = in.rows();
  const int m = in.cols();
  const Window wr = window_offsets(k, row_anchor);
  const Window wc = window_offsets(k, col_anchor);

  // Inclusive 2-D prefix sums with a zero guard row/column.
  std::vector<double> prefix(static_cast<std::size_t>(n + 1) * (m + 1), 0.0);
  const auto at = [m](std::vector<double>& p, int r, int c) -> double& {
    return p[static_cast<std::size_t>(r) * (m + 1) + c];
  };
  for (int r = 0; r < n; ++r) {
    const double* row = in.row_ptr(r);
    double run = 0.0;
    for (int c = 0; c < m; ++c) {
      run += row[c];
      at(prefix, r + 1, c + 1) = at(prefix, r, c + 1) + run;
    }
  }

  GrayRaster out(n, m);
  for (int r = 0; r < n; ++r) {
    const int r1 = std::max(0, r + wr.lo);
    const int r2 = std::min(n - 1, r + wr.hi);
    for (int c = 0; c < m; ++c) {
      const int c1 = std::max(0, c + wc.lo);
      const int c2 = std::min(m - 1, c + wc.hi);
      const double sum = at(prefix, r2 + 1, c2 + 1) - at(prefix, r1, c2 + 1) -
                         at(prefix, r2 + 1, c1) + at(prefix, r1, c1);
      const int count = (r2 - r1 + 1) * (c2 - c1 + 1);
      out(r, c) = sum / count;
    }
  }
  return out;
}

GrayRaster plus_filter(const GrayRaster& in, int g, KernelAnchor row_anchor,
                       KernelAnchor col_anchor) {
  require_positive(g);
  const int n = in.rows();
  const int m = in.cols();
  const Window wr = window_offsets(g, row_anchor);
  const Window wc = window_offsets(g, col_anchor);

  // 1-D inclusive prefix sums along rows and along columns.
  std::vector<double> row_prefix(static_cast<std::size_t>(n) * (m + 1), 0.0);
  std::vector<double> col_prefix(static_cast<std::size_t>(n + 1) * m, 0.0);
  for (int r = 0; r < n; ++r) {
    const double* row = in.row_ptr(r);
    double* pr = row_prefix.data() + static_cast<std::size_t>(r) * (m + 1);
    for (int c = 0; c < m; ++c) pr[c + 1] = pr[c] + row[c];
  }
  for (int c = 0; c < m; ++c) {
    double run = 0.0;
    for (int r = 0; r < n; ++r) {
      run += in(r, c);
      col_prefix[static_cast<std::size_t>(r + 1) * m + c] = run;
    }
  }

  GrayRaster out(n, m);
  for (int r = 0; r < n; ++r) {
    const int r1 = std::max(0, r + wr.lo);
    const int r2 = std::min(n - 1, r + wr.hi);
    const double* pr = row_prefix.data() + static_cast<std::size_t>(r) * (m + 1);
    for (int c = 0; c < m; ++c) {
      const int c1 = std::max(0, c + wc.lo);
      const int c2 = std::min(m - 1, c + wc.hi);
      const double hsum = pr[c2 + 1] - pr[c1];
      const double vsum = col_prefix[static_cast<std::size_t>(r2 + 1) * m + c] -
                          col_prefix[static_cast<std::size_t>(r1) * m + c];
      // The segments overlap exactly at the center pixel; count it once.
      const double sum = hsum + vsum - in(r, c);
      const int count = (c2 - c1 + 1) + (r2 - r1 + 1) - 1;
      out(r, c) = sum / count;
    }
  }
  return out;
}

}  // namespace scriptorium

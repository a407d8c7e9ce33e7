// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace glsreg {

/// Range of a one-dimensional supremum search. `hi` may be +inf, in which case
/// the scan stops at `ScanOptions::cap`.
struct ScanRange {
  double lo = 1.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = true;
};

struct ScanOptions {
  int grid_points = 512;
  double cap = 1e4;
  bool refine = true;
};

struct ScanResult {
  double value = 0.0;
  double argmax = 0.0;
  /// Objective grows without bound towards an open end or the cap.
  bool unbounded = false;
  /// The supremum is a limit approached at an open end or at the cap rather
  /// than an attained maximum; `value` is the extrapolated limit.
  bool boundary_limit = false;
  std::vector<double> grid;
  std::vector<double> values;
};

/// Supremum of `f` over the range: geometric grid scan, approach sequences
/// towards open finite ends, then golden-section refinement around the best
/// grid point. Non-finite negative values and NaN are treated as -inf.
ScanResult scan_supremum(const std::function<double(double)>& f, const ScanRange& range,
                         const ScanOptions& options = {});

/// Golden-section maximisation on [a, b]; returns {argmax, value}.
std::pair<double, double> golden_section_max(const std::function<double(double)>& f, double a,
                                             double b, int max_iter = 200);

/// Geometric grid of `n` points on [lo, hi], lo > 0.
std::vector<double> geometric_grid(double lo, double hi, int n);

}  // namespace glsreg

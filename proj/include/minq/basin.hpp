// Copyright 2026 The minq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MINQ_BASIN_HPP
#define MINQ_BASIN_HPP

#include <string>
#include <vector>

#include "minq/nonlinear_map.hpp"

namespace minq {

// Rasterized basins of attraction of the map over a complex-plane window:
// which fixed point each pixel's orbit reaches and in how many steps. The
// non-convergent boundary pixels trace out the Julia set (the imaginary
// axis).

struct Window {
  double re_min;
  double re_max;
  double im_min;
  double im_max;
  int width;
  int height;
};

inline Window default_window() { return Window{-2.0, 2.0, -2.0, 2.0, 1000, 1000}; }

inline constexpr int kDefaultBasinMaxIter = 50;

/// Row-major classification grid; row 0 holds the top of the window
/// (largest Im), matching image order.
struct BasinRaster {
  Window window;
  int max_iter;
  std::vector<Classification> cells;

  const Classification& at(int row, int col) const {
    return cells[static_cast<std::size_t>(row) * window.width + col];
  }

  /// Complex coordinate of a pixel center.
  Complex pixel_center(int row, int col) const {
    const double dre = (window.re_max - window.re_min) / window.width;
    const double dim = (window.im_max - window.im_min) / window.height;
    return Complex(window.re_min + (col + 0.5) * dre, window.im_max - (row + 0.5) * dim);
  }
};

/// Classifies every pixel center. Rows are distributed over `workers`
/// threads (0 = hardware concurrency) into preallocated storage, so the
/// result is bit-identical for any worker count.
BasinRaster render_basin(const Window& window, double tol = kConvergenceTol,
                         int max_iter = kDefaultBasinMaxIter, int workers = 0);

/// Binary PPM (P6, maxval 255). Convergence to +1 renders red, to -1 blue,
/// fading linearly toward white as the iteration count approaches max_iter;
/// non-convergent (Julia set) pixels are white.
void write_ppm(const BasinRaster& raster, const std::string& path);

/// CSV with header `re,im,class,iterations`, one pixel per row in row-major
/// order; class is plus_x, minus_x or julia. Coordinates are written with
/// full round-trip precision.
void write_csv(const BasinRaster& raster, const std::string& path);

/// Rebuilds a raster from write_csv output. The window is inferred from the
/// pixel centers (exact up to rounding; a 1-pixel-wide dimension is assigned
/// unit extent), and max_iter from the largest iteration count present.
BasinRaster read_csv(const std::string& path);

}  // namespace minq

#endif  // MINQ_BASIN_HPP

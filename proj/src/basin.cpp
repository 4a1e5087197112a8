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

#include "minq/basin.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "minq/format.hpp"

namespace minq {

namespace {

void validate_window(const Window& w) {
  if (!(w.re_min < w.re_max) || !(w.im_min < w.im_max)) {
    throw std::invalid_argument("render_basin: window bounds must be ordered");
  }
  if (w.width < 1 || w.height < 1) {
    throw std::invalid_argument("render_basin: resolution must be at least 1x1");
  }
}

}  // namespace

BasinRaster render_basin(const Window& window, double tol, int max_iter, int workers) {
  validate_window(window);
  if (!(tol > 0.0)) throw std::invalid_argument("render_basin: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("render_basin: max_iter must be >= 1");

  BasinRaster raster;
  raster.window = window;
  raster.max_iter = max_iter;
  raster.cells.resize(static_cast<std::size_t>(window.width) * window.height);

  const double dre = (window.re_max - window.re_min) / window.width;
  const double dim = (window.im_max - window.im_min) / window.height;

  auto render_row = [&](int row) {
    const double im = window.im_max - (row + 0.5) * dim;
    Classification* out = raster.cells.data() + static_cast<std::size_t>(row) * window.width;
    for (int col = 0; col < window.width; ++col) {
      const double re = window.re_min + (col + 0.5) * dre;
      out[col] = classify(ProjectivePoint::from_z(Complex(re, im)), tol, max_iter);
    }
  };

  int thread_count = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  if (thread_count < 1) thread_count = 1;
  if (thread_count > window.height) thread_count = window.height;

  if (thread_count == 1) {
    for (int row = 0; row < window.height; ++row) render_row(row);
    return raster;
  }

  std::atomic<int> next_row{0};
  auto worker = [&] {
    for (;;) {
      const int row = next_row.fetch_add(1, std::memory_order_relaxed);
      if (row >= window.height) return;
      render_row(row);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(thread_count));
  for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return raster;
}

void write_ppm(const BasinRaster& raster, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_ppm: cannot open " + path);
  out << "P6\n" << raster.window.width << " " << raster.window.height << "\n255\n";

  std::vector<unsigned char> rowbuf(static_cast<std::size_t>(raster.window.width) * 3);
  for (int row = 0; row < raster.window.height; ++row) {
    for (int col = 0; col < raster.window.width; ++col) {
      const Classification& cell = raster.at(row, col);
      unsigned char r = 255, g = 255, b = 255;
      if (cell.tag != ClassTag::NonConvergent) {
        const double t = std::min(1.0, static_cast<double>(cell.iterations) / raster.max_iter);
        const auto fade = static_cast<unsigned char>(std::lround(255.0 * t));
        if (cell.tag == ClassTag::PlusX) {
          g = b = fade;
        } else {
          r = g = fade;
        }
      }
      rowbuf[3 * static_cast<std::size_t>(col)] = r;
      rowbuf[3 * static_cast<std::size_t>(col) + 1] = g;
      rowbuf[3 * static_cast<std::size_t>(col) + 2] = b;
    }
    out.write(reinterpret_cast<const char*>(rowbuf.data()), static_cast<std::streamsize>(rowbuf.size()));
  }
  if (!out) throw std::runtime_error("write_ppm: write failed for " + path);
}

namespace {

const char* class_name(ClassTag tag) {
  switch (tag) {
    case ClassTag::PlusX: return "plus_x";
    case ClassTag::MinusX: return "minus_x";
    default: return "julia";
  }
}

ClassTag class_from_name(const std::string& name, std::size_t line) {
  if (name == "plus_x") return ClassTag::PlusX;
  if (name == "minus_x") return ClassTag::MinusX;
  if (name == "julia") return ClassTag::NonConvergent;
  throw std::runtime_error("read_csv: unknown class '" + name + "' on line " +
                           std::to_string(line));
}

double parse_field_double(const std::string& field, std::size_t line) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw std::runtime_error("read_csv: bad number '" + field + "' on line " +
                             std::to_string(line));
  }
  return value;
}

}  // namespace

void write_csv(const BasinRaster& raster, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << "re,im,class,iterations\n";
  for (int row = 0; row < raster.window.height; ++row) {
    for (int col = 0; col < raster.window.width; ++col) {
      const Complex center = raster.pixel_center(row, col);
      const Classification& cell = raster.at(row, col);
      out << format_double_exact(center.real()) << ',' << format_double_exact(center.imag())
          << ',' << class_name(cell.tag) << ',' << cell.iterations << '\n';
    }
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

BasinRaster read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);

  std::string line;
  if (!std::getline(in, line) || line != "re,im,class,iterations") {
    throw std::runtime_error("read_csv: missing 're,im,class,iterations' header in " + path);
  }

  std::vector<double> res, ims;
  std::vector<Classification> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<std::string, 4> fields;
    std::size_t start = 0;
    for (int f = 0; f < 4; ++f) {
      const std::size_t comma = line.find(',', start);
      const bool last = f == 3;
      if (last != (comma == std::string::npos)) {
        throw std::runtime_error("read_csv: expected 4 fields on line " + std::to_string(line_no));
      }
      fields[f] = line.substr(start, last ? std::string::npos : comma - start);
      start = comma + 1;
    }
    res.push_back(parse_field_double(fields[0], line_no));
    ims.push_back(parse_field_double(fields[1], line_no));
    const int iterations = static_cast<int>(parse_field_double(fields[3], line_no));
    cells.push_back(Classification{class_from_name(fields[2], line_no), iterations});
  }
  if (cells.empty()) throw std::runtime_error("read_csv: no data rows in " + path);

  int width = static_cast<int>(cells.size());
  for (std::size_t k = 1; k < res.size(); ++k) {
    if (res[k] == res[0]) {
      width = static_cast<int>(k);
      break;
    }
  }
  if (cells.size() % static_cast<std::size_t>(width) != 0) {
    throw std::runtime_error("read_csv: row count is not a multiple of the inferred width");
  }
  const int height = static_cast<int>(cells.size() / static_cast<std::size_t>(width));

  Window w;
  w.width = width;
  w.height = height;
  if (width >= 2) {
    const double dre = res[1] - res[0];
    w.re_min = res[0] - 0.5 * dre;
    w.re_max = res[static_cast<std::size_t>(width) - 1] + 0.5 * dre;
  } else {
    w.re_min = res[0] - 0.5;
    w.re_max = res[0] + 0.5;
  }
  if (height >= 2) {
    const double dim = ims[0] - ims[static_cast<std::size_t>(width)];
    w.im_max = ims[0] + 0.5 * dim;
    w.im_min = ims[ims.size() - 1] - 0.5 * dim;
  } else {
    w.im_min = ims[0] - 0.5;
    w.im_max = ims[0] + 0.5;
  }
  validate_window(w);

  int max_iter = 1;
  for (const auto& cell : cells) max_iter = std::max(max_iter, cell.iterations);

  BasinRaster raster;
  raster.window = w;
  raster.max_iter = max_iter;
  raster.cells = std::move(cells);
  return raster;
}

}  // namespace minq

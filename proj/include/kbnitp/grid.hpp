#pragma once

#include <cstddef>
#include <cstdlib>
#include <algorithm>
#include <string>
#include <vector>

namespace kbnitp {

/// Rectangular search space of width x height discrete cells.
struct GridDims {
  int width = 1;
  int height = 1;

  std::size_t cell_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  bool operator==(const GridDims&) const = default;
};

struct Cell {
  int col = 0;
  int row = 0;

  bool operator==(const Cell&) const = default;
};

inline bool in_bounds(const GridDims& dims, const Cell& c) {
  return c.col >= 0 && c.col < dims.width && c.row >= 0 && c.row < dims.height;
}

/// Row-major linear index.
inline std::size_t cell_index(const GridDims& dims, const Cell& c) {
  return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(dims.width) +
         static_cast<std::size_t>(c.col);
}

inline Cell cell_at(const GridDims& dims, std::size_t index) {
  return Cell{static_cast<int>(index % static_cast<std::size_t>(dims.width)),
              static_cast<int>(index / static_cast<std::size_t>(dims.width))};
}

inline int chebyshev(const Cell& a, const Cell& b) {
  return std::max(std::abs(a.col - b.col), std::abs(a.row - b.row));
}

/// Ordered walk through the grid. Visit positions are indexed from 0.
/// A deployment path starts and ends at the base station and every step
/// moves to one of the 8 neighbours or stays put.
struct Path {
  std::vector<Cell> cells;

  std::size_t size() const { return cells.size(); }
  bool empty() const { return cells.empty(); }
  const Cell& operator[](std::size_t i) const { return cells[i]; }
  bool operator==(const Path&) const = default;
};

void validate_dims(const GridDims& dims);

/// Throws std::invalid_argument unless the walk is non-empty, in bounds and
/// 9-connected. Inference accepts any such walk.
void validate_path(const Path& path, const GridDims& dims);

/// Deployment check: a valid walk that starts and ends at `base` and is no
/// longer than `budget` cells.
void validate_deployment_path(const Path& path, const GridDims& dims,
                              const Cell& base, std::size_t budget);

std::string to_string(const Cell& c);
std::string to_string(const Path& p);

/// One entry per distinct cell of a path, in order of first visit, plus the
/// slot of every visit position within that list.
struct PathCells {
  std::vector<std::size_t> cells;       // linear cell indices
  std::vector<std::size_t> slot_of;     // path position -> slot in `cells`
  std::vector<std::size_t> visit_count; // slot -> number of visits
};

PathCells distinct_cells(const Path& path, const GridDims& dims);

}  // namespace kbnitp

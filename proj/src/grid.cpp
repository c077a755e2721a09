#include "kbnitp/grid.hpp"

#include <sstream>
#include <stdexcept>

namespace kbnitp {

void validate_dims(const GridDims& dims) {
  if (dims.width < 1 || dims.height < 1) {
    throw std::invalid_argument("grid dims must be at least 1x1, got " +
                                std::to_string(dims.width) + "x" +
                                std::to_string(dims.height));
  }
}

void validate_path(const Path& path, const GridDims& dims) {
  if (path.empty()) throw std::invalid_argument("path is empty");
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!in_bounds(dims, path[i])) {
      throw std::invalid_argument("path position " + std::to_string(i) + " " +
                                  to_string(path[i]) + " is out of bounds");
    }
    if (i > 0 && chebyshev(path[i - 1], path[i]) > 1) {
      throw std::invalid_argument("path positions " + std::to_string(i - 1) +
                                  " and " + std::to_string(i) +
                                  " are not 9-connected");
    }
  }
}

void validate_deployment_path(const Path& path, const GridDims& dims,
                              const Cell& base, std::size_t budget) {
  validate_path(path, dims);
  if (!(path.cells.front() == base) || !(path.cells.back() == base)) {
    throw std::invalid_argument("path must start and end at base " + to_string(base));
  }
  if (path.size() > budget) {
    throw std::invalid_argument("path length " + std::to_string(path.size()) +
                                " exceeds budget " + std::to_string(budget));
  }
}

std::string to_string(const Cell& c) {
  return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")";
}

std::string to_string(const Path& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ' ';
    os << to_string(p[i]);
  }
  return os.str();
}

PathCells distinct_cells(const Path& path, const GridDims& dims) {
  PathCells out;
  out.slot_of.reserve(path.size());
  for (const Cell& c : path.cells) {
    const std::size_t idx = cell_index(dims, c);
    std::size_t slot = 0;
    while (slot < out.cells.size() && out.cells[slot] != idx) ++slot;
    if (slot == out.cells.size()) {
      out.cells.push_back(idx);
      out.visit_count.push_back(0);
    }
    ++out.visit_count[slot];
    out.slot_of.push_back(slot);
  }
  return out;
}

}  // namespace kbnitp

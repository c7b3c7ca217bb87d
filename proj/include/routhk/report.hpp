#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "routhk/grid.hpp"

namespace routhk {

/// Per-node values of a residual or diagnostic over a subset of grid nodes.
struct NodalReport {
  Grid grid;
  std::size_t ncomp = 0;
  std::vector<std::size_t> nodes;  ///< flat grid indices
  std::vector<double> values;      ///< ncomp entries per listed node

  std::span<const double> at(std::size_t row) const {
    return {values.data() + row * ncomp, ncomp};
  }
  double max_abs() const;
  double max_abs(std::size_t comp) const;

  /// CSV with header t1..tk followed by <prefix>1..<prefix>ncomp.
  void write_csv(std::ostream& os, const std::string& prefix = "r") const;
};

}  // namespace routhk

#include "routhk/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "routhk/errors.hpp"
#include "routhk/io.hpp"

namespace routhk {

double NodalReport::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double NodalReport::max_abs(std::size_t comp) const {
  double m = 0.0;
  for (std::size_t r = 0; r < nodes.size(); ++r) m = std::max(m, std::abs(values[r * ncomp + comp]));
  return m;
}

void NodalReport::write_csv(std::ostream& os, const std::string& prefix) const {
  const std::size_t k = grid.dim();
  for (std::size_t a = 0; a < k; ++a) os << (a ? "," : "") << "t" << (a + 1);
  for (std::size_t c = 0; c < ncomp; ++c) os << "," << prefix << (c + 1);
  os << "\n";
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    const auto t = grid.point(nodes[r]);
    for (std::size_t a = 0; a < k; ++a) os << (a ? "," : "") << format_shortest(t[a]);
    for (double v : at(r)) os << "," << format_shortest(v);
    os << "\n";
  }
  if (!os) throw Error("failed writing residual CSV");
}

}  // namespace routhk

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace routhk {

using MultiIndex = std::vector<std::size_t>;

/// Uniform tensor grid over a box in parameter space R^k.
///
/// Nodes are flattened row-major: the last axis varies fastest.
class Grid {
 public:
  /// Throws GridError unless every axis has at least 3 nodes and hi > lo.
  Grid(std::vector<double> lo, std::vector<double> hi, std::vector<std::size_t> counts);

  /// Same box [lo, hi] and node count on every axis.
  static Grid cube(std::size_t k, double lo, double hi, std::size_t count);

  std::size_t dim() const { return counts_.size(); }
  std::size_t size() const { return size_; }
  std::size_t count(std::size_t axis) const { return counts_.at(axis); }
  double lo(std::size_t axis) const { return lo_.at(axis); }
  double hi(std::size_t axis) const { return hi_.at(axis); }
  double spacing(std::size_t axis) const { return h_.at(axis); }
  double max_spacing() const;

  std::size_t flatten(const MultiIndex& node) const;
  MultiIndex unflatten(std::size_t flat) const;
  std::vector<double> point(const MultiIndex& node) const;
  std::vector<double> point(std::size_t flat) const { return point(unflatten(flat)); }

  bool contains(const MultiIndex& node) const;
  /// At least `depth` nodes away from the boundary on every axis.
  bool is_interior(const MultiIndex& node, std::size_t depth = 1) const;
  std::vector<std::size_t> interior_nodes(std::size_t depth = 1) const;

  /// Flat index of the node closest to the given point.
  std::size_t nearest(std::span<const double> t) const;

  /// Copy with every axis refined to 2*(count-1)+1 nodes.
  Grid refined() const;

 private:
  std::vector<double> lo_, hi_, h_;
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

/// Derivative along `axis` of nodal data at `node`. `nodal` holds `ncomp`
/// interleaved components per node. Central difference at interior nodes,
/// second-order one-sided difference on the boundary. Throws IndexError if
/// the node is outside the grid.
double stencil_partial(const Grid& grid, std::span<const double> nodal, std::size_t ncomp,
                       std::size_t comp, std::size_t axis, const MultiIndex& node);

/// Caps the number of worker threads used by node-parallel loops (0 = hardware).
void set_thread_limit(std::size_t n);
std::size_t thread_limit();

/// Runs body(i) for i in [0, count). Results must be written to
/// caller-owned per-index slots; the first exception is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace routhk

#include "routhk/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "routhk/errors.hpp"

namespace routhk {

Grid::Grid(std::vector<double> lo, std::vector<double> hi, std::vector<std::size_t> counts)
    : lo_(std::move(lo)), hi_(std::move(hi)), counts_(std::move(counts)) {
  if (counts_.empty()) throw GridError("grid needs at least one axis");
  if (lo_.size() != counts_.size() || hi_.size() != counts_.size())
    throw GridError("grid bounds and counts disagree in dimension");
  h_.resize(counts_.size());
  strides_.resize(counts_.size());
  size_ = 1;
  for (std::size_t a = counts_.size(); a-- > 0;) {
    if (counts_[a] < 3) {
      std::ostringstream msg;
      msg << "grid axis " << a << " has " << counts_[a] << " nodes; at least 3 are required";
      throw GridError(msg.str());
    }
    if (!(hi_[a] > lo_[a])) throw GridError("grid axis with empty extent");
    h_[a] = (hi_[a] - lo_[a]) / static_cast<double>(counts_[a] - 1);
    strides_[a] = size_;
    size_ *= counts_[a];
  }
}

Grid Grid::cube(std::size_t k, double lo, double hi, std::size_t count) {
  return Grid(std::vector<double>(k, lo), std::vector<double>(k, hi),
              std::vector<std::size_t>(k, count));
}

double Grid::max_spacing() const { return *std::max_element(h_.begin(), h_.end()); }

std::size_t Grid::flatten(const MultiIndex& node) const {
  if (!contains(node)) throw IndexError("grid node out of range");
  std::size_t f = 0;
  for (std::size_t a = 0; a < node.size(); ++a) f += node[a] * strides_[a];
  return f;
}

MultiIndex Grid::unflatten(std::size_t flat) const {
  if (flat >= size_) throw IndexError("flat grid index out of range");
  MultiIndex node(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    node[a] = flat / strides_[a];
    flat %= strides_[a];
  }
  return node;
}

std::vector<double> Grid::point(const MultiIndex& node) const {
  if (!contains(node)) throw IndexError("grid node out of range");
  std::vector<double> t(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    // Hit hi exactly on the last node.
    t[a] = node[a] + 1 == counts_[a] ? hi_[a] : lo_[a] + static_cast<double>(node[a]) * h_[a];
  }
  return t;
}

bool Grid::contains(const MultiIndex& node) const {
  if (node.size() != dim()) return false;
  for (std::size_t a = 0; a < dim(); ++a)
    if (node[a] >= counts_[a]) return false;
  return true;
}

bool Grid::is_interior(const MultiIndex& node, std::size_t depth) const {
  if (!contains(node)) return false;
  for (std::size_t a = 0; a < dim(); ++a)
    if (node[a] < depth || node[a] + depth >= counts_[a]) return false;
  return true;
}

std::vector<std::size_t> Grid::interior_nodes(std::size_t depth) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < size_; ++f)
    if (is_interior(unflatten(f), depth)) out.push_back(f);
  return out;
}

std::size_t Grid::nearest(std::span<const double> t) const {
  if (t.size() != dim()) throw IndexError("point has wrong dimension");
  MultiIndex node(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    const double s = std::round((t[a] - lo_[a]) / h_[a]);
    node[a] = static_cast<std::size_t>(std::clamp(s, 0.0, static_cast<double>(counts_[a] - 1)));
  }
  return flatten(node);
}

Grid Grid::refined() const {
  std::vector<std::size_t> c(counts_);
  for (auto& n : c) n = 2 * (n - 1) + 1;
  return Grid(lo_, hi_, c);
}

double stencil_partial(const Grid& grid, std::span<const double> nodal, std::size_t ncomp,
                       std::size_t comp, std::size_t axis, const MultiIndex& node) {
  if (axis >= grid.dim() || comp >= ncomp || !grid.contains(node))
    throw IndexError("stencil_partial: node, axis or component out of range");
  if (nodal.size() != grid.size() * ncomp) throw IndexError("nodal data has wrong length");
  const double h = grid.spacing(axis);
  MultiIndex nb = node;
  auto at = [&](std::size_t i) {
    nb[axis] = i;
    return nodal[grid.flatten(nb) * ncomp + comp];
  };
  const std::size_t i = node[axis], last = grid.count(axis) - 1;
  if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
  if (i == last) return (3.0 * at(last) - 4.0 * at(last - 1) + at(last - 2)) / (2.0 * h);
  return (at(i + 1) - at(i - 1)) / (2.0 * h);
}

namespace {
std::atomic<std::size_t> g_thread_limit{1};
}

void set_thread_limit(std::size_t n) { g_thread_limit = n; }

std::size_t thread_limit() {
  const std::size_t n = g_thread_limit.load();
  return n == 0 ? std::max(1u, std::thread::hardware_concurrency()) : n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(thread_limit(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace routhk

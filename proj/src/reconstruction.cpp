#include "routhk/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "routhk/errors.hpp"

namespace routhk {

MomentumConstraints level_set_constraints(const RouthReduction& red) {
  auto shared = std::make_shared<RouthReduction>(red);
  const auto fibre = red.chart().fibre();
  MomentumConstraints c;
  c.fibre_n = fibre.size();
  c.k = red.k();
  c.velocities = [shared](std::span<const double>, const KJet& base) {
    return shared->fibre_velocities(base);
  };
  c.jacobian = [shared](std::span<const double>, const KJet& base) {
    const std::size_t k = shared->k();
    const Matrix dw = shared->fibre_velocity_jacobian(base);
    Matrix out(dw.rows(), k + dw.cols());
    for (std::size_t r = 0; r < dw.rows(); ++r)
      for (std::size_t c = 0; c < dw.cols(); ++c) out(r, k + c) = dw(r, c);
    return out;
  };
  return c;
}

namespace {

void constraint_values(const MomentumConstraints& c, const FieldSample& field, bool exact_jets,
                         std::vector<double>& nodal) {
  const Grid& g = field.grid();
  const std::size_t nf = c.fibre_n, k = c.k;
  nodal.assign(g.size() * nf * k, 0.0);
  const FieldSample src = exact_jets ? field : field.without_exact();
  parallel_for(g.size(), [&](std::size_t f) {
    const KJet jet = prolong(src, g.unflatten(f));
    const Matrix w = c.velocities(g.point(f), jet);
    if (w.rows() != nf || w.cols() != k) throw IndexError("constraint velocities have the wrong shape");
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t r = 0; r < nf; ++r) nodal[f * nf * k + r + nf * a] = w(r, a);
  });
}

}  // namespace

ConsistencyReport consistency_check(const MomentumConstraints& constraints,
                                    const FieldSample& field, DerivativeMode mode,
                                    std::optional<double> tol) {
  const Grid& g = field.grid();
  const std::size_t nf = constraints.fibre_n, k = constraints.k;
  if (field.k() != k) throw IndexError("constraints and field parameter dimensions differ");
  ConsistencyReport rep;
  rep.exact = use_exact(mode, field) && static_cast<bool>(constraints.jacobian);
  const bool exact_jets = field.has_exact() && mode != DerivativeMode::Stencil;
  const auto interior = residual_nodes(g, rep.exact || exact_jets);

  if (rep.exact) {
    std::vector<double> gaps(interior.size(), 0.0);
    parallel_for(interior.size(), [&](std::size_t r) {
      const auto t = g.point(interior[r]);
      const auto p = prolong2(field, g.unflatten(interior[r]));
      const Matrix jac = constraints.jacobian(t, p.jet);
      const std::size_t dz = p.dz.cols();
      // d_b w_a = dw_a/dt^b + dw_a/dz . dz/dt^b
      auto deriv = [&](std::size_t row, std::size_t b) {
        double s = jac(row, b);
        for (std::size_t c = 0; c < dz; ++c) s += jac(row, k + c) * p.dz(b, c);
        return s;
      };
      double gap = 0.0;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
          for (std::size_t i = 0; i < nf; ++i)
            gap = std::max(gap, std::abs(deriv(i + nf * a, b) - deriv(i + nf * b, a)));
      gaps[r] = gap;
    });
    rep.gap = *std::max_element(gaps.begin(), gaps.end());
    rep.tolerance = tol.value_or(kExactConsistencyTol);
    return rep;
  }

  std::vector<double> nodal;
  constraint_values(constraints, field, exact_jets, nodal);
  const std::size_t stride = nf * k;
  double gap = 0.0, second = 0.0;
  for (std::size_t f : interior) {
    const MultiIndex node = g.unflatten(f);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        for (std::size_t i = 0; i < nf; ++i) {
          const double dab = stencil_partial(g, nodal, stride, i + nf * a, b, node);
          const double dba = stencil_partial(g, nodal, stride, i + nf * b, a, node);
          gap = std::max(gap, std::abs(dab - dba));
        }
    // Second-difference magnitude of w along each axis.
    for (std::size_t ax = 0; ax < k; ++ax) {
      MultiIndex lo = node, hi = node;
      --lo[ax];
      ++hi[ax];
      const double h = g.spacing(ax);
      for (std::size_t c = 0; c < stride; ++c) {
        const double d2 = (nodal[g.flatten(hi) * stride + c] - 2 * nodal[f * stride + c] +
                           nodal[g.flatten(lo) * stride + c]) / (h * h);
        second = std::max(second, std::abs(d2));
      }
    }
  }
  rep.gap = gap;
  const double h = g.max_spacing();
  rep.tolerance = tol.value_or(10.0 * h * h * std::max(1.0, second));
  return rep;
}

FieldSample reconstruct_abelian(const MomentumConstraints& constraints, const FieldSample& field,
                                std::span<const double> anchor_value,
                                const ReconstructionOptions& options) {
  const Grid& g = field.grid();
  const std::size_t nf = constraints.fibre_n, k = constraints.k, bn = field.n();
  if (anchor_value.size() != nf) throw IndexError("anchor value must have one entry per fibre coordinate");

  const ConsistencyReport cons = consistency_check(constraints, field, options.mode, options.tol);
  if (!cons.consistent()) {
    std::ostringstream msg;
    msg << "momentum constraints are inconsistent along this field: mixed-partial gap " << cons.gap
        << " exceeds tolerance " << cons.tolerance;
    throw InconsistentConstraints(msg.str());
  }

  std::vector<double> w;
  constraint_values(constraints, field, field.has_exact() && options.mode != DerivativeMode::Stencil, w);
  const std::size_t stride = nf * k;

  std::vector<std::size_t> order = options.axis_order;
  if (order.empty())
    for (std::size_t a = 0; a < k; ++a) order.push_back(a);
  if (order.size() != k) throw IndexError("axis order must list every axis once");

  const MultiIndex anchor = options.anchor.value_or(MultiIndex(k, 0));
  if (!g.contains(anchor)) throw IndexError("anchor node outside grid");

  std::vector<double> fib(g.size() * nf, 0.0);
  std::vector<char> done(g.size(), 0);
  const std::size_t a0 = g.flatten(anchor);
  for (std::size_t i = 0; i < nf; ++i) fib[a0 * nf + i] = anchor_value[i];
  done[a0] = 1;

  // Sweep: after processing axis `ax`, every node agreeing with the anchor on
  // the not-yet-processed axes is filled.
  std::vector<bool> free_axis(k, false);
  for (std::size_t ax : order) {
    free_axis[ax] = true;
    for (std::size_t f = 0; f < g.size(); ++f) {
      const MultiIndex node = g.unflatten(f);
      bool on_slice = node[ax] == anchor[ax];
      for (std::size_t b = 0; b < k; ++b)
        if (!free_axis[b] && node[b] != anchor[b]) on_slice = false;
      if (!on_slice || !done[f]) continue;
      const double h = g.spacing(ax);
      for (int dir : {+1, -1}) {
        MultiIndex cur = node;
        while (true) {
          MultiIndex nxt = cur;
          if (dir < 0 && nxt[ax] == 0) break;
          nxt[ax] = static_cast<std::size_t>(static_cast<long>(nxt[ax]) + dir);
          if (nxt[ax] >= g.count(ax)) break;
          const std::size_t fc = g.flatten(cur), fn = g.flatten(nxt);
          for (std::size_t i = 0; i < nf; ++i)
            fib[fn * nf + i] = fib[fc * nf + i] + dir * 0.5 * h *
                                                      (w[fc * stride + i + nf * ax] +
                                                       w[fn * stride + i + nf * ax]);
          done[fn] = 1;
          cur = nxt;
        }
      }
    }
  }

  BundleChart chart;
  if (options.chart) {
    chart = *options.chart;
  } else {
    chart.n = bn + nf;
    for (std::size_t r = 0; r < bn; ++r) chart.base.push_back(r);
  }
  if (chart.n != bn + nf || chart.base.size() != bn)
    throw IndexError("chart does not match reduced and fibre dimensions");
  const auto fibre = chart.fibre();
  std::vector<double> full(g.size() * chart.n);
  for (std::size_t f = 0; f < g.size(); ++f) {
    const auto base = field.at(f);
    for (std::size_t r = 0; r < bn; ++r) full[f * chart.n + chart.base[r]] = base[r];
    for (std::size_t r = 0; r < nf; ++r) full[f * chart.n + fibre[r]] = fib[f * nf + r];
  }
  return FieldSample(g, chart.n, std::move(full));
}

NodalReport reconstruction_rhs(
    const ConnectionOneForm& conn,
    const std::function<Matrix(std::span<const double>, std::span<const double>)>& x,
    const FieldSample& lifted_field) {
  const Grid& g = lifted_field.grid();
  const std::size_t m = conn.m(), k = lifted_field.k();
  if (lifted_field.n() != conn.n()) throw IndexError("lifted field and connection dimensions differ");
  NodalReport rep{g, m * k, {}, std::vector<double>(g.size() * m * k)};
  rep.nodes.resize(g.size());
  for (std::size_t f = 0; f < g.size(); ++f) rep.nodes[f] = f;
  parallel_for(g.size(), [&](std::size_t f) {
    const auto q = lifted_field.at(f);
    const Matrix xv = x(g.point(f), q);
    if (xv.rows() != conn.n() || xv.cols() != k) throw IndexError("X has the wrong shape");
    const Matrix a = conn.at(q) * xv;
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t b = 0; b < m; ++b) rep.values[f * m * k + b + m * c] = a(b, c);
  });
  return rep;
}

}  // namespace routhk

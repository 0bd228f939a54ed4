#pragma once

#include <memory>
#include <vector>

#include "rbm/domain.hpp"

namespace rbm {

// Harmonic measure in a bounded (possibly multiply connected) smooth domain
// via a double-layer-potential integral equation discretized with the
// periodic trapezoid rule. Multiply connected domains use the standard
// augmented system: one logarithmic source per hole plus one mean-zero
// constraint on the layer density per hole.
class NystromSolver {
  public:
    NystromSolver(const Domain& domain, int panels_per_curve);
    ~NystromSolver();
    NystromSolver(NystromSolver&&) noexcept;

    int panels() const { return panels_; }
    int node_count() const;
    // global node index -> (curve, parameter, position, weight = speed/n)
    int node_curve(int i) const;
    double node_u(int i) const;
    Vec2 node_position(int i) const;
    double node_weight(int i) const;

    // density (per arclength) of the harmonic measure of interior point w,
    // at every node
    std::vector<double> interior_density(Vec2 w) const;

    // boundary density omega_x at every node: standoff limit
    // (1/delta) h(x + delta n(x), .) extrapolated over delta0 * 2^-j, j=0..3
    std::vector<double> boundary_density_nodes(const BoundaryPoint& x, double delta0) const;

    // single pair, with trigonometric interpolation between nodes in y
    double boundary_density(const BoundaryPoint& x, const BoundaryPoint& y, double delta0) const;
    double last_error_estimate() const { return last_error_; }
    // per-node extrapolation spread from the last boundary_density_nodes call
    const std::vector<double>& last_error_nodes() const { return last_error_nodes_; }

    // condition estimate of the discretized system (reciprocal)
    double rcond() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int panels_ = 0;
    mutable double last_error_ = 0.0;
    mutable std::vector<double> last_error_nodes_;
};

} // namespace rbm

#include "rbm/nystrom.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "rbm/errors.hpp"

namespace rbm {

namespace {
constexpr double kPi = 3.141592653589793238;

// double-layer kernel with the domain-outward normal at y:
// K(z, y) = (1/2pi) <n_out(y), y - z> / |y - z|^2
double dl_kernel(Vec2 z, Vec2 y, Vec2 n_out) {
    Vec2 w = y - z;
    return dot(n_out, w) / (2.0 * kPi * w.norm2());
}
} // namespace

struct NystromSolver::Impl {
    const Domain* domain = nullptr;
    int n = 0;        // nodes per curve
    int m = 0;        // holes
    int N = 0;        // total boundary nodes
    std::vector<int> curve_of;
    std::vector<double> u_of, weight, curv;
    std::vector<Vec2> pos, n_out;
    std::vector<Vec2> hole_center;
    double max_spacing = 0.0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_t; // LU of M^T (transposed solves)
    double rcond = 0.0;
};

NystromSolver::NystromSolver(const Domain& domain, int panels_per_curve)
    : impl_(std::make_unique<Impl>()), panels_(panels_per_curve) {
    if (domain.is_exterior()) throw ConfigError("Nystrom solver needs a bounded domain");
    if (panels_per_curve < 32) throw ConfigError("need at least 32 panels per curve");
    auto& im = *impl_;
    im.domain = &domain;
    im.n = panels_per_curve;
    im.m = int(domain.curves().size()) - 1;
    im.N = im.n * int(domain.curves().size());

    im.curve_of.resize(std::size_t(im.N));
    im.u_of.resize(std::size_t(im.N));
    im.weight.resize(std::size_t(im.N));
    im.curv.resize(std::size_t(im.N));
    im.pos.resize(std::size_t(im.N));
    im.n_out.resize(std::size_t(im.N));
    for (std::size_t ci = 0; ci < domain.curves().size(); ++ci) {
        const auto& c = domain.curves()[ci];
        for (int j = 0; j < im.n; ++j) {
            int i = int(ci) * im.n + j;
            double u = double(j) / im.n;
            im.curve_of[std::size_t(i)] = int(ci);
            im.u_of[std::size_t(i)] = u;
            im.pos[std::size_t(i)] = c.position(u);
            im.weight[std::size_t(i)] = c.speed(u) / im.n;
            im.curv[std::size_t(i)] = c.signed_curvature(u);
            im.n_out[std::size_t(i)] = -c.inward_normal(u);
            im.max_spacing = std::max(im.max_spacing, im.weight[std::size_t(i)]);
        }
        if (ci > 0) {
            // log-source location: centroid of the hole curve
            Vec2 ctr{0, 0};
            for (int j = 0; j < 64; ++j) ctr += c.position(j / 64.0);
            im.hole_center.push_back(ctr / 64.0);
        }
    }

    int dim = im.N + im.m;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < im.N; ++i) {
        for (int j = 0; j < im.N; ++j) {
            double k;
            if (i == j) {
                // diagonal limit of the double-layer kernel
                k = im.curv[std::size_t(i)] / (4.0 * kPi);
            } else {
                k = dl_kernel(im.pos[std::size_t(i)], im.pos[std::size_t(j)],
                              im.n_out[std::size_t(j)]);
            }
            M(i, j) = im.weight[std::size_t(j)] * k;
        }
        M(i, i) += 0.5;
        for (int h = 0; h < im.m; ++h)
            M(i, im.N + h) = std::log(dist(im.pos[std::size_t(i)], im.hole_center[std::size_t(h)]));
    }
    // mean-zero constraint of the layer density on each hole curve
    for (int h = 0; h < im.m; ++h)
        for (int j = 0; j < im.n; ++j) {
            int col = (h + 1) * im.n + j;
            M(im.N + h, col) = im.weight[std::size_t(col)];
        }

    im.lu_t.compute(M.transpose());
    // cheap reciprocal-condition estimate from the U factor
    Eigen::VectorXd du = im.lu_t.matrixLU().diagonal().cwiseAbs();
    double mx = du.maxCoeff(), mn = du.minCoeff();
    im.rcond = mx > 0 ? mn / mx : 0.0;
    if (im.rcond < 1e-14)
        throw NumericalError("Nystrom system is numerically singular (rcond < 1e-14)");
}

NystromSolver::~NystromSolver() = default;
NystromSolver::NystromSolver(NystromSolver&&) noexcept = default;

int NystromSolver::node_count() const { return impl_->N; }
int NystromSolver::node_curve(int i) const { return impl_->curve_of.at(std::size_t(i)); }
double NystromSolver::node_u(int i) const { return impl_->u_of.at(std::size_t(i)); }
Vec2 NystromSolver::node_position(int i) const { return impl_->pos.at(std::size_t(i)); }
double NystromSolver::node_weight(int i) const { return impl_->weight.at(std::size_t(i)); }
double NystromSolver::rcond() const { return impl_->rcond; }

std::vector<double> NystromSolver::interior_density(Vec2 w) const {
    const auto& im = *impl_;
    Eigen::VectorXd r(im.N + im.m);
    for (int j = 0; j < im.N; ++j)
        r(j) = im.weight[std::size_t(j)] *
               dl_kernel(w, im.pos[std::size_t(j)], im.n_out[std::size_t(j)]);
    for (int h = 0; h < im.m; ++h)
        r(im.N + h) = std::log(dist(w, im.hole_center[std::size_t(h)]));
    Eigen::VectorXd z = im.lu_t.solve(r);
    std::vector<double> out(std::size_t(im.N));
    for (int i = 0; i < im.N; ++i) out[std::size_t(i)] = z(i) / im.weight[std::size_t(i)];
    return out;
}

std::vector<double> NystromSolver::boundary_density_nodes(const BoundaryPoint& x,
                                                          double delta0) const {
    const auto& im = *impl_;
    // The periodic trapezoid rule breaks down for targets closer to the
    // boundary than a few node spacings (the close-evaluation error decays
    // like exp(-2 pi delta / spacing)), so the standoff levels sit at 4..10
    // spacings and a cubic extrapolation in delta removes the O(delta) ..
    // O(delta^3) terms of the limit.
    double levels[4];
    double base = im.max_spacing;
    for (int j = 0; j < 4; ++j) levels[j] = double(10 - 2 * j) * base;
    if (delta0 > levels[0])
        for (double& l : levels) l *= delta0 / (10.0 * base);
    if (levels[0] > 0.45 * im.domain->feature_size())
        throw DomainError(
            "standoff levels exceed the domain reach; increase panels_per_curve");
    std::vector<std::vector<double>> g(4);
    for (int j = 0; j < 4; ++j) {
        Vec2 w = x.position + x.inward_normal * levels[j];
        if (!im.domain->contains(w))
            throw DomainError("standoff too large: x + delta n(x) leaves the domain");
        g[std::size_t(j)] = interior_density(w);
        for (double& v : g[std::size_t(j)]) v /= levels[j];
    }
    // Neville extrapolation of the cubic through (levels[j], g[j]) to delta=0
    std::vector<double> prev_best;
    for (int order = 1; order <= 3; ++order) {
        for (int j = 0; j + order < 4; ++j) {
            double dj = levels[j], djk = levels[j + order];
            for (int i = 0; i < im.N; ++i)
                g[std::size_t(j)][std::size_t(i)] =
                    (dj * g[std::size_t(j + 1)][std::size_t(i)] -
                     djk * g[std::size_t(j)][std::size_t(i)]) /
                    (dj - djk);
        }
        if (order == 2) prev_best = g[0];
    }
    // spread of the last two extrapolation orders, per node and as a max over
    // the nodes outside the near-diagonal zone (callers replace those
    // densities with the 1/(pi d^2) asymptotics anyway)
    last_error_nodes_.assign(std::size_t(im.N), 0.0);
    double err = 0.0;
    for (int i = 0; i < im.N; ++i) {
        double spread = std::abs(g[0][std::size_t(i)] - prev_best[std::size_t(i)]);
        last_error_nodes_[std::size_t(i)] = spread;
        if (dist(im.pos[std::size_t(i)], x.position) >= 8.0 * im.max_spacing)
            err = std::max(err, spread);
    }
    last_error_ = err;
    return g[0];
}

double NystromSolver::boundary_density(const BoundaryPoint& x, const BoundaryPoint& y,
                                       double delta0) const {
    const auto& im = *impl_;
    std::vector<double> nodes = boundary_density_nodes(x, delta0);
    // trigonometric barycentric interpolation on y's curve (even node count)
    int ci = y.curve_index;
    double t = y.u;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < im.n; ++j) {
        int i = ci * im.n + j;
        double dt = kPi * (t - im.u_of[std::size_t(i)]); // half-angle of 2*pi*(t - t_j)
        if (std::abs(std::sin(dt)) < 1e-14) return nodes[std::size_t(i)];
        double w = ((j % 2) ? -1.0 : 1.0) / std::tan(dt);
        num += w * nodes[std::size_t(i)];
        den += w;
    }
    return num / den;
}

} // namespace rbm

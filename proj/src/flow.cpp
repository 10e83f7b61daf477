#include "willmore/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "willmore/error.hpp"
#include "willmore/hyperbolic.hpp"

namespace willmore {

namespace {

constexpr std::size_t kMinVertices = 5;
constexpr int kBandwidth = 2;  // in normal coordinates
constexpr double kMinStep = 1e-16;

struct Terms {
    std::vector<double> kappa;  // N + 1
    std::vector<double> h;      // N
    std::vector<double> ell;    // N + 1
};

void require_vertices(std::size_t n) {
    if (n < kMinVertices) {
        throw Error(ErrorKind::InsufficientResolution,
                    "discrete energy needs at least 5 vertices, got " + std::to_string(n));
    }
}

void require_heights(const std::vector<Vec2>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i].y > 0.0)) {
            throw Error(ErrorKind::AxisContact, "vertex " + std::to_string(i) + " is not above the axis");
        }
    }
}

double edge_length(Vec2 p, Vec2 q) {
    return 2.0 * std::asinh(norm(q - p) / (2.0 * std::sqrt(p.y * q.y)));
}

Terms compute_terms(const std::vector<Vec2>& p) {
    require_vertices(p.size());
    require_heights(p);
    const std::size_t n = p.size() - 1;
    Terms t{std::vector<double>(n + 1), std::vector<double>(n), std::vector<double>(n + 1, 0.0)};
    for (std::size_t j = 0; j < n; ++j) {
        t.h[j] = edge_length(p[j], p[j + 1]);
        t.ell[j] += 0.5 * t.h[j];
        t.ell[j + 1] += 0.5 * t.h[j];
    }
    // The clamped end vertices carry no curvature cell.
    t.ell[0] = 0.0;
    t.ell[n] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const Vec2 a = p[i] - p[i - 1], b = p[i + 1] - p[i], u = a + b;
        const double A = norm(a), B = norm(b), S = norm(u);
        if (A == 0.0 || B == 0.0 || S == 0.0) {
            throw Error(ErrorKind::InvalidCurve, "degenerate vertex " + std::to_string(i));
        }
        t.kappa[i] = p[i].y * 2.0 * cross(a, b) / (A * B * S) + u.x / S;
    }
    t.kappa[0] = 2.0 * t.kappa[1] - t.kappa[2];
    t.kappa[n] = 2.0 * t.kappa[n - 1] - t.kappa[n - 2];
    return t;
}

double energy_of(const Terms& t) {
    double e = 0.0;
    for (std::size_t i = 0; i < t.kappa.size(); ++i) e += t.kappa[i] * t.kappa[i] * t.ell[i];
    return e;
}

double energy_of(const std::vector<Vec2>& p) { return energy_of(compute_terms(p)); }

std::vector<Vec2> vertex_gradient(const std::vector<Vec2>& p) {
    const Terms t = compute_terms(p);
    const std::size_t n = p.size() - 1;

    std::vector<double> w(n + 1, 0.0);
    for (std::size_t i = 1; i < n; ++i) w[i] = 2.0 * t.kappa[i] * t.ell[i];

    std::vector<Vec2> g(n + 1, Vec2{0.0, 0.0});
    for (std::size_t i = 1; i < n; ++i) {
        const Vec2 a = p[i] - p[i - 1], b = p[i + 1] - p[i], u = a + b;
        const double A = norm(a), B = norm(b), S = norm(u);
        const double inv = 2.0 / (A * B * S);
        const double K = inv * cross(a, b);
        const double X = u.x / S;
        const Vec2 dKa = Vec2{b.y, -b.x} * inv - (a / (A * A) + u / (S * S)) * K;
        const Vec2 dKb = Vec2{-a.y, a.x} * inv - (b / (B * B) + u / (S * S)) * K;
        const Vec2 dX = Vec2{1.0 / S, 0.0} - u * (X / (S * S));
        const double y = p[i].y;
        g[i - 1] -= (dKa * y + dX) * w[i];
        g[i + 1] += (dKb * y + dX) * w[i];
        g[i] += ((dKa - dKb) * y + Vec2{0.0, K}) * w[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double kj = j > 0 ? t.kappa[j] : 0.0;
        const double kk = j + 1 < n ? t.kappa[j + 1] : 0.0;
        const double c = 0.5 * (kj * kj + kk * kk);
        const Vec2 e = p[j + 1] - p[j];
        const double L = norm(e);
        const double r = std::sqrt(p[j].y * p[j + 1].y);
        const double q = L / (2.0 * r);
        const double dh = c * 2.0 / std::sqrt(1.0 + q * q);
        const Vec2 dL = e / (L * 2.0 * r);
        g[j] += (Vec2{0.0, -q / (2.0 * p[j].y)} - dL) * dh;
        g[j + 1] += (Vec2{0.0, -q / (2.0 * p[j + 1].y)} + dL) * dh;
    }
    return g;
}

// Free variable layout: [t_minus, x_2, y_2, ..., x_{N-2}, y_{N-2}, t_plus].
struct Layout {
    Vec2 p0, pn, d_minus, d_plus;
    std::size_t n;  // edges

    Eigen::Index size() const { return static_cast<Eigen::Index>(2 * n - 4); }

    Eigen::VectorXd pack(const std::vector<Vec2>& p) const {
        Eigen::VectorXd v(size());
        v[0] = dot(p[1] - p0, d_minus);
        for (std::size_t k = 2; k + 2 <= n; ++k) {
            v[2 * k - 3] = p[k].x;
            v[2 * k - 2] = p[k].y;
        }
        v[size() - 1] = dot(p[n - 1] - pn, d_plus);
        return v;
    }
    std::vector<Vec2> unpack(const Eigen::VectorXd& v) const {
        std::vector<Vec2> p(n + 1);
        p[0] = p0;
        p[n] = pn;
        p[1] = p0 + d_minus * v[0];
        for (std::size_t k = 2; k + 2 <= n; ++k) p[k] = {v[2 * k - 3], v[2 * k - 2]};
        p[n - 1] = pn + d_plus * v[size() - 1];
        return p;
    }
    Eigen::VectorXd project(const std::vector<Vec2>& g) const {
        Eigen::VectorXd v(size());
        v[0] = dot(g[1], d_minus);
        for (std::size_t k = 2; k + 2 <= n; ++k) {
            v[2 * k - 3] = g[k].x;
            v[2 * k - 2] = g[k].y;
        }
        v[size() - 1] = dot(g[n - 1], d_plus);
        return v;
    }
};

Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

Layout layout_of(const std::vector<Vec2>& p, const BoundaryData& clamps) {
    return {p.front(), p.back(), unit(clamps.beta_minus), unit(clamps.beta_plus), p.size() - 1};
}

Layout layout_from_edges(const std::vector<Vec2>& p) {
    const std::size_t n = p.size() - 1;
    return {p.front(), p.back(), normalized(p[1] - p[0]), normalized(p[n - 1] - p[n]), n};
}

SampledCurve make_curve(std::vector<Vec2> p) {
    std::vector<double> s(p.size(), 0.0);
    for (std::size_t i = 1; i < p.size(); ++i) s[i] = s[i - 1] + norm(p[i] - p[i - 1]);
    return SampledCurve(std::move(s), std::move(p));
}

std::optional<double> try_energy(const std::vector<Vec2>& p) {
    try {
        const double e = energy_of(p);
        if (!std::isfinite(e)) return std::nullopt;
        return e;
    } catch (const Error&) {
        return std::nullopt;
    }
}

// Unit normals at the interior vertices 2..N-2, perpendicular to the chord
// through the neighbours. Ray vertices and the ends stay put.
std::vector<Vec2> vertex_normals(const std::vector<Vec2>& p) {
    const std::size_t n = p.size() - 1;
    std::vector<Vec2> nu(n + 1, Vec2{0.0, 0.0});
    for (std::size_t k = 2; k + 2 <= n; ++k) {
        const Vec2 t = normalized(p[k + 1] - p[k - 1]);
        nu[k] = {-t.y, t.x};
    }
    return nu;
}

Eigen::VectorXd project_normal(const std::vector<Vec2>& g, const std::vector<Vec2>& nu) {
    const std::size_t n = g.size() - 1;
    Eigen::VectorXd r(static_cast<Eigen::Index>(n - 3));
    for (std::size_t k = 2; k + 2 <= n; ++k) r[static_cast<Eigen::Index>(k - 2)] = dot(g[k], nu[k]);
    return r;
}

std::vector<Vec2> displaced(const std::vector<Vec2>& p, const std::vector<Vec2>& nu,
                            const Eigen::VectorXd& z) {
    std::vector<Vec2> q = p;
    for (std::size_t k = 2; k + 2 < p.size(); ++k) q[k] += nu[k] * z[static_cast<Eigen::Index>(k - 2)];
    return q;
}

double normal_gradient_norm(const std::vector<Vec2>& p) {
    return project_normal(vertex_gradient(p), vertex_normals(p)).norm();
}

// Finite-difference Hessian of the energy in the normal coordinates. Each
// energy term couples vertices at most two apart, so five colours suffice.
Eigen::SparseMatrix<double> banded_hessian(const std::vector<Vec2>& p, const std::vector<Vec2>& nu) {
    const std::size_t n = p.size() - 1;
    double hmin = norm(p[1] - p[0]);
    for (std::size_t j = 1; j < n; ++j) hmin = std::min(hmin, norm(p[j + 1] - p[j]));
    const double eps = 1e-4 * hmin;
    const Eigen::Index m = static_cast<Eigen::Index>(n - 3);
    const int colors = 2 * kBandwidth + 1;

    Eigen::MatrixXd diff(m, colors);
    for (int color = 0; color < colors; ++color) {
        Eigen::VectorXd plus = Eigen::VectorXd::Zero(m);
        for (Eigen::Index c = color; c < m; c += colors) plus[c] = eps;
        const Eigen::VectorXd minus = -plus;
        diff.col(color) = (project_normal(vertex_gradient(displaced(p, nu, plus)), nu) -
                           project_normal(vertex_gradient(displaced(p, nu, minus)), nu)) /
                          (2.0 * eps);
    }
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(m * colors));
    for (Eigen::Index r = 0; r < m; ++r) {
        const Eigen::Index lo = std::max<Eigen::Index>(0, r - kBandwidth);
        const Eigen::Index hi = std::min<Eigen::Index>(m - 1, r + kBandwidth);
        for (Eigen::Index c = lo; c <= hi; ++c) {
            entries.emplace_back(r, c, 0.5 * (diff(r, c % colors) + diff(c, r % colors)));
        }
    }
    Eigen::SparseMatrix<double> H(m, m);
    H.setFromTriplets(entries.begin(), entries.end());
    return H;
}

// Solves (H + lambda I) d = -g with the smallest lambda in a x10 ladder that
// gives a positive definite factorization.
std::optional<Eigen::VectorXd> newton_direction(const Eigen::SparseMatrix<double>& H,
                                                const Eigen::VectorXd& g) {
    double scale = 0.0;
    for (Eigen::Index i = 0; i < H.rows(); ++i) scale = std::max(scale, std::abs(H.coeff(i, i)));
    if (!(scale > 0.0) || !std::isfinite(scale)) return std::nullopt;
    Eigen::SparseMatrix<double> I(H.rows(), H.cols());
    I.setIdentity();
    double lambda = 0.0;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    for (int attempt = 0; attempt < 40; ++attempt) {
        solver.compute(lambda > 0.0 ? Eigen::SparseMatrix<double>(H + lambda * I) : H);
        if (solver.info() == Eigen::Success && (solver.vectorD().array() > 0.0).all()) {
            Eigen::VectorXd d = solver.solve(-g);
            if (solver.info() == Eigen::Success && d.allFinite() && d.dot(g) < 0.0) return d;
        }
        lambda = lambda > 0.0 ? 10.0 * lambda : 1e-10 * scale;
    }
    return std::nullopt;
}

double min_height(const SampledCurve& c) {
    double m = c.front().y;
    for (const Vec2& p : c.points()) m = std::min(m, p.y);
    return m;
}

MonitorRecord record_of(const FlowState& s, double accepted) {
    return {s.step_count, s.energy, hyperbolic_length(s.curve), min_height(s.curve), s.grad_norm,
            accepted};
}

// Uniform Euclidean arclength samples of the polyline p[first..last].
std::vector<Vec2> uniform_polyline(const std::vector<Vec2>& p, std::size_t first, std::size_t last,
                                   std::size_t pieces) {
    std::vector<double> s(last - first + 1, 0.0);
    for (std::size_t i = first + 1; i <= last; ++i) {
        s[i - first] = s[i - first - 1] + norm(p[i] - p[i - 1]);
    }
    const double total = s.back();
    std::vector<Vec2> out(pieces + 1);
    out.front() = p[first];
    out.back() = p[last];
    std::size_t seg = 0;
    for (std::size_t k = 1; k < pieces; ++k) {
        const double target = total * static_cast<double>(k) / static_cast<double>(pieces);
        while (seg + 2 < s.size() && s[seg + 1] < target) ++seg;
        const double len = s[seg + 1] - s[seg];
        const double f = len > 0.0 ? (target - s[seg]) / len : 0.0;
        out[k] = p[first + seg] + (p[first + seg + 1] - p[first + seg]) * f;
    }
    return out;
}

}  // namespace

void FlowConfig::validate() const {
    if (max_steps < 0 || !(grad_tol > 0.0) || !(initial_step > 0.0) ||
        !(backtrack_factor > 0.0 && backtrack_factor < 1.0) || !(armijo_c > 0.0 && armijo_c < 1.0) ||
        reparam_every <= 0) {
        throw Error(ErrorKind::InvalidArgument, "invalid flow configuration");
    }
    if (resolution < 32) throw Error(ErrorKind::InvalidArgument, "flow resolution must be at least 32");
}

std::vector<double> discrete_curvatures(const SampledCurve& curve) {
    return compute_terms(curve.points()).kappa;
}

double discrete_energy(const SampledCurve& curve) { return energy_of(curve.points()); }

std::vector<Vec2> discrete_vertex_gradient(const SampledCurve& curve) {
    return vertex_gradient(curve.points());
}

Eigen::VectorXd normal_gradient(const SampledCurve& curve) {
    require_vertices(curve.size());
    return project_normal(vertex_gradient(curve.points()), vertex_normals(curve.points()));
}

Eigen::VectorXd discrete_gradient(const SampledCurve& curve) {
    const Layout lay = layout_from_edges(curve.points());
    return lay.project(vertex_gradient(curve.points()));
}

FlowState make_state(const SampledCurve& curve) {
    const std::vector<Vec2>& p = curve.points();
    require_vertices(p.size());
    const std::size_t n = p.size() - 1;
    const Vec2 dm = p[1] - p[0], dp = p[n - 1] - p[n];
    BoundaryData clamps{p[0].x, p[n].x, p[0].y, p[n].y, std::atan2(dm.y, dm.x), std::atan2(dp.y, dp.x)};
    clamps.validate();
    const Layout lay = layout_of(p, clamps);
    // Snap the ray vertices onto the rounded clamp directions.
    const SampledCurve snapped = make_curve(lay.unpack(lay.pack(p)));
    FlowState s{snapped, clamps, 0, discrete_energy(snapped), 0.0};
    s.grad_norm = normal_gradient_norm(snapped.points());
    return s;
}

FlowState step(const FlowState& state, const FlowConfig& config) {
    if (state.grad_norm <= config.grad_tol) return state;
    const std::vector<Vec2>& p = state.curve.points();
    const std::vector<Vec2> nu = vertex_normals(p);
    const Eigen::VectorXd g = project_normal(vertex_gradient(p), nu);

    Eigen::VectorXd dir = -g;
    double tau = config.initial_step;
    if (config.preconditioner == Preconditioner::Newton) {
        if (auto d = newton_direction(banded_hessian(p, nu), g)) {
            dir = *d;
            tau = 1.0;
        }
    }
    const double slope = g.dot(dir);
    while (true) {
        if (tau < kMinStep) {
            throw Error(ErrorKind::StepFailure,
                        "step size underflow at step " + std::to_string(state.step_count));
        }
        std::vector<Vec2> trial = displaced(p, nu, tau * dir);
        const auto e = try_energy(trial);
        if (e && *e < state.energy && *e <= state.energy + config.armijo_c * tau * slope) {
            FlowState next = state;
            next.curve = make_curve(std::move(trial));
            next.energy = *e;
            next.step_count = state.step_count + 1;
            next.grad_norm = normal_gradient_norm(next.curve.points());
            if (next.step_count % config.reparam_every == 0) {
                const std::vector<Vec2>& q = next.curve.points();
                const std::size_t n = q.size() - 1;
                std::vector<Vec2> r = uniform_polyline(q, 1, n - 1, n - 2);
                r.insert(r.begin(), q.front());
                r.push_back(q.back());
                const auto er = try_energy(r);
                if (er && *er <= next.energy) {
                    next.curve = make_curve(std::move(r));
                    next.energy = *er;
                    next.grad_norm = normal_gradient_norm(next.curve.points());
                }
            }
            return next;
        }
        tau *= config.backtrack_factor;
    }
}

SampledCurve resample_clamped(const SampledCurve& curve, const BoundaryData& bd, std::size_t n) {
    if (n < 4) throw Error(ErrorKind::InvalidArgument, "resampling needs at least 4 edges");
    std::vector<Vec2> p = uniform_polyline(curve.points(), 0, curve.size() - 1, n);
    p[1] = p.front() + unit(bd.beta_minus) * norm(p[1] - p[0]);
    p[n - 1] = p.back() + unit(bd.beta_plus) * norm(p[n - 1] - p[n]);
    return make_curve(std::move(p));
}

std::pair<FlowState, FlowMonitors> run(const SampledCurve& initial, const FlowConfig& config) {
    config.validate();
    const std::size_t n = static_cast<std::size_t>(config.resolution);
    SampledCurve start = initial;
    if (initial.size() != n + 1) {
        start = resample_clamped(initial, read_boundary_data(initial), n);
    }
    FlowState state = make_state(start);
    FlowMonitors monitors;
    monitors.initial = record_of(state, 0.0);
    while (state.grad_norm > config.grad_tol && state.step_count < config.max_steps) {
        std::optional<FlowState> stepped;
        try {
            stepped = step(state, config);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::StepFailure) throw;
            monitors.failure = e.what();
            break;
        }
        FlowState next = std::move(*stepped);
        const std::vector<Vec2>& a = state.curve.points();
        const std::vector<Vec2>& b = next.curve.points();
        double moved = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) moved = std::max(moved, norm(b[i] - a[i]));
        state = std::move(next);
        monitors.records.push_back(record_of(state, moved));
    }
    monitors.converged = state.grad_norm <= config.grad_tol;
    return {state, monitors};
}

CurvatureFit fit_catenoid_profile(const SampledCurve& curve) {
    const Terms t = compute_terms(curve.points());
    const std::size_t m = t.kappa.size();
    std::vector<double> s(m, 0.0);
    for (std::size_t i = 1; i < m; ++i) s[i] = s[i - 1] + t.h[i - 1];

    std::size_t peak = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(t.kappa[i]) > std::abs(t.kappa[peak])) peak = i;
    }
    double c = t.kappa[peak], s0 = -s[peak];
    auto residual = [&](double cc, double ss) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double r = t.kappa[i] - cc / std::cosh(s[i] + ss);
            r2 += r * r;
        }
        return r2;
    };
    double mu = 1e-3;
    double current = residual(c, s0);
    for (int it = 0; it < 200; ++it) {
        double jcc = 0.0, jcs = 0.0, jss = 0.0, gc = 0.0, gs = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double sech = 1.0 / std::cosh(s[i] + s0);
            const double r = t.kappa[i] - c * sech;
            const double dc = sech;
            const double ds = -c * sech * std::tanh(s[i] + s0);
            jcc += dc * dc;
            jcs += dc * ds;
            jss += ds * ds;
            gc += dc * r;
            gs += ds * r;
        }
        const double a11 = jcc * (1.0 + mu), a22 = jss * (1.0 + mu);
        const double det = a11 * a22 - jcs * jcs;
        if (!(std::abs(det) > 0.0)) break;
        const double dc = (a22 * gc - jcs * gs) / det;
        const double ds = (a11 * gs - jcs * gc) / det;
        const double next = residual(c + dc, s0 + ds);
        if (next < current) {
            c += dc;
            s0 += ds;
            const bool done = current - next <= 1e-15 * current;
            current = next;
            mu = std::max(mu * 0.1, 1e-12);
            if (done) break;
        } else {
            mu *= 10.0;
            if (mu > 1e12) break;
        }
    }
    CurvatureFit fit{c, s0, 0.0};
    for (std::size_t i = 0; i < m; ++i) {
        fit.residual = std::max(fit.residual, std::abs(t.kappa[i] - c / std::cosh(s[i] + s0)));
    }
    return fit;
}

}  // namespace willmore

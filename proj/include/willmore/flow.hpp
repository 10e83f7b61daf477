#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "willmore/curve.hpp"
#include "willmore/surface.hpp"

namespace willmore {

/// Search direction of a step. Steps move the vertices 2..N-2 along their
/// normals only; Newton solves with a regularized finite-difference Hessian in
/// those coordinates, None is plain gradient descent.
enum class Preconditioner { None, Newton };

struct FlowConfig {
    int max_steps = 1000;
    double grad_tol = 1e-6;
    double initial_step = 1e-2;
    double backtrack_factor = 0.5;
    double armijo_c = 1e-4;
    int reparam_every = 50;
    int resolution = 512;  ///< number of edges N
    Preconditioner preconditioner = Preconditioner::Newton;

    void validate() const;
};

struct FlowState {
    SampledCurve curve;  ///< N + 1 vertices
    BoundaryData clamps;
    int step_count = 0;
    double energy = 0.0;
    double grad_norm = 0.0;  ///< norm of normal_gradient
};

struct MonitorRecord {
    int step = 0;
    double energy = 0.0;
    double hyp_length = 0.0;
    double min_height = 0.0;
    double grad_norm = 0.0;
    double accepted_step = 0.0;
};

struct FlowMonitors {
    MonitorRecord initial;
    std::vector<MonitorRecord> records;  ///< one per accepted step
    bool converged = false;
    std::optional<std::string> failure;
};

/// Discrete geodesic curvature at every vertex: y K + x-component of the
/// chord direction, with K the Menger curvature; end values extrapolated
/// linearly.
std::vector<double> discrete_curvatures(const SampledCurve& curve);

/// Sum over the interior vertices of kappa_i^2 times the hyperbolic length of
/// the dual segment at i.
double discrete_energy(const SampledCurve& curve);

/// Gradient of discrete_energy with respect to every vertex position.
std::vector<Vec2> discrete_vertex_gradient(const SampledCurve& curve);

/// Gradient with respect to the free variables (t_minus, x_2, y_2, ...,
/// x_{N-2}, y_{N-2}, t_plus): vertices 1 and N-1 move along the rays of the
/// first and last edges, the others freely.
Eigen::VectorXd discrete_gradient(const SampledCurve& curve);

/// Normal components of the vertex gradient at vertices 2..N-2, with normals
/// perpendicular to the chord through the neighbours.
Eigen::VectorXd normal_gradient(const SampledCurve& curve);

/// Builds the state for a curve whose first and last edges fix the clamps.
FlowState make_state(const SampledCurve& curve);

/// One descent step. Returns the state unchanged when grad_norm <= grad_tol;
/// throws StepFailure when the step size underflows.
FlowState step(const FlowState& state, const FlowConfig& config);

std::pair<FlowState, FlowMonitors> run(const SampledCurve& initial, const FlowConfig& config);

/// Resamples to n + 1 vertices: uniform in Euclidean arclength, with vertices
/// 1 and n - 1 placed on the rays of the clamped directions.
SampledCurve resample_clamped(const SampledCurve& curve, const BoundaryData& bd, std::size_t n);

struct CurvatureFit {
    double c = 0.0;
    double s0 = 0.0;
    double residual = 0.0;  ///< max norm
};

/// Least-squares fit of c / cosh(s + s0) to the discrete curvatures, with s
/// the hyperbolic arclength from the first vertex.
CurvatureFit fit_catenoid_profile(const SampledCurve& curve);

}  // namespace willmore

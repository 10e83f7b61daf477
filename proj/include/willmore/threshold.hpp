#pragma once

#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "willmore/curve.hpp"
#include "willmore/elastica.hpp"
#include "willmore/hyperbolic.hpp"
#include "willmore/surface.hpp"

namespace willmore {

inline constexpr double kSchlierfBound = 8.0 * std::numbers::pi;

struct ThresholdResult {
    BoundaryPoint x_star = BoundaryPoint::infinity();
    double value = 0.0;
    double schlierf_bound = kSchlierfBound;
    std::optional<double> curve_energy;
    bool admissible_improved = false;
    bool admissible_schlierf = false;
    double margin = 0.0;
};

/// Elastic energy of the two arcs c^x: side_energy from each clamp to x.
double pair_elastic_energy(const BoundaryData& bd, const BoundaryPoint& x);

/// Closed Willmore energy of the surface generated by c^x together with both
/// caps: (pi/2) * pair_elastic_energy + 8 pi.
double closed_energy_of_cx(const BoundaryData& bd, const BoundaryPoint& x);

/// The two arcs of c^x: the first runs from the minus clamp into x, the
/// second from x out to the plus clamp.
std::pair<ElasticaArc, ElasticaArc> cx_arcs(const BoundaryData& bd, const BoundaryPoint& x);

/// c^x sampled with `samples` points per arc, as two pieces meeting on the
/// axis near x.
std::vector<SampledCurve> sample_cx(const BoundaryData& bd, const BoundaryPoint& x,
                                    std::size_t samples);

/// Infimum of closed_energy_of_cx over x in R u {inf}; admissibility fields
/// are left unset.
ThresholdResult minimize_threshold(const BoundaryData& bd);

struct ProbeRow {
    double alpha_plus;
    double value;
};
/// minimize_threshold for horizontal clamping at each alpha_plus.
std::vector<ProbeRow> asymptotic_probe(double alpha_minus, std::span<const double> alpha_plus_grid);

/// Compares the closed energy of `curve` with its threshold and with 8 pi.
ThresholdResult admissibility(const SampledCurve& curve);

}  // namespace willmore

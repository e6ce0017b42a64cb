#pragma once

#include "gbhe/config.hpp"
#include "gbhe/space_fem.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace gbhe {

/// One time-series sample of the coupled fields.
struct PredatorSample {
    double t = 0.0;
    double u_min = 0.0, u_max = 0.0, u_mass = 0.0;
    double v_min = 0.0, v_max = 0.0, v_mass = 0.0;
};

struct PredatorResult {
    std::vector<PredatorSample> series;
    int snapshots_written = 0;
    Vec u_final, v_final;
    double max_abs_u = 0.0, max_abs_v = 0.0;
    bool finite = true;
};

/// Two-species reaction-diffusion run on [0,L]^2 with Allee-damped prey
/// growth, saturating predation coupling, homogeneous Neumann walls, P1
/// elements and backward-Euler (degree-0) stepping; the optional weakly
/// singular memory term adds eta * int K(t-s) Lap w ds to each equation
/// (restrictable to the prey with memory_species = prey). Snapshots are
/// plain-text grid dumps (header "nx ny", then row-major vertex values);
/// the time series goes to <output>/series.csv.
PredatorResult run_predator(const RunConfig& config, std::ostream* log = nullptr);

/// Initial-patch load vector: exact L2 projection of `height * indicator` of
/// the axis-aligned rectangle, computed by polygon clipping (P1 only).
Vec patch_projection(const FunctionSpace& space, const SpMat& mass, double height, double x0,
                     double x1, double y0, double y1);

} // namespace gbhe

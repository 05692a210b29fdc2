#pragma once

#include <string>

namespace phmarket {

/// Which branch of the pricing analysis produced the returned price.
enum class Regime {
    BoundaryEpsilon,       // first-order optimum clipped at the reservation utility
    InteriorRoot,          // interior solution of the first-order condition
    RoamingOnly,           // no worthwhile improvement over the roaming fee
    Segment,               // heterogeneous: targeting the first k types
    LowTravelerDensity,
    MediumTravelerDensity,
    HighTravelerDensity,
};

struct SolverDiagnostics {
    int iterations = 0;
    double residual = 0.0;
    bool convex = false;
    bool used_grid_fallback = false;
    bool upper_clip_bound = false;       // the C0 clamp was active
    bool quota_below_demand = false;     // some type has Q < B
    bool case_analysis_overridden = false;// global cross-check beat the case candidate
    bool multiple_roots_detected = false;
};

struct PricingSolution {
    double price = 0.0;
    double expected_cost = 0.0;
    double success_prob = 0.0;
    Regime regime = Regime::RoamingOnly;
    int segment = 0;                     // 1-based type index for Regime::Segment
    SolverDiagnostics diagnostics;

    std::string regime_label() const;
};

} // namespace phmarket

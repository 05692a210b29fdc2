#include "phmarket/solution.hpp"

namespace phmarket {

std::string PricingSolution::regime_label() const {
    switch (regime) {
    case Regime::BoundaryEpsilon: return "boundary-epsilon";
    case Regime::InteriorRoot: return "interior-root";
    case Regime::RoamingOnly: return "roaming-only";
    case Regime::Segment: return "segment-" + std::to_string(segment);
    case Regime::LowTravelerDensity: return "low-traveler-density";
    case Regime::MediumTravelerDensity: return "medium-traveler-density";
    case Regime::HighTravelerDensity: return "high-traveler-density";
    }
    return "unknown";
}

} // namespace phmarket

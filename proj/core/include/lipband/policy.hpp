#pragma once

#include "lipband/metric_space.hpp"
#include "lipband/rng.hpp"

namespace lipband {

// One pull per round: choose() returns the arm, observe() feeds back the
// (possibly corrupted) reward for that arm.
class Policy {
public:
    virtual ~Policy() = default;
    virtual Arm choose(Rng& policy_rng, Rng& region_rng) = 0;
    virtual void observe(double y) = 0;
    virtual int dim() const = 0;
};

}  // namespace lipband

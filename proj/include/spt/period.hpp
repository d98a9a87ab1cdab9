#pragma once

#include <optional>
#include <vector>

#include "spt/panel.hpp"

namespace spt {

// One (t0, t1) step restricted to the stocks listed at both dates, with
// market weights renormalised over that intersection and both rank
// permutations precomputed. Positions index `universe`; slots are 0-based
// ranks (slot 0 = largest).
struct RankedPeriod {
    std::size_t t0 = 0;
    std::size_t t1 = 0;
    std::vector<std::size_t> universe;
    std::vector<double> caps0, caps1;
    double total0 = 0.0, total1 = 0.0;
    std::vector<double> weights0, weights1;
    std::vector<std::size_t> order0, order1;  // slot -> position
    std::vector<std::size_t> slot0;           // position -> slot at t0
    std::vector<double> ranked0, ranked1;     // weight occupying slot k

    std::size_t size() const noexcept { return universe.size(); }
    std::optional<std::size_t> position_of(std::size_t stock) const;
};

// Throws CoverageError if the intersection universe is empty.
RankedPeriod make_period(const MarketPanel& panel, std::size_t t0, std::size_t t1);

}  // namespace spt

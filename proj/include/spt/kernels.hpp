#pragma once

// Data-parallel kernels. Each has a serial reference with identical
// arithmetic; the parallel versions split work across OpenMP threads with
// results written to fixed slots, so both produce bit-identical output.

#include <vector>

#include "spt/factorization.hpp"
#include "spt/localtime.hpp"
#include "spt/simulate.hpp"

namespace spt::kernels {

// Cumulative r_S - r_L for trials 0..n_trials-1.
std::vector<double> null_trial_spreads_serial(const SimConfig& config, std::size_t m,
                                              std::size_t horizon, std::size_t n_trials);
std::vector<double> null_trial_spreads_parallel(const SimConfig& config, std::size_t m,
                                                std::size_t horizon, std::size_t n_trials);

std::vector<LocalTimePath> localtime_profile_serial(const MarketPanel& panel,
                                                    const std::vector<std::size_t>& boundaries,
                                                    LocalTimeMethod method);
std::vector<LocalTimePath> localtime_profile_parallel(const MarketPanel& panel,
                                                      const std::vector<std::size_t>& boundaries,
                                                      LocalTimeMethod method);

// Every stock-period decomposition of the panel, grouped by period in date
// order and by panel index within a period.
std::vector<std::vector<ComponentDecomposition>> decompose_all_serial(
    const MarketPanel& panel, DividendConvention convention = DividendConvention::relative);
std::vector<std::vector<ComponentDecomposition>> decompose_all_parallel(
    const MarketPanel& panel, DividendConvention convention = DividendConvention::relative);

}  // namespace spt::kernels

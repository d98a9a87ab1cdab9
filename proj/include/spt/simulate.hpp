#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "spt/keyvalue.hpp"
#include "spt/panel.hpp"

namespace spt {

// Constant-coefficient log-diffusion market:
//   d log X_i = gamma_i dt + sum_nu xi_{i,nu} dW_nu
// stepped exactly on a monthly date grid.
struct SimConfig {
    std::size_t n_stocks = 2;
    std::size_t n_periods = 1;
    double dt = 1.0 / 12.0;            // years per period
    std::vector<double> gamma;         // per year
    Eigen::MatrixXd xi;                // n_stocks x drivers, per sqrt-year
    std::vector<double> initial_caps;  // currency units
    std::uint64_t seed = 0;
    Date start = Date{std::chrono::year{2000}, std::chrono::January, std::chrono::day{31}};

    // Optional extras so synthetic panels exercise the whole pipeline.
    double initial_cap_dispersion = 0.0;  // initial caps scaled by exp(d * Z_i)
    std::vector<double> dividend_yield;   // per year; empty = no dividend column
    std::optional<double> book_dispersion;  // book values X_i(0) exp(d * Z_i); emits book_to_price

    // Throws ArgumentError.
    void validate() const;
};

// Keys: n_stocks, n_periods, dt, gamma, volatility | xi, initial_caps, seed,
// start_date, initial_cap_dispersion, dividend_yield, book_dispersion.
// `gamma`, `initial_caps` and `dividend_yield` take one value (broadcast) or
// n_stocks values; `volatility` builds a diagonal xi; `xi` lists rows
// separated by ';'.
SimConfig sim_config_from(const KeyValueConfig& kv);

MarketPanel simulate(const SimConfig& config);

// Normal draws for one (trial, period) pair. Streams are keyed by
// splitmix64(seed, trial, period) so trials are order-independent.
std::vector<double> standard_normals(std::uint64_t seed, std::uint64_t trial, std::uint64_t period,
                                     std::size_t count);

struct NullExperimentSummary {
    std::size_t n_trials = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double fraction_positive = 0.0;  // share of trials with cumulative r_S > r_L
    std::vector<double> spreads;     // cumulative r_S - r_L per trial
};

// Cumulative Small-minus-Large log return of one trial: Large = top m by
// cap at each period start, Small = the rest, reconstituted every period.
double null_trial_spread(const SimConfig& config, std::size_t m, std::size_t horizon,
                         std::uint64_t trial);

NullExperimentSummary summarize_spreads(std::vector<double> spreads);

// Requires equal growth rates (the null case).
NullExperimentSummary null_size_experiment(const SimConfig& config, std::size_t m,
                                           std::size_t horizon, std::size_t n_trials);

}  // namespace spt

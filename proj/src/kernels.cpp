#include "spt/kernels.hpp"

#include <exception>
#include <optional>

#include "spt/errors.hpp"

namespace spt::kernels {

namespace {

// Consecutive-date periods; nullopt where no stock is listed on both dates.
std::optional<RankedPeriod> try_period(const MarketPanel& panel, std::size_t t) {
    if (common_universe(panel, t, t + 1).empty()) return std::nullopt;
    return make_period(panel, t, t + 1);
}

std::vector<std::optional<RankedPeriod>> periods_serial(const MarketPanel& panel) {
    std::vector<std::optional<RankedPeriod>> out(panel.num_dates() > 0 ? panel.num_dates() - 1 : 0);
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = try_period(panel, t);
    return out;
}

std::vector<std::optional<RankedPeriod>> periods_parallel(const MarketPanel& panel) {
    std::vector<std::optional<RankedPeriod>> out(panel.num_dates() > 0 ? panel.num_dates() - 1 : 0);
    const auto n = static_cast<long>(out.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long t = 0; t < n; ++t) out[static_cast<std::size_t>(t)] = try_period(panel, static_cast<std::size_t>(t));
    return out;
}

LocalTimePath accumulate_path(const MarketPanel& panel,
                              const std::vector<std::optional<RankedPeriod>>& periods,
                              std::size_t boundary, LocalTimeMethod method) {
    LocalTimePath path;
    path.boundary = boundary;
    path.method = method;
    path.dates = panel.dates();
    path.cumulative.assign(panel.num_dates(), 0.0);
    double acc = 0.0;
    for (std::size_t t = 0; t < periods.size(); ++t) {
        const auto& p = periods[t];
        if (!p || p->size() < boundary + 1) {
            path.gaps.push_back(t);
        } else {
            acc += method == LocalTimeMethod::tanaka ? tanaka_period_increment(*p, boundary)
                                                     : portfolio_period_increment(*p, boundary);
        }
        path.cumulative[t + 1] = acc;
    }
    return path;
}

}  // namespace

std::vector<double> null_trial_spreads_serial(const SimConfig& config, std::size_t m,
                                              std::size_t horizon, std::size_t n_trials) {
    std::vector<double> out(n_trials);
    for (std::size_t trial = 0; trial < n_trials; ++trial)
        out[trial] = null_trial_spread(config, m, horizon, trial);
    return out;
}

std::vector<double> null_trial_spreads_parallel(const SimConfig& config, std::size_t m,
                                                std::size_t horizon, std::size_t n_trials) {
    std::vector<double> out(n_trials);
    const auto n = static_cast<long>(n_trials);
#pragma omp parallel for schedule(static)
    for (long trial = 0; trial < n; ++trial)
        out[static_cast<std::size_t>(trial)] =
            null_trial_spread(config, m, horizon, static_cast<std::uint64_t>(trial));
    return out;
}

std::vector<LocalTimePath> localtime_profile_serial(const MarketPanel& panel,
                                                    const std::vector<std::size_t>& boundaries,
                                                    LocalTimeMethod method) {
    const auto periods = periods_serial(panel);
    std::vector<LocalTimePath> out;
    out.reserve(boundaries.size());
    for (auto m : boundaries) out.push_back(accumulate_path(panel, periods, m, method));
    return out;
}

std::vector<LocalTimePath> localtime_profile_parallel(const MarketPanel& panel,
                                                      const std::vector<std::size_t>& boundaries,
                                                      LocalTimeMethod method) {
    const auto periods = periods_parallel(panel);
    std::vector<LocalTimePath> out(boundaries.size());
    const auto n = static_cast<long>(boundaries.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long b = 0; b < n; ++b) {
        const auto i = static_cast<std::size_t>(b);
        out[i] = accumulate_path(panel, periods, boundaries[i], method);
    }
    return out;
}

std::vector<std::vector<ComponentDecomposition>> decompose_all_serial(const MarketPanel& panel,
                                                                      DividendConvention convention) {
    const auto periods = periods_serial(panel);
    std::vector<std::vector<ComponentDecomposition>> out(periods.size());
    for (std::size_t t = 0; t < periods.size(); ++t)
        if (periods[t]) out[t] = decompose_universe(panel, *periods[t], convention);
    return out;
}

std::vector<std::vector<ComponentDecomposition>> decompose_all_parallel(const MarketPanel& panel,
                                                                        DividendConvention convention) {
    std::vector<std::vector<ComponentDecomposition>> out(panel.num_dates() > 0 ? panel.num_dates() - 1 : 0);
    const auto n = static_cast<long>(out.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (long t = 0; t < n; ++t) {
        try {
            const auto p = try_period(panel, static_cast<std::size_t>(t));
            if (p) out[static_cast<std::size_t>(t)] = decompose_universe(panel, *p, convention);
        } catch (...) {
#pragma omp critical(spt_decompose_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace spt::kernels

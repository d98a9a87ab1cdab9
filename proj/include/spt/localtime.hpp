#pragma once

#include <string>
#include <vector>

#include "spt/panel.hpp"
#include "spt/period.hpp"

namespace spt {

enum class LocalTimeMethod { tanaka, portfolio_integration };

std::string to_string(LocalTimeMethod method);

// Cumulative local time at the boundary between ranks m and m+1, one value
// per panel date, starting at zero. Periods whose shared universe is too
// small for the boundary contribute nothing and are listed in `gaps` by the
// index of their start date.
struct LocalTimePath {
    std::size_t boundary = 1;
    LocalTimeMethod method = LocalTimeMethod::tanaka;
    std::vector<Date> dates;
    std::vector<double> cumulative;
    std::vector<std::size_t> gaps;
};

// Discretised Tanaka increment 1/2 (|b| - |a| - sgn(a)(b - a)) with
// sgn(x) = 1 for x > 0 and -1 otherwise.
double tanaka_increment(double before, double after);

// Per-period increments; both return 0 for a period where the boundary does
// not fit the shared universe (callers check period.size() > m).
double tanaka_period_increment(const RankedPeriod& period, std::size_t m);
double portfolio_period_increment(const RankedPeriod& period, std::size_t k);

LocalTimePath localtime_tanaka(const MarketPanel& panel, std::size_t m);
LocalTimePath localtime_portfolio(const MarketPanel& panel, std::size_t k);

// One path per boundary, evaluated in parallel.
std::vector<LocalTimePath> localtime_profile(const MarketPanel& panel,
                                             const std::vector<std::size_t>& boundaries,
                                             LocalTimeMethod method = LocalTimeMethod::tanaka);

// CSV `date,boundary_m,cumulative_local_time`, paths concatenated.
std::string paths_to_csv(const std::vector<LocalTimePath>& paths);
// Rows = boundaries, columns = dates.
std::string surface_to_csv(const std::vector<LocalTimePath>& paths);

}  // namespace spt

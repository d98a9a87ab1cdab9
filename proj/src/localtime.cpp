#include "spt/localtime.hpp"

#include <cmath>
#include <cstdio>

#include "spt/errors.hpp"
#include "spt/kernels.hpp"

namespace spt {

std::string to_string(LocalTimeMethod method) {
    return method == LocalTimeMethod::tanaka ? "tanaka" : "portfolio";
}

double tanaka_increment(double before, double after) {
    if (!std::isfinite(before) || !std::isfinite(after))
        throw DomainError("tanaka increment needs finite inputs");
    const double sgn = before > 0.0 ? 1.0 : -1.0;
    return 0.5 * (std::abs(after) - std::abs(before) - sgn * (after - before));
}

double tanaka_period_increment(const RankedPeriod& p, std::size_t m) {
    if (m + 1 > p.size()) return 0.0;
    // Signed log-weight difference of the two stocks holding ranks m and m+1
    // at the period start; the ranked gap itself never changes sign.
    const auto upper = p.order0[m - 1];
    const auto lower = p.order0[m];
    const double before = std::log(p.caps0[upper]) - std::log(p.caps0[lower]);
    const double after = std::log(p.caps1[upper]) - std::log(p.caps1[lower]);
    return tanaka_increment(before, after);
}

double portfolio_period_increment(const RankedPeriod& p, std::size_t k) {
    if (k + 1 > p.size()) return 0.0;
    // Without a crossover at the boundary the three log terms cancel
    // algebraically; return the exact zero instead of rounding residue.
    std::vector<char> held(p.size(), 0);
    for (std::size_t j = 0; j < k; ++j) held[p.order0[j]] = 1;
    bool crossed = false;
    for (std::size_t j = 0; j < k && !crossed; ++j) crossed = !held[p.order1[j]];
    if (!crossed) return 0.0;
    // Weight-ratio and held-cap terms combined with +log(M1/M0) reduce to
    // the reconstituted over held top-k cap ratio at t1.
    double top0 = 0.0, top1 = 0.0, held1 = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        top0 += p.ranked0[j];
        top1 += p.caps1[p.order1[j]];
        held1 += p.caps1[p.order0[j]];
    }
    const double scale = 2.0 * top0 / p.ranked0[k - 1];
    return scale * std::log(top1 / held1);
}

namespace {

void check_boundary(const MarketPanel& panel, std::size_t m) {
    if (m < 1 || m + 1 > panel.num_stocks())
        throw ArgumentError("boundary " + std::to_string(m) + " outside [1, " +
                            std::to_string(panel.num_stocks() == 0 ? 0 : panel.num_stocks() - 1) + "]");
}

}  // namespace

LocalTimePath localtime_tanaka(const MarketPanel& panel, std::size_t m) {
    check_boundary(panel, m);
    return kernels::localtime_profile_serial(panel, {m}, LocalTimeMethod::tanaka).front();
}

LocalTimePath localtime_portfolio(const MarketPanel& panel, std::size_t k) {
    check_boundary(panel, k);
    return kernels::localtime_profile_serial(panel, {k}, LocalTimeMethod::portfolio_integration).front();
}

std::vector<LocalTimePath> localtime_profile(const MarketPanel& panel,
                                             const std::vector<std::size_t>& boundaries,
                                             LocalTimeMethod method) {
    for (auto m : boundaries) check_boundary(panel, m);
    return kernels::localtime_profile_parallel(panel, boundaries, method);
}

std::string paths_to_csv(const std::vector<LocalTimePath>& paths) {
    std::string out = "date,boundary_m,cumulative_local_time\n";
    char buf[64];
    for (const auto& p : paths)
        for (std::size_t t = 0; t < p.dates.size(); ++t) {
            std::snprintf(buf, sizeof buf, ",%zu,%.6f\n", p.boundary, p.cumulative[t]);
            out += format_date(p.dates[t]) + buf;
        }
    return out;
}

std::string surface_to_csv(const std::vector<LocalTimePath>& paths) {
    std::string out = "boundary_m";
    if (!paths.empty())
        for (const auto& d : paths.front().dates) out += "," + format_date(d);
    out += "\n";
    char buf[32];
    for (const auto& p : paths) {
        out += std::to_string(p.boundary);
        for (double v : p.cumulative) {
            std::snprintf(buf, sizeof buf, ",%.6f", v);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace spt

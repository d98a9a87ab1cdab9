#include "spt/period.hpp"

#include <algorithm>

#include "spt/errors.hpp"
#include "spt/ranking.hpp"

namespace spt {

std::optional<std::size_t> RankedPeriod::position_of(std::size_t stock) const {
    auto it = std::lower_bound(universe.begin(), universe.end(), stock);
    if (it == universe.end() || *it != stock) return std::nullopt;
    return static_cast<std::size_t>(it - universe.begin());
}

RankedPeriod make_period(const MarketPanel& panel, std::size_t t0, std::size_t t1) {
    if (t0 >= panel.num_dates() || t1 >= panel.num_dates())
        throw LookupError("date index out of range");
    RankedPeriod p;
    p.t0 = t0;
    p.t1 = t1;
    p.universe = common_universe(panel, t0, t1);
    if (p.universe.empty())
        throw CoverageError("no stocks listed on both " + format_date(panel.date(t0)) + " and " +
                            format_date(panel.date(t1)));
    const std::size_t n = p.universe.size();
    p.caps0.resize(n);
    p.caps1.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.caps0[i] = panel.cap(t0, p.universe[i]);
        p.caps1[i] = panel.cap(t1, p.universe[i]);
        p.total0 += p.caps0[i];
        p.total1 += p.caps1[i];
    }
    p.weights0.resize(n);
    p.weights1.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.weights0[i] = p.caps0[i] / p.total0;
        p.weights1[i] = p.caps1[i] / p.total1;
    }
    p.order0 = descending_order(p.caps0);
    p.order1 = descending_order(p.caps1);
    p.slot0.resize(n);
    p.ranked0.resize(n);
    p.ranked1.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        p.slot0[p.order0[k]] = k;
        p.ranked0[k] = p.weights0[p.order0[k]];
        p.ranked1[k] = p.weights1[p.order1[k]];
    }
    return p;
}

}  // namespace spt

#include "spt/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spt/errors.hpp"

namespace spt {

std::vector<std::size_t> descending_order(std::span<const double> values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return idx;
}

std::vector<std::size_t> rank_universe(const MarketPanel& panel, std::size_t t,
                                       std::span<const std::size_t> universe,
                                       const std::string& attribute) {
    if (!panel.has_attribute(attribute))
        throw ValidationError("ranking attribute " + attribute + " not in panel");
    std::vector<double> values;
    values.reserve(universe.size());
    for (auto s : universe) {
        const double v = panel.attribute(attribute, t, s);
        if (std::isnan(v))
            throw ValidationError("attribute " + attribute + " missing for " + panel.stocks()[s] +
                                  " on " + format_date(panel.date(t)));
        values.push_back(v);
    }
    auto order = descending_order(values);
    for (auto& k : order) k = universe[k];
    return order;
}

RankPermutation rank(const MarketPanel& panel, std::size_t t, const std::string& attribute) {
    if (t >= panel.num_dates()) throw LookupError("date index out of range");
    const auto universe = panel.present_stocks(t);
    return RankPermutation{panel.date(t), attribute, rank_universe(panel, t, universe, attribute)};
}

RankPermutation rank(const MarketPanel& panel, const Date& date, const std::string& attribute) {
    return rank(panel, panel.date_index(date), attribute);
}

std::vector<double> ranked_weights(const MarketPanel& panel, std::size_t t) {
    const double total = total_market_cap(panel, t);
    const auto perm = rank(panel, t);
    std::vector<double> out;
    out.reserve(perm.order.size());
    for (auto s : perm.order) out.push_back(panel.cap(t, s) / total);
    return out;
}

std::vector<double> ranked_weights(const MarketPanel& panel, const Date& date) {
    return ranked_weights(panel, panel.date_index(date));
}

double gap(const MarketPanel& panel, std::size_t t, std::size_t m) {
    const auto w = ranked_weights(panel, t);
    if (m < 1 || m >= w.size())
        throw ArgumentError("gap boundary " + std::to_string(m) + " outside [1, " +
                            std::to_string(w.size() - 1) + "]");
    return std::log(w[m - 1]) - std::log(w[m]);
}

double gap(const MarketPanel& panel, const Date& date, std::size_t m) {
    return gap(panel, panel.date_index(date), m);
}

}  // namespace spt

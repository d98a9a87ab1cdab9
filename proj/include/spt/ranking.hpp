#pragma once

#include <span>
#include <string>
#include <vector>

#include "spt/panel.hpp"

namespace spt {

// Rank slot k (0-based here, 1 = largest in the usual 1-based notation) to
// stock identity. Descending attribute value; equal values keep panel
// stock-list order.
struct RankPermutation {
    Date date;
    std::string attribute;
    std::vector<std::size_t> order;  // order[k] = panel stock index in slot k
};

// Core sort: returns positions into `values` in descending order with ties
// broken by ascending position.
std::vector<std::size_t> descending_order(std::span<const double> values);

// Ranks the given universe (ascending panel indices) on `attribute` at date t.
// Throws ValidationError if a member lacks the attribute.
std::vector<std::size_t> rank_universe(const MarketPanel& panel, std::size_t t,
                                       std::span<const std::size_t> universe,
                                       const std::string& attribute = kMarketCap);

RankPermutation rank(const MarketPanel& panel, std::size_t t, const std::string& attribute = kMarketCap);
RankPermutation rank(const MarketPanel& panel, const Date& date, const std::string& attribute = kMarketCap);

std::vector<double> ranked_weights(const MarketPanel& panel, std::size_t t);
std::vector<double> ranked_weights(const MarketPanel& panel, const Date& date);

// log mu_(m) - log mu_(m+1) for 1-based boundary m.
double gap(const MarketPanel& panel, std::size_t t, std::size_t m);
double gap(const MarketPanel& panel, const Date& date, std::size_t m);

}  // namespace spt

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spt/factorization.hpp"

namespace spt {

enum class Sampling { monthly, quarterly, semiannual, annual };

int months_per_period(Sampling s);
int periods_per_year(Sampling s);
std::string to_string(Sampling s);
std::optional<Sampling> parse_sampling(std::string_view text);

struct ComponentSeries {
    std::string subject;
    Sampling sampling = Sampling::monthly;
    std::vector<ComponentDecomposition> periods;
};

// Every consecutive date pair of the panel.
ComponentSeries portfolio_series(const MarketPanel& panel, const PortfolioSpec& spec);
ComponentSeries stock_series(const MarketPanel& panel, const std::string& stock,
                             DividendConvention convention = DividendConvention::relative);

// a - b componentwise; both series must cover the same periods.
ComponentSeries difference(const ComponentSeries& a, const ComponentSeries& b, std::string subject);

struct Decimated {
    ComponentSeries series;
    std::size_t dropped = 0;  // trailing monthly periods that did not fill a block
};

// Sums log components over consecutive blocks of months starting at the
// first period of a monthly series.
Decimated decimate(const ComponentSeries& monthly, Sampling target);

// Trailing-window sums aligned to the window end; each output period spans
// the whole window.
ComponentSeries emit_rolling(const ComponentSeries& series, std::size_t window);

// CSV columns t0,t1,subject,total,distributional,rank,dividend (6 decimals).
std::string series_to_csv(const ComponentSeries& series);
// JSON mirror with full double precision.
std::string series_to_json(const ComponentSeries& series);
ComponentSeries series_from_json(std::string_view text);

}  // namespace spt

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "spt/panel.hpp"
#include "spt/period.hpp"

namespace spt {

// How the per-stock dividend correction is formed.
//   relative: delta_i(t1) - delta(t1)   (market-aggregate component is zero)
//   verbatim: delta(t1) + delta_i(t1)   (sum form of the dividend factorisation)
enum class DividendConvention { relative, verbatim };

// Log-return of a stock or portfolio relative to the market over one
// period, split into capital-distribution and rank parts. `total` is
// price-only; the dividend correction is carried separately.
struct ComponentDecomposition {
    Date t0;
    Date t1;
    std::string subject;
    double total = 0.0;
    double distributional = 0.0;
    double rank = 0.0;
    double dividend = 0.0;

    double total_with_dividends() const { return total + dividend; }
};

struct RankRange {
    std::string attribute = kMarketCap;
    std::size_t lo = 1;  // 1-based, inclusive
    std::size_t hi = 1;
};

// Holdings v_i indexed by panel stock; V(t) = sum v_i X_i(t).
struct Coefficients {
    std::vector<double> v;
};

struct PortfolioSpec {
    std::string name;
    std::variant<RankRange, Coefficients> holdings;
    // Rank-range portfolios are reconstituted every period: returns are
    // measured on t0 membership, then membership is re-formed at t1. That is
    // the only supported convention, so this must stay true for rank ranges.
    bool rebalance = true;

    static PortfolioSpec rank_range(std::string name, std::size_t lo, std::size_t hi,
                                    std::string attribute = kMarketCap);
    static PortfolioSpec coefficients(std::string name, std::vector<double> v);

    // Throws ArgumentError on an ill-formed spec.
    void validate(std::size_t num_stocks) const;
};

ComponentDecomposition decompose_stock(const MarketPanel& panel, std::size_t stock, std::size_t t0,
                                       std::size_t t1,
                                       DividendConvention convention = DividendConvention::relative);
ComponentDecomposition decompose_stock(const MarketPanel& panel, const std::string& stock,
                                       const Date& t0, const Date& t1,
                                       DividendConvention convention = DividendConvention::relative);

// Every stock of the period's universe, in universe order. Prices only when
// the panel has no dividend data.
std::vector<ComponentDecomposition> decompose_universe(
    const MarketPanel& panel, const RankedPeriod& period,
    DividendConvention convention = DividendConvention::relative);

// delta(t1) = ln(sum_i mu_i(t1) exp(delta_i(t1))) over the period universe.
double market_dividend_rate(const MarketPanel& panel, std::size_t t0, std::size_t t1);
double market_dividend_rate(const MarketPanel& panel, const Date& t0, const Date& t1);

double portfolio_value(const MarketPanel& panel, const PortfolioSpec& spec, std::size_t t);
double portfolio_value(const MarketPanel& panel, const PortfolioSpec& spec, const Date& date);

// Holdings of `spec` at the period start, aligned with period.universe.
// Rank ranges resolve to 0/1 membership from the t0 ranking.
std::vector<double> resolve_holdings(const MarketPanel& panel, const PortfolioSpec& spec,
                                     const RankedPeriod& period);

ComponentDecomposition decompose_portfolio_vs_market(const MarketPanel& panel,
                                                     const PortfolioSpec& spec, std::size_t t0,
                                                     std::size_t t1);
ComponentDecomposition decompose_portfolio_vs_market(const MarketPanel& panel,
                                                     const PortfolioSpec& spec,
                                                     const RankedPeriod& period);

ComponentDecomposition decompose_portfolio_vs_portfolio(const MarketPanel& panel,
                                                        const PortfolioSpec& a,
                                                        const PortfolioSpec& b, std::size_t t0,
                                                        std::size_t t1);

struct SizeEffect {
    double r_large = 0.0;
    double r_small = 0.0;
    bool ratio_equality_holds = false;
};

inline constexpr double kRatioEqualityTolerance = 1e-9;

// Large = top m by cap, Small = the rest, both on t0 membership.
SizeEffect size_effect_check(const MarketPanel& panel, std::size_t m, std::size_t t0, std::size_t t1);
SizeEffect size_effect_check(const RankedPeriod& period, std::size_t m);

}  // namespace spt

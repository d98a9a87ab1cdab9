#include "spt/factorization.hpp"

#include <cmath>

#include "spt/errors.hpp"
#include "spt/ranking.hpp"

namespace spt {

namespace {

std::size_t require_consecutive(const MarketPanel& panel, std::size_t t0, std::size_t t1) {
    if (t0 >= panel.num_dates() || t1 >= panel.num_dates())
        throw LookupError("date index out of range");
    if (t1 != t0 + 1)
        throw ArgumentError("factorisation needs consecutive panel dates, got " +
                            format_date(panel.date(t0)) + " and " + format_date(panel.date(t1)));
    return t1;
}

// Dividend rates at t1 for the whole period universe; throws listing every
// stock that lacks one.
std::vector<double> period_dividends(const MarketPanel& panel, const RankedPeriod& p) {
    std::vector<double> out(p.size());
    std::string missing;
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = panel.dividend_rate(p.t1, p.universe[i]);
        if (std::isnan(out[i])) missing += (missing.empty() ? "" : ", ") + panel.stocks()[p.universe[i]];
    }
    if (!missing.empty())
        throw CoverageError("dividend rate missing on " + format_date(panel.date(p.t1)) + " for " +
                            missing);
    return out;
}

double market_rate(const RankedPeriod& p, const std::vector<double>& delta) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += p.weights1[i] * std::exp(delta[i]);
    return std::log(acc);
}

// Components of a holdings vector h (aligned with the universe) relative to
// the market, in weight space so that total = distributional + rank holds to
// rounding.
ComponentDecomposition decompose_holdings(const MarketPanel& panel, const RankedPeriod& p,
                                          const std::vector<double>& h, std::string subject) {
    double held0 = 0.0, held1 = 0.0, slot1 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (h[i] == 0.0) continue;
        held0 += h[i] * p.weights0[i];
        held1 += h[i] * p.weights1[i];
        slot1 += h[i] * p.ranked1[p.slot0[i]];
    }
    ComponentDecomposition d;
    d.t0 = panel.date(p.t0);
    d.t1 = panel.date(p.t1);
    d.subject = std::move(subject);
    d.total = std::log(held1 / held0);
    d.distributional = std::log(slot1 / held0);
    d.rank = std::log(held1 / slot1);
    if (panel.has_dividends()) {
        const auto delta = period_dividends(panel, p);
        double value = 0.0, grown = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (h[i] == 0.0) continue;
            value += h[i] * p.caps1[i];
            grown += h[i] * p.caps1[i] * std::exp(delta[i]);
        }
        d.dividend = std::log(grown / value) - market_rate(p, delta);
    }
    return d;
}

}  // namespace

PortfolioSpec PortfolioSpec::rank_range(std::string name, std::size_t lo, std::size_t hi,
                                        std::string attribute) {
    return PortfolioSpec{std::move(name), RankRange{std::move(attribute), lo, hi}, true};
}

PortfolioSpec PortfolioSpec::coefficients(std::string name, std::vector<double> v) {
    return PortfolioSpec{std::move(name), Coefficients{std::move(v)}, false};
}

void PortfolioSpec::validate(std::size_t num_stocks) const {
    if (const auto* r = std::get_if<RankRange>(&holdings)) {
        if (r->lo < 1 || r->hi < r->lo)
            throw ArgumentError("portfolio " + name + ": rank range needs 1 <= lo <= hi");
        if (!rebalance)
            throw ArgumentError("portfolio " + name +
                                ": rank-range portfolios are always reconstituted each period");
        return;
    }
    const auto& v = std::get<Coefficients>(holdings).v;
    if (v.size() != num_stocks)
        throw ArgumentError("portfolio " + name + ": " + std::to_string(v.size()) +
                            " coefficients for " + std::to_string(num_stocks) + " stocks");
    bool any = false;
    for (double x : v) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw ArgumentError("portfolio " + name + ": coefficients must be finite and non-negative");
        any = any || x > 0.0;
    }
    if (!any) throw ArgumentError("portfolio " + name + ": coefficients all zero");
}

std::vector<ComponentDecomposition> decompose_universe(const MarketPanel& panel,
                                                       const RankedPeriod& p,
                                                       DividendConvention convention) {
    std::vector<double> delta;
    double market_delta = 0.0;
    if (panel.has_dividends()) {
        delta = period_dividends(panel, p);
        market_delta = market_rate(p, delta);
    }
    const Date d0 = panel.date(p.t0), d1 = panel.date(p.t1);
    std::vector<ComponentDecomposition> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto& d = out[i];
        d.t0 = d0;
        d.t1 = d1;
        d.subject = panel.stocks()[p.universe[i]];
        const double w0 = p.weights0[i];
        const double w1 = p.weights1[i];
        const double slot = p.ranked1[p.slot0[i]];  // new occupant of i's old slot
        d.total = std::log(w1 / w0);
        d.distributional = std::log(slot / w0);
        d.rank = std::log(w1 / slot);
        if (!delta.empty())
            d.dividend = convention == DividendConvention::relative ? delta[i] - market_delta
                                                                     : market_delta + delta[i];
    }
    return out;
}

ComponentDecomposition decompose_stock(const MarketPanel& panel, std::size_t stock, std::size_t t0,
                                       std::size_t t1, DividendConvention convention) {
    require_consecutive(panel, t0, t1);
    if (stock >= panel.num_stocks()) throw LookupError("stock index out of range");
    if (!panel.present(t0, stock) || !panel.present(t1, stock))
        throw CoverageError("stock " + panel.stocks()[stock] + " not listed on both " +
                            format_date(panel.date(t0)) + " and " + format_date(panel.date(t1)));
    const auto period = make_period(panel, t0, t1);
    const auto pos = *period.position_of(stock);
    // Only the target stock is needed, but the dividend term still depends on
    // the whole universe.
    return decompose_universe(panel, period, convention)[pos];
}

ComponentDecomposition decompose_stock(const MarketPanel& panel, const std::string& stock,
                                       const Date& t0, const Date& t1,
                                       DividendConvention convention) {
    return decompose_stock(panel, panel.stock_index(stock), panel.date_index(t0),
                           panel.date_index(t1), convention);
}

double market_dividend_rate(const MarketPanel& panel, std::size_t t0, std::size_t t1) {
    require_consecutive(panel, t0, t1);
    if (!panel.has_dividends()) throw CoverageError("panel has no dividend data");
    const auto p = make_period(panel, t0, t1);
    return market_rate(p, period_dividends(panel, p));
}

double market_dividend_rate(const MarketPanel& panel, const Date& t0, const Date& t1) {
    return market_dividend_rate(panel, panel.date_index(t0), panel.date_index(t1));
}

double portfolio_value(const MarketPanel& panel, const PortfolioSpec& spec, std::size_t t) {
    spec.validate(panel.num_stocks());
    if (t >= panel.num_dates()) throw LookupError("date index out of range");
    if (const auto* r = std::get_if<RankRange>(&spec.holdings)) {
        const auto perm = rank(panel, t, r->attribute);
        if (r->hi > perm.order.size())
            throw CoverageError("portfolio " + spec.name + " needs rank " + std::to_string(r->hi) +
                                " but only " + std::to_string(perm.order.size()) +
                                " stocks listed on " + format_date(panel.date(t)));
        double v = 0.0;
        for (std::size_t k = r->lo - 1; k < r->hi; ++k) v += panel.cap(t, perm.order[k]);
        return v;
    }
    const auto& coef = std::get<Coefficients>(spec.holdings).v;
    double v = 0.0;
    for (std::size_t s = 0; s < panel.num_stocks(); ++s)
        if (panel.present(t, s)) v += coef[s] * panel.cap(t, s);
    return v;
}

double portfolio_value(const MarketPanel& panel, const PortfolioSpec& spec, const Date& date) {
    return portfolio_value(panel, spec, panel.date_index(date));
}

std::vector<double> resolve_holdings(const MarketPanel& panel, const PortfolioSpec& spec,
                                     const RankedPeriod& p) {
    spec.validate(panel.num_stocks());
    std::vector<double> h(p.size(), 0.0);
    if (const auto* r = std::get_if<RankRange>(&spec.holdings)) {
        if (r->hi > p.size())
            throw CoverageError("portfolio " + spec.name + " needs rank " + std::to_string(r->hi) +
                                " but only " + std::to_string(p.size()) + " stocks listed on both " +
                                format_date(panel.date(p.t0)) + " and " +
                                format_date(panel.date(p.t1)));
        if (r->attribute == kMarketCap) {
            for (std::size_t k = r->lo - 1; k < r->hi; ++k) h[p.order0[k]] = 1.0;
        } else {
            const auto order = rank_universe(panel, p.t0, p.universe, r->attribute);
            for (std::size_t k = r->lo - 1; k < r->hi; ++k) h[*p.position_of(order[k])] = 1.0;
        }
        return h;
    }
    const auto& coef = std::get<Coefficients>(spec.holdings).v;
    bool any = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        h[i] = coef[p.universe[i]];
        any = any || h[i] > 0.0;
    }
    if (!any)
        throw CoverageError("portfolio " + spec.name + " holds no stock listed on both " +
                            format_date(panel.date(p.t0)) + " and " + format_date(panel.date(p.t1)));
    return h;
}

ComponentDecomposition decompose_portfolio_vs_market(const MarketPanel& panel,
                                                     const PortfolioSpec& spec,
                                                     const RankedPeriod& period) {
    return decompose_holdings(panel, period, resolve_holdings(panel, spec, period), spec.name);
}

ComponentDecomposition decompose_portfolio_vs_market(const MarketPanel& panel,
                                                     const PortfolioSpec& spec, std::size_t t0,
                                                     std::size_t t1) {
    require_consecutive(panel, t0, t1);
    return decompose_portfolio_vs_market(panel, spec, make_period(panel, t0, t1));
}

ComponentDecomposition decompose_portfolio_vs_portfolio(const MarketPanel& panel,
                                                        const PortfolioSpec& a,
                                                        const PortfolioSpec& b, std::size_t t0,
                                                        std::size_t t1) {
    require_consecutive(panel, t0, t1);
    const auto period = make_period(panel, t0, t1);
    const auto da = decompose_portfolio_vs_market(panel, a, period);
    const auto db = decompose_portfolio_vs_market(panel, b, period);
    ComponentDecomposition d;
    d.t0 = da.t0;
    d.t1 = da.t1;
    d.subject = a.name + "/" + b.name;
    d.total = da.total - db.total;
    d.distributional = da.distributional - db.distributional;
    d.rank = da.rank - db.rank;
    d.dividend = da.dividend - db.dividend;
    return d;
}

SizeEffect size_effect_check(const RankedPeriod& p, std::size_t m) {
    if (m < 1 || m >= p.size())
        throw ArgumentError("size boundary " + std::to_string(m) + " outside [1, " +
                            std::to_string(p.size() - 1) + "]");
    double large0 = 0.0, large_held1 = 0.0, large1 = 0.0;
    double small0 = 0.0, small_held1 = 0.0, small1 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const auto held = p.order0[k];
        const auto now = p.order1[k];
        if (k < m) {
            large0 += p.caps0[held];
            large_held1 += p.caps1[held];
            large1 += p.caps1[now];
        } else {
            small0 += p.caps0[held];
            small_held1 += p.caps1[held];
            small1 += p.caps1[now];
        }
    }
    SizeEffect out;
    out.r_large = std::log(large_held1 / large0);
    out.r_small = std::log(small_held1 / small0);
    out.ratio_equality_holds = std::abs(large1 / large0 - small1 / small0) <= kRatioEqualityTolerance;
    return out;
}

SizeEffect size_effect_check(const MarketPanel& panel, std::size_t m, std::size_t t0, std::size_t t1) {
    require_consecutive(panel, t0, t1);
    return size_effect_check(make_period(panel, t0, t1), m);
}

}  // namespace spt

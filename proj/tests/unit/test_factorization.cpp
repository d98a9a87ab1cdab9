#include <doctest.h>

#include <cmath>
#include <random>

#include "spt/errors.hpp"
#include "spt/factorization.hpp"
#include "spt/ranking.hpp"
#include "test_panels.hpp"

using namespace spt;
using spt::testing::caps_panel;
using spt::testing::caps_panel_with_dividends;

namespace {

bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

void check_triangle(const ComponentDecomposition& d, double tol = 1e-12) {
    CHECK(std::abs(d.total - (d.distributional + d.rank)) <= tol);
}

}  // namespace

TEST_CASE("decompose_stock: pure rank swap") {
    const auto panel = caps_panel({{4, 2, 1}, {4, 1, 2}});
    const auto d = decompose_stock(panel, 1, 0, 1);
    CHECK(close(d.total, std::log(0.5)));
    CHECK(close(d.distributional, 0.0));
    CHECK(close(d.rank, std::log(0.5)));
    CHECK(d.subject == "B");
    CHECK(d.dividend == 0.0);
}

TEST_CASE("decompose_stock: unchanged caps give zeros") {
    const auto panel = caps_panel({{4, 2, 1}, {4, 2, 1}});
    for (std::size_t s = 0; s < 3; ++s) {
        const auto d = decompose_stock(panel, s, 0, 1);
        CHECK(d.total == 0.0);
        CHECK(d.distributional == 0.0);
        CHECK(d.rank == 0.0);
    }
}

TEST_CASE("decompose_stock: weight change without rank change") {
    const auto panel = caps_panel({{4, 2, 1}, {4, 3, 1}});
    const auto d = decompose_stock(panel, "B", panel.date(0), panel.date(1));
    CHECK(close(d.total, std::log(21.0 / 16.0)));
    CHECK(close(d.distributional, std::log(21.0 / 16.0)));
    CHECK(close(d.rank, 0.0));
}

TEST_CASE("decompose_stock: errors") {
    const auto panel = caps_panel({{4, 2, 1}, {4, NAN, 1}, {4, 2, 1}});
    CHECK_THROWS_AS(decompose_stock(panel, 1, 0, 1), CoverageError);
    CHECK_THROWS_AS(decompose_stock(panel, 0, 0, 2), ArgumentError);
    CHECK_THROWS_AS(decompose_stock(panel, "Z", panel.date(0), panel.date(1)), LookupError);
}

TEST_CASE("decompose_stock: intersection universe renormalises weights") {
    // C delists at t1: weights are taken over {A, B} at both dates.
    const auto panel = caps_panel({{4, 2, 1}, {4, 4, NAN}});
    const auto d = decompose_stock(panel, 1, 0, 1);
    CHECK(close(d.total, std::log(0.5 / (2.0 / 6.0))));
    check_triangle(d);
}

TEST_CASE("dividend corrections") {
    const auto zero = caps_panel_with_dividends({{1, 1}, {1, 1}}, {{0, 0}, {0, 0}});
    CHECK(market_dividend_rate(zero, 0, 1) == 0.0);

    const auto constant = caps_panel_with_dividends({{3, 1}, {2, 1}}, {{0.01, 0.01}, {0.01, 0.01}});
    CHECK(close(market_dividend_rate(constant, 0, 1), 0.01, 1e-15));

    const auto two = caps_panel_with_dividends({{1, 1}, {1, 1}}, {{0, 0}, {0.02, 0}});
    CHECK(close(market_dividend_rate(two, 0, 1), std::log(0.5 * std::exp(0.02) + 0.5), 1e-15));

    const double md = std::log(0.5 * std::exp(0.02) + 0.5);
    const auto rel = decompose_stock(two, 0, 0, 1, DividendConvention::relative);
    CHECK(close(rel.dividend, 0.02 - md));
    const auto verb = decompose_stock(two, 0, 0, 1, DividendConvention::verbatim);
    CHECK(close(verb.dividend, 0.02 + md));
    CHECK(close(verb.total_with_dividends(), verb.total + verb.dividend));

    const auto missing = caps_panel_with_dividends({{1, 1, 1}, {1, 1, 1}}, {{0, 0, 0}, {0.1, NAN, NAN}});
    try {
        market_dividend_rate(missing, 0, 1);
        FAIL("expected CoverageError");
    } catch (const CoverageError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("B") != std::string::npos);
        CHECK(msg.find("C") != std::string::npos);
    }
    CHECK_THROWS_AS(market_dividend_rate(caps_panel({{1}, {1}}), 0, 1), CoverageError);
}

TEST_CASE("portfolio_value") {
    const auto panel = caps_panel({{10, 8, 6, 4}});
    CHECK(portfolio_value(panel, PortfolioSpec::rank_range("Large", 1, 2), 0) == 18.0);
    CHECK(portfolio_value(panel, PortfolioSpec::rank_range("Small", 3, 4), 0) == 10.0);
    CHECK(portfolio_value(panel, PortfolioSpec::coefficients("M", {1, 1, 1, 1}), 0) ==
          total_market_cap(panel, 0));
    CHECK_THROWS_AS(portfolio_value(panel, PortfolioSpec::rank_range("X", 3, 5), 0), CoverageError);
    CHECK_THROWS_AS(portfolio_value(panel, PortfolioSpec::rank_range("X", 0, 2), 0), ArgumentError);
    CHECK_THROWS_AS(portfolio_value(panel, PortfolioSpec::coefficients("X", {1, 1}), 0), ArgumentError);
    CHECK_THROWS_AS(portfolio_value(panel, PortfolioSpec::coefficients("X", {0, 0, 0, 0}), 0),
                    ArgumentError);
    auto held = PortfolioSpec::rank_range("X", 1, 2);
    held.rebalance = false;
    CHECK_THROWS_AS(held.validate(4), ArgumentError);
}

TEST_CASE("decompose_portfolio_vs_market: identities") {
    const auto still = caps_panel({{4, 2, 1, 3}, {8, 4, 2, 6}});
    const auto d = decompose_portfolio_vs_market(still, PortfolioSpec::rank_range("Top2", 1, 2), 0, 1);
    CHECK(close(d.rank, 0.0));
    CHECK(close(d.total, 0.0));

    const auto moving = caps_panel({{4, 2, 1, 3}, {5, 1, 2, 3}});
    const auto whole = decompose_portfolio_vs_market(moving, PortfolioSpec::rank_range("All", 1, 4), 0, 1);
    CHECK(close(whole.total, 0.0));
    CHECK(close(whole.distributional, 0.0));
    CHECK(close(whole.rank, 0.0));
    const auto ones = decompose_portfolio_vs_market(moving, PortfolioSpec::coefficients("M", {1, 1, 1, 1}), 0, 1);
    CHECK(close(ones.total, 0.0));
    CHECK(close(ones.rank, 0.0));
}

TEST_CASE("decompose_portfolio_vs_market: top-1 on the swap panel matches stock A") {
    const auto panel = caps_panel({{4, 2, 1}, {4, 1, 2}});
    const auto d = decompose_portfolio_vs_market(panel, PortfolioSpec::rank_range("Top1", 1, 1), 0, 1);
    CHECK(close(d.total, 0.0));
    const auto a = decompose_stock(panel, 0, 0, 1);
    CHECK(close(d.distributional, a.distributional));
    CHECK(close(d.rank, a.rank));

    // Members 2..3: aggregate stock components by t0 weight share
    const auto low = decompose_portfolio_vs_market(panel, PortfolioSpec::rank_range("Low", 2, 3), 0, 1);
    const auto b = decompose_stock(panel, 1, 0, 1);
    const auto c = decompose_stock(panel, 2, 0, 1);
    const double wb = 2.0 / 3.0, wc = 1.0 / 3.0;
    CHECK(close(low.total, std::log(wb * std::exp(b.total) + wc * std::exp(c.total))));
    CHECK(close(low.distributional,
                std::log(wb * std::exp(b.distributional) + wc * std::exp(c.distributional))));
    check_triangle(low);
}

TEST_CASE("decompose_portfolio_vs_market: value portfolio ranks on book_to_price") {
    const auto panel = load_panel(SPT_DATA_DIR "/hand_panel.csv");
    const auto period = make_period(panel, 0, 1);
    const auto h = resolve_holdings(panel, PortfolioSpec::rank_range("Value", 1, 1, kBookToPrice), period);
    CHECK(h == std::vector<double>{0, 0, 1});
    const auto d = decompose_portfolio_vs_market(panel, PortfolioSpec::rank_range("Value", 1, 1, kBookToPrice), 0, 1);
    const auto c = decompose_stock(panel, 2, 0, 1);
    CHECK(close(d.total, c.total));
    CHECK(close(d.rank, c.rank));
    CHECK(close(d.dividend, c.dividend));
}

TEST_CASE("decompose_portfolio_vs_portfolio") {
    const auto panel = caps_panel({{10, 8, 6, 4}, {9, 5, 8, 4.5}});
    const auto large = PortfolioSpec::rank_range("Large", 1, 2);
    const auto small = PortfolioSpec::rank_range("Small", 3, 4);
    const auto self = decompose_portfolio_vs_portfolio(panel, large, large, 0, 1);
    CHECK(self.total == 0.0);
    CHECK(self.distributional == 0.0);
    CHECK(self.rank == 0.0);

    const auto d = decompose_portfolio_vs_portfolio(panel, small, large, 0, 1);
    const auto ds = decompose_portfolio_vs_market(panel, small, 0, 1);
    const auto dl = decompose_portfolio_vs_market(panel, large, 0, 1);
    CHECK(d.subject == "Small/Large");
    CHECK(close(d.total, ds.total - dl.total));
    CHECK(close(d.distributional, ds.distributional - dl.distributional));
    CHECK(close(d.rank, ds.rank - dl.rank));
}

TEST_CASE("size_effect_check") {
    const auto panel = caps_panel({{10, 8, 6, 4}, {10, 6, 8, 4}});
    const auto s = size_effect_check(panel, 2, 0, 1);
    CHECK(s.ratio_equality_holds);
    CHECK(close(s.r_large, std::log(16.0 / 18.0)));
    CHECK(close(s.r_small, std::log(12.0 / 10.0)));
    CHECK(s.r_small > s.r_large);

    const auto flat = size_effect_check(caps_panel({{10, 8, 6, 4}, {10, 8, 6, 4}}), 2, 0, 1);
    CHECK(flat.ratio_equality_holds);
    CHECK(flat.r_large == 0.0);
    CHECK(flat.r_small == 0.0);

    CHECK_THROWS_AS(size_effect_check(panel, 0, 0, 1), ArgumentError);
    CHECK_THROWS_AS(size_effect_check(panel, 4, 0, 1), ArgumentError);
}

TEST_CASE("property: size effect holds on rescaled random 20-stock panels") {
    std::mt19937_64 rng(20);
    std::normal_distribution<double> normal(0.0, 0.2);
    std::uniform_int_distribution<std::size_t> pick_m(1, 19);
    int checked = 0;
    for (int trial = 0; trial < 2000 && checked < 300; ++trial) {
        const std::size_t m = pick_m(rng);
        std::vector<double> c0(20), c1(20);
        for (std::size_t i = 0; i < 20; ++i) {
            c0[i] = std::exp(2.0 * normal(rng) * 5.0);
            c1[i] = c0[i] * std::exp(normal(rng));
        }
        const auto o0 = descending_order(c0);
        const auto o1 = descending_order(c1);
        double l0 = 0, s0 = 0, l1 = 0, s1 = 0;
        for (std::size_t k = 0; k < 20; ++k) (k < m ? l0 : s0) += c0[o0[k]];
        for (std::size_t k = 0; k < 20; ++k) (k < m ? l1 : s1) += c1[o1[k]];
        // Rescale the t1 small set so its ranked-sum ratio matches the large one.
        const double target = l1 / l0 * s0;
        const double factor = target / s1;
        for (std::size_t k = m; k < 20; ++k) c1[o1[k]] *= factor;
        if (descending_order(c1) != o1) continue;
        const auto panel = caps_panel({c0, c1});
        const auto res = size_effect_check(panel, m, 0, 1);
        if (!res.ratio_equality_holds) continue;
        CHECK(res.r_small >= res.r_large - 1e-12);
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("property: triangle identity on random panels") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const auto panel = spt::testing::random_panel(rng, 5 + trial * 4, 4, 0.05, 0.05);
        for (std::size_t t = 0; t + 1 < panel.num_dates(); ++t) {
            const auto period = make_period(panel, t, t + 1);
            for (const auto& d : decompose_universe(panel, period)) check_triangle(d);
            if (period.size() >= 4) {
                const auto n = period.size();
                check_triangle(decompose_portfolio_vs_market(panel, PortfolioSpec::rank_range("L", 1, n / 2), period));
                check_triangle(decompose_portfolio_vs_market(panel, PortfolioSpec::rank_range("S", n / 2 + 1, n), period));
            }
        }
    }
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spt/errors.hpp"
#include "spt/localtime.hpp"
#include "spt/simulate.hpp"
#include "test_panels.hpp"

using namespace spt;
using spt::testing::caps_panel;

namespace {

SimConfig gbm(std::size_t n, std::size_t periods, double vol, std::uint64_t seed) {
    SimConfig c;
    c.n_stocks = n;
    c.n_periods = periods;
    c.gamma.assign(n, 0.05);
    c.xi = vol * Eigen::MatrixXd::Identity(Eigen::Index(n), Eigen::Index(n));
    c.initial_caps.assign(n, 100.0);
    c.initial_cap_dispersion = 0.5;
    c.seed = seed;
    return c;
}

// Brute-force signed-difference Tanaka sum with its own ranking.
std::vector<double> brute_tanaka(const MarketPanel& panel, std::size_t m) {
    std::vector<double> out{0.0};
    for (std::size_t t = 0; t + 1 < panel.num_dates(); ++t) {
        std::vector<std::size_t> idx(panel.num_stocks());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) {
            const double ca = panel.cap(t, a), cb = panel.cap(t, b);
            return ca != cb ? ca > cb : a < b;
        });
        const auto i = idx[m - 1], j = idx[m];
        const double g0 = std::log(panel.cap(t, i)) - std::log(panel.cap(t, j));
        const double g1 = std::log(panel.cap(t + 1, i)) - std::log(panel.cap(t + 1, j));
        const double inc = g0 > 0 ? std::max(-g1, 0.0) : std::max(g1, 0.0);
        out.push_back(out.back() + inc);
    }
    return out;
}

bool non_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1]) return false;
    return true;
}

}  // namespace

TEST_CASE("tanaka_increment") {
    CHECK(tanaka_increment(0.3, 0.1) == 0.0);
    CHECK(std::abs(tanaka_increment(0.2, -0.3) - 0.3) <= 1e-15);
    CHECK(tanaka_increment(0.0, 0.5) == 0.5);
    CHECK_THROWS_AS(tanaka_increment(NAN, 0.1), DomainError);
    CHECK_THROWS_AS(tanaka_increment(0.1, INFINITY), DomainError);
}

TEST_CASE("localtime_tanaka: no crossovers stay at zero; single swap") {
    const auto still = caps_panel({{4, 2, 1}, {5, 3, 1}, {6, 2, 1.5}});
    const auto path = localtime_tanaka(still, 1);
    CHECK(path.cumulative == std::vector<double>{0, 0, 0});
    CHECK(path.dates == still.dates());

    const auto swap = caps_panel({{4, 2, 1}, {4, 1, 2}});
    const auto sp = localtime_tanaka(swap, 2);
    CHECK(std::abs(sp.cumulative[1] - std::log(2.0)) <= 1e-12);
    CHECK(localtime_tanaka(swap, 1).cumulative[1] == 0.0);

    CHECK_THROWS_AS(localtime_tanaka(swap, 0), ArgumentError);
    CHECK_THROWS_AS(localtime_tanaka(swap, 3), ArgumentError);
}

TEST_CASE("localtime_tanaka matches brute-force crossover accounting on GBM") {
    const auto panel = simulate(gbm(10, 120, 0.4, 99));
    for (std::size_t m = 1; m < 10; ++m) {
        const auto path = localtime_tanaka(panel, m);
        const auto brute = brute_tanaka(panel, m);
        REQUIRE(path.cumulative.size() == brute.size());
        for (std::size_t t = 0; t < brute.size(); ++t) CHECK(std::abs(path.cumulative[t] - brute[t]) <= 1e-12);
        CHECK(non_decreasing(path.cumulative));
    }
}

TEST_CASE("localtime_portfolio: hand examples") {
    const auto flat = caps_panel({{4, 2, 1}, {4, 2, 1}});
    CHECK(localtime_portfolio(flat, 1).cumulative[1] == 0.0);
    const auto drift = caps_panel({{4, 2, 1}, {4, 3, 1}});
    CHECK(std::abs(localtime_portfolio(drift, 1).cumulative[1]) <= 1e-12);
    const auto swap = caps_panel({{4, 2, 1}, {4, 1, 2}});
    CHECK(std::abs(localtime_portfolio(swap, 2).cumulative[1] - 6.0 * std::log(6.0 / 5.0)) <= 1e-12);
    CHECK_THROWS_AS(localtime_portfolio(swap, 3), ArgumentError);
}

TEST_CASE("localtime paths are non-decreasing from zero on GBM panels") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto panel = simulate(gbm(15, 60, 0.5, seed));
        for (auto method : {LocalTimeMethod::tanaka, LocalTimeMethod::portfolio_integration}) {
            for (const auto& p : localtime_profile(panel, {1, 5, 14}, method)) {
                CHECK(p.cumulative.front() == 0.0);
                CHECK(non_decreasing(p.cumulative));
            }
        }
    }
}

TEST_CASE("localtime_profile: constant panel gives zero surface; gaps are recorded") {
    const auto flat = caps_panel({{4, 3, 2, 1}, {4, 3, 2, 1}, {4, 3, 2, 1}});
    for (const auto& p : localtime_profile(flat, {1, 2, 3}))
        for (double v : p.cumulative) CHECK(v == 0.0);

    const auto thin = caps_panel({{4, 3, 2}, {4, 2, NAN}, {2, 4, 1}});
    const auto p = localtime_profile(thin, {2}).front();
    CHECK(p.gaps == std::vector<std::size_t>{0, 1});
    CHECK(p.cumulative == std::vector<double>{0, 0, 0});
}

TEST_CASE("higher volatility gives larger terminal local time") {
    int larger = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto lo = localtime_tanaka(simulate(gbm(10, 60, 0.1, seed)), 5).cumulative.back();
        const auto hi = localtime_tanaka(simulate(gbm(10, 60, 0.4, seed)), 5).cumulative.back();
        larger += hi > lo;
    }
    CHECK(larger >= 18);
}

TEST_CASE("local time CSV output") {
    const auto swap = caps_panel({{4, 2, 1}, {4, 1, 2}});
    const auto paths = localtime_profile(swap, {1, 2});
    const auto csv = paths_to_csv(paths);
    CHECK(csv.rfind("date,boundary_m,cumulative_local_time\n", 0) == 0);
    CHECK(csv.find("2020-02-29,2,0.693147\n") != std::string::npos);
    const auto surf = surface_to_csv(paths);
    CHECK(surf.rfind("boundary_m,2020-01-31,2020-02-29\n", 0) == 0);
    CHECK(surf.find("\n2,0.000000,0.693147\n") != std::string::npos);
}

#include <doctest.h>

#include <random>

#include "spt/errors.hpp"
#include "spt/panel.hpp"
#include "test_panels.hpp"

using namespace spt;
using spt::testing::day;

TEST_CASE("load_panel: one date, three stocks") {
    const auto panel = parse_panel("date,stock_id,market_cap\n"
                                   "2020-01-31,A,4\n2020-01-31,B,2\n2020-01-31,C,1\n");
    CHECK(panel.num_dates() == 1);
    CHECK(panel.num_stocks() == 3);
    CHECK(panel.stocks() == std::vector<std::string>{"A", "B", "C"});
    CHECK(panel.cap(0, 0) == 4.0);
    CHECK_FALSE(panel.has_dividends());
}

TEST_CASE("load_panel: zero cap is a validation error naming stock and date") {
    try {
        parse_panel("date,stock_id,market_cap\n2020-01-31,A,4\n2020-01-31,B,0\n");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("B") != std::string::npos);
        CHECK(msg.find("2020-01-31") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_panel("date,stock_id,market_cap\n2020-01-31,A,-3\n"), ValidationError);
}

TEST_CASE("load_panel: stock appearing later is absent at the first date") {
    const auto panel = parse_panel("date,stock_id,market_cap\n"
                                   "2020-01-31,A,4\n2020-01-31,B,2\n"
                                   "2020-02-29,A,4\n2020-02-29,B,2\n2020-02-29,C,1\n");
    CHECK(panel.num_dates() == 2);
    const auto c = panel.stock_index("C");
    CHECK_FALSE(panel.present(0, c));
    CHECK(panel.present(1, c));
    CHECK(panel.present_stocks(0) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("load_panel: parse errors carry the row number") {
    try {
        parse_panel("date,stock_id,market_cap\n2020-01-31,A,4\n2020-13-01,B,2\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row() == 3);
    }
    try {
        parse_panel("date,stock_id,market_cap\n2020-01-31,A,4x\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row() == 2);
    }
    CHECK_THROWS_AS(parse_panel("date,stock_id,market_cap\n2020-01-31,A\n"), ParseError);
    CHECK_THROWS_AS(parse_panel("date,stock,market_cap\n2020-01-31,A,1\n"), ParseError);
    CHECK_THROWS_AS(parse_panel(""), ParseError);
}

TEST_CASE("load_panel: duplicate (date, stock) rejected") {
    CHECK_THROWS_AS(parse_panel("date,stock_id,market_cap\n2020-01-31,A,4\n2020-01-31,A,5\n"),
                    ValidationError);
}

TEST_CASE("load_panel: empty cap cell marks absence; dates are unioned and sorted") {
    const auto panel = parse_panel("date,stock_id,market_cap\n"
                                   "2020-02-29,A,3\n2020-01-31,A,4\n2020-01-31,B,\n2020-02-29,B,1\n");
    CHECK(panel.dates() == std::vector<Date>{day(2020, 1, 31), day(2020, 2, 29)});
    CHECK_FALSE(panel.present(0, 1));
    CHECK(panel.cap(0, 0) == 4.0);
}

TEST_CASE("load_panel: dividend and attribute columns, custom schema") {
    const auto panel = load_panel(SPT_DATA_DIR "/hand_panel.csv");
    REQUIRE(panel.has_dividends());
    CHECK(panel.dividend_rate(0, 1) == doctest::Approx(0.002));
    CHECK(panel.has_attribute(kBookToPrice));
    CHECK(panel.attribute(kBookToPrice, 1, 1) == 1.8);

    PanelSchema schema;
    schema.date_column = "when";
    schema.stock_column = "ticker";
    schema.cap_column = "mcap";
    const auto custom = parse_panel("when,ticker,mcap\n2020-01-31,X,10\n", schema);
    CHECK(custom.stocks() == std::vector<std::string>{"X"});
}

TEST_CASE("exclusion list drops rows inside the date range") {
    const auto ex = parse_exclusions("stock_id,start_date,end_date\nB,2020-02-01,2020-03-31\n");
    const auto panel = parse_panel("date,stock_id,market_cap\n"
                                   "2020-01-31,A,4\n2020-01-31,B,2\n"
                                   "2020-02-29,A,4\n2020-02-29,B,2\n"
                                   "2020-04-30,A,4\n2020-04-30,B,2\n",
                                   {}, ex);
    const auto b = panel.stock_index("B");
    CHECK(panel.present(0, b));
    CHECK_FALSE(panel.present(1, b));
    CHECK(panel.present(2, b));  // relisting is representable
    CHECK_THROWS_AS(parse_exclusions("stock,from,to\n"), ParseError);
}

TEST_CASE("market_weights and total_market_cap") {
    const auto panel = spt::testing::caps_panel({{4, 2, 1}});
    const auto w = market_weights(panel, 0);
    CHECK(w[0] == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
    CHECK(w[2] == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
    CHECK(total_market_cap(panel, 0) == 7.0);

    const auto half = market_weights(spt::testing::caps_panel({{5, 5}}), 0);
    CHECK(half == std::vector<double>{0.5, 0.5});

    const auto extreme = market_weights(spt::testing::caps_panel({{1e9, 1}}), 0);
    CHECK(std::abs(extreme[0] + extreme[1] - 1.0) <= 1e-12);

    CHECK(total_market_cap(spt::testing::caps_panel({{42}}), 0) == 42.0);
}

TEST_CASE("market_weights by date; unknown and empty dates") {
    const auto panel = spt::testing::caps_panel({{4, 2, 1}, {std::nan(""), std::nan(""), std::nan("")}});
    const auto wv = market_weights(panel, panel.date(0));
    CHECK(wv.stocks == std::vector<std::size_t>{0, 1, 2});
    CHECK_THROWS_AS(market_weights(panel, day(1999, 1, 1)), LookupError);
    CHECK_THROWS_AS(total_market_cap(panel, day(1999, 1, 1)), LookupError);
    CHECK_THROWS_AS(total_market_cap(panel, 1), CoverageError);
}

TEST_CASE("property: weights sum to one and equal cap/total on random panels") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto panel = spt::testing::random_panel(rng, 3 + trial * 5, 6);
        for (std::size_t t = 0; t < panel.num_dates(); ++t) {
            const auto w = market_weights(panel, t);
            const auto members = panel.present_stocks(t);
            const double total = total_market_cap(panel, t);
            double sum = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                sum += w[i];
                CHECK(std::abs(w[i] - panel.cap(t, members[i]) / total) <= 1e-12);
            }
            CHECK(std::abs(sum - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("property: CSV round trip reproduces the panel exactly") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto panel = spt::testing::random_panel(rng, 2 + trial, 4, 0.1, 0.2);
        CHECK(parse_panel(panel_to_csv(panel)) == panel);
    }
    const auto hand = load_panel(SPT_DATA_DIR "/hand_panel.csv");
    CHECK(parse_panel(panel_to_csv(hand)) == hand);
}

TEST_CASE("panel constructor enforces invariants") {
    Grid caps(2, 1);
    caps(0, 0) = 1.0;
    caps(1, 0) = 1.0;
    CHECK_THROWS_AS(MarketPanel({day(2020, 2, 1), day(2020, 1, 1)}, {"A"}, caps), ValidationError);
    CHECK_THROWS_AS(MarketPanel({day(2020, 1, 1)}, {"A"}, caps), ValidationError);
    Grid div(2, 1);
    div(0, 0) = INFINITY;
    CHECK_THROWS_AS(MarketPanel({day(2020, 1, 1), day(2020, 2, 1)}, {"A"}, caps, div), ValidationError);
}

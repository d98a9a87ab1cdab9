#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spt/errors.hpp"
#include "spt/report.hpp"
#include "test_panels.hpp"

using namespace spt;
using spt::testing::caps_panel;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("spt_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig hand_config(const std::filesystem::path& out) {
    RunConfig c;
    c.panel_path = "unused.csv";
    c.partitions = {custom_partition("hand", "Large:1-1,Mid:2-2,Small:3-4")};
    c.samplings = {Sampling::monthly};
    c.out_dir = out;
    c.rolling_window = 2;
    return c;
}

}  // namespace

TEST_CASE("named and custom partitions") {
    const auto a = named_partition("50/100/250");
    REQUIRE(a.portfolios.size() == 3);
    CHECK(a.portfolios[0].name == "Large");
    const auto& small = std::get<RankRange>(a.portfolios[2].holdings);
    CHECK(small.lo == 101);
    CHECK(small.hi == 250);
    const auto b = named_partition("10/40/165");
    CHECK(std::get<RankRange>(b.portfolios[1].holdings).lo == 11);
    CHECK(std::get<RankRange>(b.portfolios[2].holdings).hi == 165);
    CHECK_THROWS_AS(named_partition("1/2/3"), ValidationError);
    CHECK_THROWS_AS(custom_partition("x", "Large:1-"), ValidationError);

    RunConfig c;
    c.panel_path = "p.csv";
    c.partitions = {custom_partition("x", "Large:1-10,Small:5-20")};
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("run_config_from") {
    const auto kv = KeyValueConfig::parse("panel = data/p.csv\npartitions = 10/40/165\nsamplings = monthly, annual\n"
                                          "boundaries = 1-3, 7\nrolling_window = 6\n");
    const auto c = run_config_from(kv, "/base");
    CHECK(c.panel_path == std::filesystem::path("/base/data/p.csv"));
    CHECK(c.partitions.size() == 1);
    CHECK(c.samplings == std::vector<Sampling>{Sampling::monthly, Sampling::annual});
    CHECK(c.boundaries == std::vector<std::size_t>{1, 2, 3, 7});
    CHECK(c.rolling_window == 6);
    CHECK_THROWS_AS(run_config_from(KeyValueConfig::parse("panel = p.csv\nsampling = monthly\n")), ValidationError);
    const auto both = run_config_from(KeyValueConfig::parse("panel = p.csv\n"));
    CHECK(both.partitions.size() == 2);
}

TEST_CASE("aggregate_series annualises mean and sd; total includes dividend") {
    ComponentSeries s{"X", Sampling::quarterly, {}};
    const auto d0 = spt::testing::day(2000, 1, 31);
    for (double v : {0.01, 0.03, 0.02})
        s.periods.push_back({d0, d0, "X", v, v / 2, v / 2, 0.001});
    const auto cells = aggregate_series(s, "p");
    REQUIRE(cells.size() == 4);
    CHECK(cells[0].component == "total");
    CHECK(std::abs(cells[0].mean - 4 * 0.021) <= 1e-15);
    CHECK(std::abs(cells[0].sd - 0.01 * 2) <= 1e-15);
    CHECK(std::abs(cells[3].mean - 0.004) <= 1e-15);
    CHECK(cells[1].observations == 3);
    s.periods.resize(1);
    CHECK_THROWS_AS(aggregate_series(s, "p"), CoverageError);
}

TEST_CASE("run_decomposition on a 4-stock hand panel matches a direct oracle") {
    const auto panel = caps_panel({{10, 8, 6, 4}, {9, 5, 8, 4.5}, {9, 6, 7, 6}, {12, 6, 5, 6.5}});
    const auto out = temp_dir("hand");
    const auto cfg = hand_config(out);
    const auto res = run_decomposition(cfg, panel, true);

    for (const std::string name : {"Large", "Mid", "Small"}) {
        const auto spec = cfg.partitions[0].portfolios[name == "Large" ? 0 : name == "Mid" ? 1 : 2];
        std::vector<double> rank;
        for (std::size_t t = 0; t < 3; ++t)
            rank.push_back(decompose_portfolio_vs_market(panel, spec, t, t + 1).rank);
        const double mean = (rank[0] + rank[1] + rank[2]) / 3;
        double ss = 0;
        for (double r : rank) ss += (r - mean) * (r - mean);
        const auto* cell = res.table.find("hand", name, "rank", Sampling::monthly);
        REQUIRE(cell != nullptr);
        CHECK(std::abs(cell->mean - 12 * mean) <= 1e-12);
        CHECK(std::abs(cell->sd - std::sqrt(ss / 2) * std::sqrt(12.0)) <= 1e-12);
    }
    const auto* pair = res.table.find("hand", "Small/Large", "total", Sampling::monthly);
    REQUIRE(pair != nullptr);
    const auto* s = res.table.find("hand", "Small", "total", Sampling::monthly);
    const auto* l = res.table.find("hand", "Large", "total", Sampling::monthly);
    CHECK(std::abs(pair->mean - (s->mean - l->mean)) <= 1e-12);
    CHECK(res.table.find("hand", "Small/Value", "total", Sampling::monthly) == nullptr);

    CHECK(std::filesystem::exists(out / "hand/series/Small_vs_Large_monthly.csv"));
    CHECK(std::filesystem::exists(out / "hand/rolling/Large_rolling2.csv"));
    CHECK(std::filesystem::exists(out / "hand/table_vs_market.txt"));
    CHECK(std::filesystem::exists(out / "table.json"));
    const auto table = table_from_json(slurp(out / "table.json"));
    CHECK(table.cells.size() == res.table.cells.size());
    CHECK(table.cells[5].mean == res.table.cells[5].mean);
    const auto text = slurp(out / "hand/table_pairs.txt");
    CHECK(text.find("Small/Large\trank") != std::string::npos);
    std::filesystem::remove_all(out);
}

TEST_CASE("run_decomposition: constant panel gives zero cells") {
    std::vector<std::vector<double>> rows(8, std::vector<double>{10, 8, 6, 4});
    const auto res = run_decomposition(hand_config("unused"), caps_panel(rows), false);
    CHECK_FALSE(res.table.cells.empty());
    for (const auto& c : res.table.cells) {
        CHECK(c.mean == 0.0);
        CHECK(c.sd == 0.0);
    }
}

TEST_CASE("run_localtimes and manifest") {
    const auto panel = caps_panel({{4, 2, 1}, {4, 1, 2}, {1, 4, 2}});
    const auto out = temp_dir("lt");
    auto cfg = hand_config(out);
    const auto lt = run_localtimes(cfg, panel, true);
    CHECK(lt.tanaka.size() == 2);
    CHECK(lt.portfolio.size() == 2);
    CHECK(std::filesystem::exists(out / "localtime/tanaka_surface.csv"));
    write_manifest(out, "localtime", "abc", lt.artifacts);
    const auto manifest = slurp(out / "manifest.json");
    CHECK(manifest.find("\"config_hash\": \"abc\"") != std::string::npos);
    CHECK(manifest.find("localtime/portfolio_paths.csv") != std::string::npos);
    std::filesystem::remove_all(out);
    CHECK(slug("Small/Large") == "Small_vs_Large");
}

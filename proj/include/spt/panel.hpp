#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spt/date.hpp"

namespace spt {

inline constexpr const char* kMarketCap = "market_cap";
inline constexpr const char* kBookToPrice = "book_to_price";

// Dense dates x stocks grid of doubles; NaN marks a missing cell.
class Grid {
public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, std::numeric_limits<double>::quiet_NaN()) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const Grid&, const Grid&);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Market capitalisations (plus optional dividend rates and named
// attributes) on an aligned date x stock grid. Immutable once built; the
// constructor enforces every invariant.
class MarketPanel {
public:
    MarketPanel(std::vector<Date> dates, std::vector<std::string> stocks, Grid caps,
                std::optional<Grid> dividend_rates = std::nullopt,
                std::map<std::string, Grid> attributes = {});

    std::size_t num_dates() const noexcept { return dates_.size(); }
    std::size_t num_stocks() const noexcept { return stocks_.size(); }
    const std::vector<Date>& dates() const noexcept { return dates_; }
    const std::vector<std::string>& stocks() const noexcept { return stocks_; }
    const Date& date(std::size_t t) const { return dates_.at(t); }

    // Throws LookupError for dates / identifiers not in the panel.
    std::size_t date_index(const Date& date) const;
    std::size_t stock_index(const std::string& id) const;
    std::optional<std::size_t> find_date(const Date& date) const;

    bool present(std::size_t t, std::size_t s) const { return !std::isnan(caps_(t, s)); }
    double cap(std::size_t t, std::size_t s) const { return caps_(t, s); }
    // Stock indices (ascending) with a cap at date t.
    std::vector<std::size_t> present_stocks(std::size_t t) const;

    bool has_dividends() const noexcept { return dividends_.has_value(); }
    // NaN when no dividend data or the entry is missing.
    double dividend_rate(std::size_t t, std::size_t s) const;

    bool has_attribute(const std::string& name) const;
    // NaN when the cell is missing. market_cap is always available.
    double attribute(const std::string& name, std::size_t t, std::size_t s) const;
    std::vector<std::string> attribute_names() const;

    const Grid& caps() const noexcept { return caps_; }
    const std::optional<Grid>& dividend_grid() const noexcept { return dividends_; }
    const std::map<std::string, Grid>& attribute_grids() const noexcept { return attributes_; }

    friend bool operator==(const MarketPanel&, const MarketPanel&);

private:
    std::vector<Date> dates_;
    std::vector<std::string> stocks_;
    Grid caps_;
    std::optional<Grid> dividends_;
    std::map<std::string, Grid> attributes_;
    std::map<std::string, std::size_t> stock_lookup_;
};

struct WeightVector {
    Date date;
    std::vector<std::size_t> stocks;  // panel indices, ascending
    std::vector<double> weights;      // aligned with stocks
};

std::vector<double> market_weights(const MarketPanel& panel, std::size_t t);
WeightVector market_weights(const MarketPanel& panel, const Date& date);
double total_market_cap(const MarketPanel& panel, std::size_t t);
double total_market_cap(const MarketPanel& panel, const Date& date);

// Stocks present at both dates, ascending panel index.
std::vector<std::size_t> common_universe(const MarketPanel& panel, std::size_t t0, std::size_t t1);

// ---- CSV ingestion ----

struct PanelSchema {
    std::string date_column = "date";
    std::string stock_column = "stock_id";
    std::string cap_column = kMarketCap;
    std::string dividend_column = "dividend_rate";
    // Extra columns become attributes under their header name.
};

struct Exclusion {
    std::string stock_id;
    Date start;
    Date end;  // inclusive
};

MarketPanel load_panel(const std::filesystem::path& path, const PanelSchema& schema = {},
                       const std::vector<Exclusion>& exclusions = {});
MarketPanel parse_panel(std::string_view csv_text, const PanelSchema& schema = {},
                        const std::vector<Exclusion>& exclusions = {});

std::vector<Exclusion> load_exclusions(const std::filesystem::path& path);
std::vector<Exclusion> parse_exclusions(std::string_view csv_text);

// Long-format CSV; every (date, stock) cell is written so that presence and
// stock order survive a reload. Values use round-trip precision.
std::string panel_to_csv(const MarketPanel& panel);
void save_panel(const MarketPanel& panel, const std::filesystem::path& path);

}  // namespace spt

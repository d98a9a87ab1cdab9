#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spt/keyvalue.hpp"
#include "spt/localtime.hpp"
#include "spt/series.hpp"

namespace spt {

// Large / Mid / Small rank ranges over market cap.
struct PartitionScheme {
    std::string name;
    std::vector<PortfolioSpec> portfolios;
};

// "50/100/250": 1-50, 51-100, 101-250.  "10/40/165": 1-10, 11-40, 41-165.
PartitionScheme named_partition(const std::string& name);
// "Large:1-50,Mid:51-100,Small:101-250"; ranges must not overlap.
PartitionScheme custom_partition(const std::string& name, const std::string& ranges);

struct RunConfig {
    std::filesystem::path panel_path;
    std::filesystem::path exclusions_path;  // empty = none
    std::vector<PartitionScheme> partitions;
    std::size_t value_size = 50;
    std::string value_attribute = kBookToPrice;
    std::vector<Sampling> samplings{Sampling::monthly, Sampling::quarterly, Sampling::semiannual,
                                    Sampling::annual};
    std::filesystem::path out_dir = "out";
    std::vector<std::size_t> boundaries;
    std::size_t rolling_window = 12;
    std::string config_hash;

    void validate() const;
};

// Keys: panel, exclusions, partitions (comma list of named schemes or
// "custom"), custom_ranges, value_size, value_attribute, samplings,
// out_dir, boundaries (list and/or a-b ranges), rolling_window.
// Relative paths resolve against `base_dir`.
RunConfig run_config_from(const KeyValueConfig& kv, const std::filesystem::path& base_dir = {});

MarketPanel load_run_panel(const RunConfig& config);

// One aggregate cell: annualised mean and dispersion of a component.
//   mean = per-period mean * periods_per_year
//   sd   = per-period sample sd * sqrt(periods_per_year)
// The "total" component includes the dividend correction so that
// total = distributional + rank + dividend.
struct TableCell {
    std::string partition;
    std::string subject;
    std::string component;  // total | distributional | rank | dividend
    Sampling sampling = Sampling::monthly;
    double mean = 0.0;
    double sd = 0.0;
    std::size_t observations = 0;
};

struct AggregateTable {
    std::vector<TableCell> cells;
    const TableCell* find(const std::string& partition, const std::string& subject,
                          const std::string& component, Sampling sampling) const;
};

inline const std::vector<std::string> kComponents{"total", "distributional", "rank", "dividend"};

// Four cells (one per component) for a series with >= 2 periods.
std::vector<TableCell> aggregate_series(const ComponentSeries& series, const std::string& partition);

std::string table_to_json(const AggregateTable& table);
AggregateTable table_from_json(std::string_view text);
// Layout of the relative-to-market table: component x portfolio x sampling.
std::string table_vs_market_text(const AggregateTable& table, const std::string& partition,
                                 const std::vector<std::string>& portfolios);
// Layout of the pairwise table: pair x component x sampling.
std::string table_pairs_text(const AggregateTable& table, const std::string& partition,
                             const std::vector<std::string>& pairs);

struct EmittedSeries {
    std::string partition;
    ComponentSeries series;
};

struct DecompositionResult {
    std::vector<EmittedSeries> series;  // vs-market, pairs, and decimations
    AggregateTable table;
    std::vector<std::string> artifacts;  // relative to out_dir
};

// Writes under config.out_dir when `write` is set.
DecompositionResult run_decomposition(const RunConfig& config, const MarketPanel& panel, bool write = true);

struct LocalTimeResult {
    std::vector<LocalTimePath> tanaka;
    std::vector<LocalTimePath> portfolio;
    std::vector<std::string> artifacts;
};

LocalTimeResult run_localtimes(const RunConfig& config, const MarketPanel& panel, bool write = true);

void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    const std::string& config_hash, const std::vector<std::string>& artifacts);

// File-name friendly form of a subject or partition label.
std::string slug(const std::string& label);

}  // namespace spt

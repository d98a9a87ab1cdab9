#include "spt/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>

#include "spt/errors.hpp"
#include "spt/period.hpp"

namespace spt {

namespace {

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    const auto dash = text.find('-');
    auto number = [&](const std::string& s) -> std::size_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("bad rank range '" + text + "'");
        return static_cast<std::size_t>(std::stoul(s));
    };
    if (dash == std::string::npos) {
        const auto v = number(text);
        return {v, v};
    }
    return {number(text.substr(0, dash)), number(text.substr(dash + 1))};
}

const RankRange& range_of(const PortfolioSpec& spec) { return std::get<RankRange>(spec.holdings); }

void write_text(const std::filesystem::path& root, const std::string& rel, const std::string& text,
                std::vector<std::string>& artifacts) {
    const auto path = root / rel;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    artifacts.push_back(rel);
}

std::string cell_text(const TableCell* cell) {
    if (!cell) return "-";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f (%.3f)", 100.0 * cell->mean, 100.0 * cell->sd);
    return buf;
}

double component_value(const ComponentDecomposition& d, const std::string& component) {
    if (component == "total") return d.total_with_dividends();
    if (component == "distributional") return d.distributional;
    if (component == "rank") return d.rank;
    return d.dividend;
}

constexpr const char* kTableNote =
    "# Annualised mean (sd) in percent: mean = per-period mean x periods/year, "
    "sd = per-period sample sd x sqrt(periods/year). Total includes the dividend component.\n";

}  // namespace

PartitionScheme named_partition(const std::string& name) {
    if (name == "50/100/250")
        return {name,
                {PortfolioSpec::rank_range("Large", 1, 50), PortfolioSpec::rank_range("Mid", 51, 100),
                 PortfolioSpec::rank_range("Small", 101, 250)}};
    if (name == "10/40/165")
        return {name,
                {PortfolioSpec::rank_range("Large", 1, 10), PortfolioSpec::rank_range("Mid", 11, 40),
                 PortfolioSpec::rank_range("Small", 41, 165)}};
    throw ValidationError("unknown partition scheme " + name);
}

PartitionScheme custom_partition(const std::string& name, const std::string& ranges) {
    PartitionScheme scheme{name, {}};
    const auto items = KeyValueConfig::parse("r = " + ranges).get_list("r");
    for (const auto& item : items) {
        const auto colon = item.find(':');
        if (colon == std::string::npos || colon == 0)
            throw ValidationError("custom range '" + item + "' must look like Name:lo-hi");
        const auto [lo, hi] = parse_range(item.substr(colon + 1));
        scheme.portfolios.push_back(PortfolioSpec::rank_range(item.substr(0, colon), lo, hi));
    }
    if (scheme.portfolios.empty()) throw ValidationError("custom partition has no ranges");
    return scheme;
}

void RunConfig::validate() const {
    if (panel_path.empty()) throw ValidationError("run config needs a panel path");
    if (partitions.empty()) throw ValidationError("run config needs at least one partition");
    if (value_size < 1) throw ValidationError("value_size must be >= 1");
    if (rolling_window < 1) throw ValidationError("rolling_window must be >= 1");
    for (const auto& scheme : partitions) {
        std::set<std::string> names;
        for (std::size_t i = 0; i < scheme.portfolios.size(); ++i) {
            const auto& a = scheme.portfolios[i];
            a.validate(0);
            if (!names.insert(a.name).second)
                throw ValidationError("partition " + scheme.name + " repeats portfolio " + a.name);
            for (std::size_t j = 0; j < i; ++j) {
                const auto& ra = range_of(a);
                const auto& rb = range_of(scheme.portfolios[j]);
                if (ra.lo <= rb.hi && rb.lo <= ra.hi)
                    throw ValidationError("partition " + scheme.name + ": ranges of " + a.name +
                                          " and " + scheme.portfolios[j].name + " overlap");
            }
        }
    }
    for (auto m : boundaries)
        if (m < 1) throw ValidationError("local-time boundaries start at 1");
}

RunConfig run_config_from(const KeyValueConfig& kv, const std::filesystem::path& base_dir) {
    kv.require_known({"panel", "exclusions", "partitions", "custom_ranges", "value_size",
                      "value_attribute", "samplings", "out_dir", "boundaries", "rolling_window"});
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    };
    RunConfig c;
    if (auto p = kv.get("panel")) c.panel_path = resolve(*p);
    if (auto p = kv.get("exclusions")) c.exclusions_path = resolve(*p);
    auto schemes = kv.get_list("partitions");
    if (schemes.empty()) schemes = {"50/100/250", "10/40/165"};
    for (const auto& s : schemes) {
        if (s == "custom") {
            auto ranges = kv.get("custom_ranges");
            if (!ranges) throw ValidationError("partitions lists custom but custom_ranges is missing");
            c.partitions.push_back(custom_partition("custom", *ranges));
        } else {
            c.partitions.push_back(named_partition(s));
        }
    }
    c.value_size = kv.get_size("value_size", 50);
    c.value_attribute = kv.get_or("value_attribute", kBookToPrice);
    if (kv.has("samplings")) {
        c.samplings.clear();
        for (const auto& s : kv.get_list("samplings")) {
            auto sampling = parse_sampling(s);
            if (!sampling) throw ValidationError("unknown sampling " + s);
            c.samplings.push_back(*sampling);
        }
    }
    c.out_dir = kv.get_or("out_dir", "out");
    for (const auto& item : kv.get_list("boundaries")) {
        const auto [lo, hi] = parse_range(item);
        if (hi < lo) throw ValidationError("boundary range " + item + " is reversed");
        for (auto m = lo; m <= hi; ++m) c.boundaries.push_back(m);
    }
    c.rolling_window = kv.get_size("rolling_window", 12);
    c.config_hash = fnv1a_hex(kv.source());
    c.validate();
    return c;
}

MarketPanel load_run_panel(const RunConfig& config) {
    std::vector<Exclusion> exclusions;
    if (!config.exclusions_path.empty()) exclusions = load_exclusions(config.exclusions_path);
    return load_panel(config.panel_path, {}, exclusions);
}

const TableCell* AggregateTable::find(const std::string& partition, const std::string& subject,
                                      const std::string& component, Sampling sampling) const {
    for (const auto& c : cells)
        if (c.partition == partition && c.subject == subject && c.component == component &&
            c.sampling == sampling)
            return &c;
    return nullptr;
}

std::vector<TableCell> aggregate_series(const ComponentSeries& series, const std::string& partition) {
    const std::size_t n = series.periods.size();
    if (n < 2)
        throw CoverageError("series " + series.subject + " (" + to_string(series.sampling) +
                            ") has fewer than 2 observations");
    const double ppy = periods_per_year(series.sampling);
    std::vector<TableCell> out;
    for (const auto& component : kComponents) {
        double mean = 0.0;
        for (const auto& p : series.periods) mean += component_value(p, component);
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (const auto& p : series.periods) {
            const double d = component_value(p, component) - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        out.push_back(TableCell{partition, series.subject, component, series.sampling, mean * ppy,
                                sd * std::sqrt(ppy), n});
    }
    return out;
}

std::string table_to_json(const AggregateTable& table) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : table.cells)
        cells.push_back({{"partition", c.partition},
                         {"subject", c.subject},
                         {"component", c.component},
                         {"sampling", to_string(c.sampling)},
                         {"mean", c.mean},
                         {"sd", c.sd},
                         {"observations", c.observations}});
    return nlohmann::json{{"annualisation", "mean*ppy, sd*sqrt(ppy); total includes dividend"},
                          {"cells", std::move(cells)}}
        .dump(2);
}

AggregateTable table_from_json(std::string_view text) {
    const auto doc = nlohmann::json::parse(text);
    AggregateTable table;
    for (const auto& c : doc.at("cells")) {
        auto sampling = parse_sampling(c.at("sampling").get<std::string>());
        if (!sampling) throw ValidationError("unknown sampling in table JSON");
        table.cells.push_back(TableCell{c.at("partition").get<std::string>(),
                                        c.at("subject").get<std::string>(),
                                        c.at("component").get<std::string>(), *sampling,
                                        c.at("mean").get<double>(), c.at("sd").get<double>(),
                                        c.at("observations").get<std::size_t>()});
    }
    return table;
}

std::string table_vs_market_text(const AggregateTable& table, const std::string& partition,
                                 const std::vector<std::string>& portfolios) {
    const Sampling cols[] = {Sampling::monthly, Sampling::quarterly, Sampling::semiannual,
                             Sampling::annual};
    std::string out = kTableNote;
    out += "# partition " + partition + "\n";
    out += "Component\tPortfolio\tMonthly\tQuarterly\tSemi-annual\tAnnual\n";
    for (const auto& component : kComponents)
        for (const auto& p : portfolios) {
            out += component + "\t" + p;
            for (auto s : cols) out += "\t" + cell_text(table.find(partition, p, component, s));
            out += "\n";
        }
    return out;
}

std::string table_pairs_text(const AggregateTable& table, const std::string& partition,
                             const std::vector<std::string>& pairs) {
    const Sampling cols[] = {Sampling::monthly, Sampling::quarterly, Sampling::semiannual,
                             Sampling::annual};
    std::string out = kTableNote;
    out += "# partition " + partition + "\n";
    out += "Portfolio\tComponent\tMonthly\tQuarterly\tSemi-annual\tAnnual\n";
    for (const auto& pair : pairs)
        for (const auto& component : kComponents) {
            out += pair + "\t" + component;
            for (auto s : cols) out += "\t" + cell_text(table.find(partition, pair, component, s));
            out += "\n";
        }
    return out;
}

std::string slug(const std::string& label) {
    std::string out;
    for (char c : label) {
        if (c == '/') out += "_vs_";
        else if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') out += c;
        else out += '-';
    }
    return out;
}

DecompositionResult run_decomposition(const RunConfig& config, const MarketPanel& panel, bool write) {
    config.validate();
    if (panel.num_dates() < 2) throw CoverageError("panel needs at least two dates");
    std::vector<RankedPeriod> periods;
    periods.reserve(panel.num_dates() - 1);
    for (std::size_t t = 0; t + 1 < panel.num_dates(); ++t) periods.push_back(make_period(panel, t, t + 1));

    DecompositionResult result;
    std::vector<std::string> summary_rows;
    std::string summary = kTableNote;
    summary += "Portfolio\tTotal\tRank\tDistributional\tDividend\n";

    for (const auto& scheme : config.partitions) {
        std::vector<PortfolioSpec> specs = scheme.portfolios;
        if (panel.has_attribute(config.value_attribute) && config.value_attribute != kMarketCap)
            specs.push_back(PortfolioSpec::rank_range("Value", 1, config.value_size, config.value_attribute));

        std::map<std::string, ComponentSeries> monthly;
        std::vector<std::string> names;
        for (const auto& spec : specs) {
            ComponentSeries s{spec.name, Sampling::monthly, {}};
            for (const auto& p : periods) s.periods.push_back(decompose_portfolio_vs_market(panel, spec, p));
            names.push_back(spec.name);
            monthly.emplace(spec.name, std::move(s));
        }
        std::vector<std::string> pairs;
        std::vector<ComponentSeries> pair_series;
        for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
                 {"Small", "Large"}, {"Mid", "Large"}, {"Small", "Mid"}, {"Small", "Value"}}) {
            if (!monthly.count(a) || !monthly.count(b)) continue;
            pairs.push_back(a + "/" + b);
            pair_series.push_back(difference(monthly.at(a), monthly.at(b), pairs.back()));
        }

        std::vector<ComponentSeries> base;
        for (const auto& n : names) base.push_back(monthly.at(n));
        for (auto& s : pair_series) base.push_back(std::move(s));

        for (const auto& s : base) {
            for (auto sampling : config.samplings) {
                ComponentSeries emitted = sampling == Sampling::monthly ? s : decimate(s, sampling).series;
                if (emitted.periods.size() >= 2)
                    for (auto& cell : aggregate_series(emitted, scheme.name)) result.table.cells.push_back(cell);
                result.series.push_back(EmittedSeries{scheme.name, std::move(emitted)});
            }
        }

        if (write) {
            const auto dir = slug(scheme.name);
            for (const auto& e : result.series) {
                if (e.partition != scheme.name) continue;
                const auto stem = dir + "/series/" + slug(e.series.subject) + "_" + to_string(e.series.sampling);
                write_text(config.out_dir, stem + ".csv", series_to_csv(e.series), result.artifacts);
                write_text(config.out_dir, stem + ".json", series_to_json(e.series), result.artifacts);
            }
            for (const auto& s : base) {
                if (config.rolling_window > s.periods.size()) continue;
                write_text(config.out_dir,
                           dir + "/rolling/" + slug(s.subject) + "_rolling" +
                               std::to_string(config.rolling_window) + ".csv",
                           series_to_csv(emit_rolling(s, config.rolling_window)), result.artifacts);
            }
            write_text(config.out_dir, dir + "/table_vs_market.txt",
                       table_vs_market_text(result.table, scheme.name, names), result.artifacts);
            write_text(config.out_dir, dir + "/table_pairs.txt",
                       table_pairs_text(result.table, scheme.name, pairs), result.artifacts);
        }

        summary += "# partition " + scheme.name + "\n";
        for (const auto& pair : pairs) {
            if (pair != "Small/Large" && pair != "Small/Value") continue;
            summary += pair;
            for (const char* component : {"total", "rank", "distributional", "dividend"})
                summary += "\t" + cell_text(result.table.find(scheme.name, pair, component, Sampling::monthly));
            summary += "\n";
        }
    }
    if (write) {
        write_text(config.out_dir, "table.json", table_to_json(result.table), result.artifacts);
        write_text(config.out_dir, "table_summary.txt", summary, result.artifacts);
    }
    return result;
}

LocalTimeResult run_localtimes(const RunConfig& config, const MarketPanel& panel, bool write) {
    config.validate();
    auto boundaries = config.boundaries;
    if (boundaries.empty())
        for (std::size_t m = 1; m <= std::min<std::size_t>(200, panel.num_stocks() - 1); ++m)
            boundaries.push_back(m);
    LocalTimeResult result;
    result.tanaka = localtime_profile(panel, boundaries, LocalTimeMethod::tanaka);
    result.portfolio = localtime_profile(panel, boundaries, LocalTimeMethod::portfolio_integration);
    if (write) {
        write_text(config.out_dir, "localtime/tanaka_paths.csv", paths_to_csv(result.tanaka), result.artifacts);
        write_text(config.out_dir, "localtime/tanaka_surface.csv", surface_to_csv(result.tanaka),
                   result.artifacts);
        write_text(config.out_dir, "localtime/portfolio_paths.csv", paths_to_csv(result.portfolio),
                   result.artifacts);
        write_text(config.out_dir, "localtime/portfolio_surface.csv", surface_to_csv(result.portfolio),
                   result.artifacts);
    }
    return result;
}

void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    const std::string& config_hash, const std::vector<std::string>& artifacts) {
    std::filesystem::create_directories(out_dir);
    nlohmann::json doc{{"command", command}, {"config_hash", config_hash}, {"artifacts", artifacts}};
    std::ofstream out(out_dir / "manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest in " + out_dir.string());
    out << doc.dump(2) << "\n";
}

}  // namespace spt

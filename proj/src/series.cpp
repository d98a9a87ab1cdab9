#include "spt/series.hpp"

#include <cstdio>
#include <json.hpp>

#include "spt/errors.hpp"

namespace spt {

int months_per_period(Sampling s) {
    switch (s) {
        case Sampling::monthly: return 1;
        case Sampling::quarterly: return 3;
        case Sampling::semiannual: return 6;
        case Sampling::annual: return 12;
    }
    return 1;
}

int periods_per_year(Sampling s) { return 12 / months_per_period(s); }

std::string to_string(Sampling s) {
    switch (s) {
        case Sampling::monthly: return "monthly";
        case Sampling::quarterly: return "quarterly";
        case Sampling::semiannual: return "semiannual";
        case Sampling::annual: return "annual";
    }
    return "monthly";
}

std::optional<Sampling> parse_sampling(std::string_view text) {
    if (text == "monthly") return Sampling::monthly;
    if (text == "quarterly") return Sampling::quarterly;
    if (text == "semiannual" || text == "semi-annual") return Sampling::semiannual;
    if (text == "annual") return Sampling::annual;
    return std::nullopt;
}

ComponentSeries portfolio_series(const MarketPanel& panel, const PortfolioSpec& spec) {
    ComponentSeries out{spec.name, Sampling::monthly, {}};
    for (std::size_t t = 0; t + 1 < panel.num_dates(); ++t)
        out.periods.push_back(decompose_portfolio_vs_market(panel, spec, t, t + 1));
    return out;
}

ComponentSeries stock_series(const MarketPanel& panel, const std::string& stock,
                             DividendConvention convention) {
    const auto s = panel.stock_index(stock);
    ComponentSeries out{stock, Sampling::monthly, {}};
    for (std::size_t t = 0; t + 1 < panel.num_dates(); ++t) {
        if (!panel.present(t, s) || !panel.present(t + 1, s)) continue;
        out.periods.push_back(decompose_stock(panel, s, t, t + 1, convention));
    }
    return out;
}

ComponentSeries difference(const ComponentSeries& a, const ComponentSeries& b, std::string subject) {
    if (a.sampling != b.sampling || a.periods.size() != b.periods.size())
        throw ArgumentError("series " + a.subject + " and " + b.subject + " are not aligned");
    ComponentSeries out{std::move(subject), a.sampling, {}};
    out.periods.reserve(a.periods.size());
    for (std::size_t i = 0; i < a.periods.size(); ++i) {
        const auto& x = a.periods[i];
        const auto& y = b.periods[i];
        if (x.t0 != y.t0 || x.t1 != y.t1)
            throw ArgumentError("series " + a.subject + " and " + b.subject + " differ at period " +
                                std::to_string(i));
        out.periods.push_back(ComponentDecomposition{x.t0, x.t1, out.subject, x.total - y.total,
                                                     x.distributional - y.distributional,
                                                     x.rank - y.rank, x.dividend - y.dividend});
    }
    return out;
}

namespace {

ComponentDecomposition sum_block(const std::vector<ComponentDecomposition>& periods,
                                 std::size_t begin, std::size_t end, const std::string& subject) {
    ComponentDecomposition acc{periods[begin].t0, periods[end - 1].t1, subject, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = begin; i < end; ++i) {
        acc.total += periods[i].total;
        acc.distributional += periods[i].distributional;
        acc.rank += periods[i].rank;
        acc.dividend += periods[i].dividend;
    }
    return acc;
}

}  // namespace

Decimated decimate(const ComponentSeries& monthly, Sampling target) {
    if (monthly.sampling != Sampling::monthly)
        throw ArgumentError("decimation source must be monthly, got " + to_string(monthly.sampling));
    if (target == Sampling::monthly) throw ArgumentError("decimation target must be coarser than monthly");
    const auto block = static_cast<std::size_t>(months_per_period(target));
    Decimated out{ComponentSeries{monthly.subject, target, {}}, monthly.periods.size() % block};
    for (std::size_t b = 0; b + block <= monthly.periods.size(); b += block)
        out.series.periods.push_back(sum_block(monthly.periods, b, b + block, monthly.subject));
    return out;
}

ComponentSeries emit_rolling(const ComponentSeries& series, std::size_t window) {
    if (window == 0 || window > series.periods.size())
        throw ArgumentError("rolling window " + std::to_string(window) + " outside [1, " +
                            std::to_string(series.periods.size()) + "]");
    ComponentSeries out{series.subject, series.sampling, {}};
    for (std::size_t end = window; end <= series.periods.size(); ++end)
        out.periods.push_back(sum_block(series.periods, end - window, end, series.subject));
    return out;
}

std::string series_to_csv(const ComponentSeries& series) {
    std::string out = "t0,t1,subject,total,distributional,rank,dividend\n";
    char buf[160];
    for (const auto& p : series.periods) {
        std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.6f,%.6f\n", p.total, p.distributional, p.rank,
                      p.dividend);
        out += format_date(p.t0) + "," + format_date(p.t1) + "," + p.subject + buf;
    }
    return out;
}

std::string series_to_json(const ComponentSeries& series) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : series.periods)
        rows.push_back({{"t0", format_date(p.t0)},
                        {"t1", format_date(p.t1)},
                        {"subject", p.subject},
                        {"total", p.total},
                        {"distributional", p.distributional},
                        {"rank", p.rank},
                        {"dividend", p.dividend}});
    nlohmann::json doc{{"subject", series.subject}, {"sampling", to_string(series.sampling)},
                       {"periods", std::move(rows)}};
    return doc.dump(2);
}

ComponentSeries series_from_json(std::string_view text) {
    const auto doc = nlohmann::json::parse(text);
    ComponentSeries out;
    out.subject = doc.at("subject").get<std::string>();
    const auto sampling = parse_sampling(doc.at("sampling").get<std::string>());
    if (!sampling) throw ValidationError("unknown sampling in series JSON");
    out.sampling = *sampling;
    for (const auto& row : doc.at("periods")) {
        auto t0 = parse_date(row.at("t0").get<std::string>());
        auto t1 = parse_date(row.at("t1").get<std::string>());
        if (!t0 || !t1) throw ValidationError("malformed date in series JSON");
        out.periods.push_back(ComponentDecomposition{
            *t0, *t1, row.at("subject").get<std::string>(), row.at("total").get<double>(),
            row.at("distributional").get<double>(), row.at("rank").get<double>(),
            row.at("dividend").get<double>()});
    }
    return out;
}

}  // namespace spt

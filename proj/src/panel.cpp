#include "spt/panel.hpp"

#include <algorithm>
#include <cstdio>

#include "spt/errors.hpp"

namespace spt {

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    auto digits = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (text[i] < '0' || text[i] > '9') return std::nullopt;
            v = v * 10 + (text[i] - '0');
        }
        return v;
    };
    auto y = digits(0, 4), m = digits(5, 2), d = digits(8, 2);
    if (!y || !m || !d) return std::nullopt;
    Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
              std::chrono::day{static_cast<unsigned>(*d)}};
    if (!date.ok()) return std::nullopt;
    return date;
}

std::string format_date(const Date& date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

Date month_end(const Date& start, int offset) {
    using namespace std::chrono;
    const year_month ym = year_month{start.year(), start.month()} + months{offset};
    return year_month_day{year_month_day_last{ym.year(), month_day_last{ym.month()}}};
}

namespace {

bool same_cell(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

void check_shape(const Grid& g, std::size_t rows, std::size_t cols, const std::string& what) {
    if (g.rows() != rows || g.cols() != cols)
        throw ValidationError(what + " grid has shape " + std::to_string(g.rows()) + "x" +
                              std::to_string(g.cols()) + ", expected " + std::to_string(rows) +
                              "x" + std::to_string(cols));
}

}  // namespace

bool operator==(const Grid& a, const Grid& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
        if (!same_cell(a.data_[i], b.data_[i])) return false;
    return true;
}

MarketPanel::MarketPanel(std::vector<Date> dates, std::vector<std::string> stocks, Grid caps,
                         std::optional<Grid> dividend_rates,
                         std::map<std::string, Grid> attributes)
    : dates_(std::move(dates)),
      stocks_(std::move(stocks)),
      caps_(std::move(caps)),
      dividends_(std::move(dividend_rates)),
      attributes_(std::move(attributes)) {
    for (std::size_t t = 0; t < dates_.size(); ++t) {
        if (!dates_[t].ok()) throw ValidationError("invalid date at position " + std::to_string(t));
        if (t > 0 && !(dates_[t - 1] < dates_[t]))
            throw ValidationError("dates not strictly increasing at " + format_date(dates_[t]));
    }
    for (std::size_t s = 0; s < stocks_.size(); ++s) {
        if (!stock_lookup_.emplace(stocks_[s], s).second)
            throw ValidationError("duplicate stock identifier " + stocks_[s]);
    }
    check_shape(caps_, dates_.size(), stocks_.size(), "cap");
    if (dividends_) check_shape(*dividends_, dates_.size(), stocks_.size(), "dividend");
    for (const auto& [name, grid] : attributes_) {
        if (name == kMarketCap) throw ValidationError("attribute name market_cap is reserved");
        check_shape(grid, dates_.size(), stocks_.size(), "attribute " + name);
    }
    for (std::size_t t = 0; t < dates_.size(); ++t) {
        for (std::size_t s = 0; s < stocks_.size(); ++s) {
            const double c = caps_(t, s);
            if (std::isnan(c)) continue;
            if (!(c > 0.0) || !std::isfinite(c))
                throw ValidationError("non-positive market cap for " + stocks_[s] + " on " +
                                      format_date(dates_[t]));
            if (dividends_) {
                const double d = (*dividends_)(t, s);
                if (std::isinf(d))
                    throw ValidationError("non-finite dividend rate for " + stocks_[s] + " on " +
                                          format_date(dates_[t]));
            }
        }
    }
}

std::size_t MarketPanel::date_index(const Date& date) const {
    if (auto t = find_date(date)) return *t;
    throw LookupError("date " + format_date(date) + " not in panel");
}

std::optional<std::size_t> MarketPanel::find_date(const Date& date) const {
    auto it = std::lower_bound(dates_.begin(), dates_.end(), date);
    if (it == dates_.end() || *it != date) return std::nullopt;
    return static_cast<std::size_t>(it - dates_.begin());
}

std::size_t MarketPanel::stock_index(const std::string& id) const {
    auto it = stock_lookup_.find(id);
    if (it == stock_lookup_.end()) throw LookupError("stock " + id + " not in panel");
    return it->second;
}

std::vector<std::size_t> MarketPanel::present_stocks(std::size_t t) const {
    std::vector<std::size_t> out;
    out.reserve(stocks_.size());
    for (std::size_t s = 0; s < stocks_.size(); ++s)
        if (present(t, s)) out.push_back(s);
    return out;
}

double MarketPanel::dividend_rate(std::size_t t, std::size_t s) const {
    if (!dividends_) return std::numeric_limits<double>::quiet_NaN();
    return (*dividends_)(t, s);
}

bool MarketPanel::has_attribute(const std::string& name) const {
    return name == kMarketCap || attributes_.count(name) > 0;
}

double MarketPanel::attribute(const std::string& name, std::size_t t, std::size_t s) const {
    if (name == kMarketCap) return caps_(t, s);
    auto it = attributes_.find(name);
    if (it == attributes_.end()) throw LookupError("attribute " + name + " not in panel");
    return it->second(t, s);
}

std::vector<std::string> MarketPanel::attribute_names() const {
    std::vector<std::string> out;
    for (const auto& kv : attributes_) out.push_back(kv.first);
    return out;
}

bool operator==(const MarketPanel& a, const MarketPanel& b) {
    if (a.dates_ != b.dates_ || a.stocks_ != b.stocks_ || !(a.caps_ == b.caps_)) return false;
    if (a.dividends_.has_value() != b.dividends_.has_value()) return false;
    if (a.dividends_ && !(*a.dividends_ == *b.dividends_)) return false;
    return a.attributes_ == b.attributes_;
}

std::vector<double> market_weights(const MarketPanel& panel, std::size_t t) {
    const double total = total_market_cap(panel, t);
    std::vector<double> w;
    for (std::size_t s = 0; s < panel.num_stocks(); ++s)
        if (panel.present(t, s)) w.push_back(panel.cap(t, s) / total);
    return w;
}

WeightVector market_weights(const MarketPanel& panel, const Date& date) {
    const std::size_t t = panel.date_index(date);
    return WeightVector{date, panel.present_stocks(t), market_weights(panel, t)};
}

double total_market_cap(const MarketPanel& panel, std::size_t t) {
    if (t >= panel.num_dates()) throw LookupError("date index out of range");
    double total = 0.0;
    bool any = false;
    for (std::size_t s = 0; s < panel.num_stocks(); ++s) {
        if (!panel.present(t, s)) continue;
        total += panel.cap(t, s);
        any = true;
    }
    if (!any) throw CoverageError("no stocks present on " + format_date(panel.date(t)));
    return total;
}

double total_market_cap(const MarketPanel& panel, const Date& date) {
    return total_market_cap(panel, panel.date_index(date));
}

std::vector<std::size_t> common_universe(const MarketPanel& panel, std::size_t t0, std::size_t t1) {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < panel.num_stocks(); ++s)
        if (panel.present(t0, s) && panel.present(t1, s)) out.push_back(s);
    return out;
}

}  // namespace spt

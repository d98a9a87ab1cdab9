#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "spt/errors.hpp"
#include "spt/panel.hpp"

namespace spt {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

// Yields (1-based row number, line) for non-blank lines.
std::vector<std::pair<std::size_t, std::string_view>> split_lines(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t row = 0, start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++row;
        auto line = trim(text.substr(start, end - start));
        if (!line.empty()) out.emplace_back(row, line);
        start = end + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view field) {
    if (field.empty()) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
    return v;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Row {
    Date date;
    std::string stock;
    double cap;
    double dividend;
    std::vector<double> attrs;
};

bool excluded(const std::vector<Exclusion>& exclusions, const std::string& stock, const Date& d) {
    return std::any_of(exclusions.begin(), exclusions.end(), [&](const Exclusion& e) {
        return e.stock_id == stock && !(d < e.start) && !(e.end < d);
    });
}

std::string format_value(double v) {
    if (std::isnan(v)) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

MarketPanel parse_panel(std::string_view csv_text, const PanelSchema& schema,
                        const std::vector<Exclusion>& exclusions) {
    const auto lines = split_lines(csv_text);
    if (lines.empty()) throw ParseError("missing header row", 1);

    const auto header = split_fields(lines.front().second);
    std::optional<std::size_t> date_col, stock_col, cap_col, div_col;
    std::vector<std::pair<std::string, std::size_t>> attr_cols;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string name(header[c]);
        if (name == schema.date_column) date_col = c;
        else if (name == schema.stock_column) stock_col = c;
        else if (name == schema.cap_column) cap_col = c;
        else if (name == schema.dividend_column) div_col = c;
        else if (name.empty()) throw ParseError("empty column name in header", lines.front().first);
        else attr_cols.emplace_back(name, c);
    }
    if (!date_col || !stock_col || !cap_col)
        throw ParseError("header must contain " + schema.date_column + ", " + schema.stock_column +
                             " and " + schema.cap_column,
                         lines.front().first);

    std::vector<Row> rows;
    rows.reserve(lines.size());
    std::set<std::pair<Date, std::string>> seen;
    std::vector<std::string> stock_order;
    std::map<std::string, std::size_t> stock_pos;
    std::set<Date> date_set;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto [row_no, line] = lines[li];
        const auto fields = split_fields(line);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             row_no);
        const auto date = parse_date(fields[*date_col]);
        if (!date) throw ParseError("malformed date '" + std::string(fields[*date_col]) + "'", row_no);
        std::string stock(fields[*stock_col]);
        if (stock.empty()) throw ParseError("empty stock_id", row_no);

        auto number = [&](std::size_t col) -> double {
            if (fields[col].empty()) return std::numeric_limits<double>::quiet_NaN();
            auto v = parse_number(fields[col]);
            if (!v || std::isnan(*v))
                throw ParseError("malformed number '" + std::string(fields[col]) + "' in column " +
                                     std::string(header[col]),
                                 row_no);
            return *v;
        };
        Row row{*date, stock, number(*cap_col),
                div_col ? number(*div_col) : std::numeric_limits<double>::quiet_NaN(), {}};
        for (const auto& ac : attr_cols) row.attrs.push_back(number(ac.second));

        if (!seen.emplace(*date, stock).second)
            throw ValidationError("duplicate row for stock " + stock + " on " + format_date(*date));
        if (!std::isnan(row.cap) && !(row.cap > 0.0))
            throw ValidationError("non-positive market cap for " + stock + " on " + format_date(*date));
        if (div_col && std::isinf(row.dividend))
            throw ValidationError("non-finite dividend rate for " + stock + " on " + format_date(*date));

        date_set.insert(*date);
        if (stock_pos.emplace(stock, stock_order.size()).second) stock_order.push_back(stock);
        if (excluded(exclusions, stock, *date)) continue;
        rows.push_back(std::move(row));
    }

    std::vector<Date> dates(date_set.begin(), date_set.end());
    auto date_idx = [&](const Date& d) {
        return static_cast<std::size_t>(std::lower_bound(dates.begin(), dates.end(), d) - dates.begin());
    };

    Grid caps(dates.size(), stock_order.size());
    std::optional<Grid> dividends;
    if (div_col) dividends.emplace(dates.size(), stock_order.size());
    std::map<std::string, Grid> attributes;
    for (const auto& ac : attr_cols) attributes.emplace(ac.first, Grid(dates.size(), stock_order.size()));

    for (const auto& row : rows) {
        const auto t = date_idx(row.date);
        const auto s = stock_pos.at(row.stock);
        caps(t, s) = row.cap;
        if (dividends) (*dividends)(t, s) = row.dividend;
        for (std::size_t a = 0; a < attr_cols.size(); ++a)
            attributes.at(attr_cols[a].first)(t, s) = row.attrs[a];
    }
    return MarketPanel(std::move(dates), std::move(stock_order), std::move(caps), std::move(dividends),
                       std::move(attributes));
}

MarketPanel load_panel(const std::filesystem::path& path, const PanelSchema& schema,
                       const std::vector<Exclusion>& exclusions) {
    return parse_panel(read_file(path), schema, exclusions);
}

std::vector<Exclusion> parse_exclusions(std::string_view csv_text) {
    const auto lines = split_lines(csv_text);
    if (lines.empty()) throw ParseError("missing header row", 1);
    const auto header = split_fields(lines.front().second);
    if (header.size() != 3 || header[0] != "stock_id" || header[1] != "start_date" ||
        header[2] != "end_date")
        throw ParseError("exclusion header must be stock_id,start_date,end_date", lines.front().first);
    std::vector<Exclusion> out;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto [row_no, line] = lines[li];
        const auto fields = split_fields(line);
        if (fields.size() != 3) throw ParseError("expected 3 fields", row_no);
        auto start = parse_date(fields[1]);
        auto end = parse_date(fields[2]);
        if (!start || !end) throw ParseError("malformed date", row_no);
        if (*end < *start) throw ParseError("end_date before start_date", row_no);
        out.push_back(Exclusion{std::string(fields[0]), *start, *end});
    }
    return out;
}

std::vector<Exclusion> load_exclusions(const std::filesystem::path& path) {
    return parse_exclusions(read_file(path));
}

std::string panel_to_csv(const MarketPanel& panel) {
    std::string out = "date,stock_id,market_cap";
    if (panel.has_dividends()) out += ",dividend_rate";
    const auto attrs = panel.attribute_names();
    for (const auto& a : attrs) out += "," + a;
    out += "\n";
    for (std::size_t t = 0; t < panel.num_dates(); ++t) {
        const auto date = format_date(panel.date(t));
        for (std::size_t s = 0; s < panel.num_stocks(); ++s) {
            out += date;
            out += ',';
            out += panel.stocks()[s];
            out += ',';
            out += format_value(panel.cap(t, s));
            if (panel.has_dividends()) out += "," + format_value(panel.dividend_rate(t, s));
            for (const auto& a : attrs) out += "," + format_value(panel.attribute(a, t, s));
            out += '\n';
        }
    }
    return out;
}

void save_panel(const MarketPanel& panel, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << panel_to_csv(panel);
}

}  // namespace spt

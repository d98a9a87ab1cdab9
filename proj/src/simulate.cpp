#include "spt/simulate.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "spt/errors.hpp"
#include "spt/kernels.hpp"
#include "spt/ranking.hpp"

namespace spt {

namespace {

constexpr std::uint64_t kSetupPeriod = std::numeric_limits<std::uint64_t>::max();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// SplitMix64 as a UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

std::vector<double> broadcast(const KeyValueConfig& kv, const std::string& key, std::size_t n,
                              std::vector<double> fallback) {
    auto v = kv.get_doubles(key);
    if (v.empty()) return fallback;
    if (v.size() == 1) return std::vector<double>(n, v.front());
    if (v.size() != n)
        throw ValidationError("config key " + key + " has " + std::to_string(v.size()) +
                              " values for " + std::to_string(n) + " stocks");
    return v;
}

}  // namespace

std::vector<double> standard_normals(std::uint64_t seed, std::uint64_t trial, std::uint64_t period,
                                     std::size_t count) {
    SplitMix64 gen(splitmix64(seed ^ splitmix64(trial ^ splitmix64(period))));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> z(count);
    for (auto& x : z) x = normal(gen);
    return z;
}

void SimConfig::validate() const {
    if (n_stocks < 2) throw ArgumentError("simulation needs at least 2 stocks");
    if (n_periods < 1) throw ArgumentError("simulation needs at least 1 period");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ArgumentError("dt must be positive");
    if (gamma.size() != n_stocks) throw ArgumentError("gamma needs one rate per stock");
    if (static_cast<std::size_t>(xi.rows()) != n_stocks || xi.cols() < 1)
        throw ArgumentError("xi must have one row per stock and at least one driver");
    if (!xi.allFinite()) throw ArgumentError("xi must be finite");
    if (initial_caps.size() != n_stocks) throw ArgumentError("initial_caps needs one value per stock");
    for (double c : initial_caps)
        if (!(c > 0.0) || !std::isfinite(c)) throw ArgumentError("initial caps must be positive");
    for (double g : gamma)
        if (!std::isfinite(g)) throw ArgumentError("gamma must be finite");
    if (!dividend_yield.empty() && dividend_yield.size() != n_stocks)
        throw ArgumentError("dividend_yield needs one value per stock");
    if (initial_cap_dispersion < 0.0) throw ArgumentError("initial_cap_dispersion must be >= 0");
    if (book_dispersion && *book_dispersion < 0.0) throw ArgumentError("book_dispersion must be >= 0");
    if (!start.ok()) throw ArgumentError("invalid start date");
}

SimConfig sim_config_from(const KeyValueConfig& kv) {
    kv.require_known({"n_stocks", "n_periods", "dt", "gamma", "volatility", "xi", "initial_caps",
                      "seed", "start_date", "initial_cap_dispersion", "dividend_yield",
                      "book_dispersion"});
    SimConfig c;
    c.n_stocks = kv.get_size("n_stocks", 2);
    c.n_periods = kv.get_size("n_periods", 1);
    c.dt = kv.get_double("dt", 1.0 / 12.0);
    c.gamma = broadcast(kv, "gamma", c.n_stocks, std::vector<double>(c.n_stocks, 0.0));
    c.initial_caps = broadcast(kv, "initial_caps", c.n_stocks, std::vector<double>(c.n_stocks, 1.0));
    c.seed = kv.get_size("seed", 0);
    if (auto s = kv.get("start_date")) {
        auto d = parse_date(*s);
        if (!d) throw ValidationError("start_date must be YYYY-MM-DD");
        c.start = *d;
    }
    c.initial_cap_dispersion = kv.get_double("initial_cap_dispersion", 0.0);
    c.dividend_yield = broadcast(kv, "dividend_yield", c.n_stocks, {});
    if (kv.has("book_dispersion")) c.book_dispersion = kv.get_double("book_dispersion", 0.0);

    if (kv.has("xi") && kv.has("volatility")) throw ValidationError("give either xi or volatility");
    if (auto raw = kv.get("xi")) {
        std::vector<std::vector<double>> rows;
        std::stringstream ss(*raw);
        std::string row;
        while (std::getline(ss, row, ';'))
            rows.push_back(KeyValueConfig::parse("r = " + row).get_doubles("r"));
        if (rows.size() != c.n_stocks) throw ValidationError("xi needs one row per stock");
        c.xi.resize(static_cast<Eigen::Index>(c.n_stocks), static_cast<Eigen::Index>(rows.front().size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.front().size()) throw ValidationError("xi rows differ in length");
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                c.xi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    } else {
        const auto vol = broadcast(kv, "volatility", c.n_stocks, std::vector<double>(c.n_stocks, 0.0));
        c.xi = Eigen::VectorXd::Map(vol.data(), static_cast<Eigen::Index>(vol.size())).asDiagonal();
    }
    c.validate();
    return c;
}

MarketPanel simulate(const SimConfig& config) {
    config.validate();
    const std::size_t n = config.n_stocks;
    const auto drivers = static_cast<std::size_t>(config.xi.cols());
    const double sqrt_dt = std::sqrt(config.dt);

    std::vector<double> log_caps(n);
    {
        const auto z = standard_normals(config.seed, 0, kSetupPeriod, n);
        for (std::size_t i = 0; i < n; ++i)
            log_caps[i] = std::log(config.initial_caps[i]) + config.initial_cap_dispersion * z[i];
    }

    std::vector<Date> dates;
    Grid caps(config.n_periods + 1, n);
    for (std::size_t t = 0; t <= config.n_periods; ++t) {
        dates.push_back(month_end(config.start, static_cast<int>(t)));
        if (t > 0) {
            const auto z = standard_normals(config.seed, 0, t - 1, drivers);
            for (std::size_t i = 0; i < n; ++i) {
                double shock = 0.0;
                for (std::size_t v = 0; v < drivers; ++v)
                    shock += config.xi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(v)) * z[v];
                log_caps[i] += config.gamma[i] * config.dt + sqrt_dt * shock;
            }
        }
        for (std::size_t i = 0; i < n; ++i) caps(t, i) = std::exp(log_caps[i]);
    }

    std::vector<std::string> stocks;
    const int width = static_cast<int>(std::to_string(n).size());
    for (std::size_t i = 0; i < n; ++i) {
        std::string id = std::to_string(i + 1);
        stocks.push_back("S" + std::string(static_cast<std::size_t>(width) - id.size(), '0') + id);
    }

    std::optional<Grid> dividends;
    if (!config.dividend_yield.empty()) {
        dividends.emplace(config.n_periods + 1, n);
        for (std::size_t t = 0; t <= config.n_periods; ++t)
            for (std::size_t i = 0; i < n; ++i) (*dividends)(t, i) = config.dividend_yield[i] * config.dt;
    }

    std::map<std::string, Grid> attributes;
    if (config.book_dispersion) {
        const auto z = standard_normals(config.seed, 1, kSetupPeriod, n);
        Grid btp(config.n_periods + 1, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double book = caps(0, i) * std::exp(*config.book_dispersion * z[i]);
            for (std::size_t t = 0; t <= config.n_periods; ++t) btp(t, i) = book / caps(t, i);
        }
        attributes.emplace(kBookToPrice, std::move(btp));
    }
    return MarketPanel(std::move(dates), std::move(stocks), std::move(caps), std::move(dividends),
                       std::move(attributes));
}

double null_trial_spread(const SimConfig& config, std::size_t m, std::size_t horizon,
                         std::uint64_t trial) {
    const std::size_t n = config.n_stocks;
    const auto drivers = static_cast<std::size_t>(config.xi.cols());
    const double sqrt_dt = std::sqrt(config.dt);

    std::vector<double> log_caps(n), caps0(n), caps1(n);
    {
        const auto z = standard_normals(config.seed, trial, kSetupPeriod, n);
        for (std::size_t i = 0; i < n; ++i)
            log_caps[i] = std::log(config.initial_caps[i]) + config.initial_cap_dispersion * z[i];
    }
    for (std::size_t i = 0; i < n; ++i) caps0[i] = std::exp(log_caps[i]);

    double spread = 0.0;
    for (std::size_t t = 0; t < horizon; ++t) {
        const auto z = standard_normals(config.seed, trial, t, drivers);
        for (std::size_t i = 0; i < n; ++i) {
            double shock = 0.0;
            for (std::size_t v = 0; v < drivers; ++v)
                shock += config.xi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(v)) * z[v];
            log_caps[i] += config.gamma[i] * config.dt + sqrt_dt * shock;
            caps1[i] = std::exp(log_caps[i]);
        }
        const auto order = descending_order(caps0);
        double large0 = 0.0, large1 = 0.0, small0 = 0.0, small1 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto s = order[k];
            if (k < m) {
                large0 += caps0[s];
                large1 += caps1[s];
            } else {
                small0 += caps0[s];
                small1 += caps1[s];
            }
        }
        spread += std::log(small1 / small0) - std::log(large1 / large0);
        caps0.swap(caps1);
    }
    return spread;
}

NullExperimentSummary summarize_spreads(std::vector<double> spreads) {
    NullExperimentSummary s;
    s.n_trials = spreads.size();
    if (spreads.empty()) return s;
    std::size_t positive = 0;
    for (double x : spreads) {
        s.mean += x;
        positive += x > 0.0 ? 1 : 0;
    }
    s.mean /= static_cast<double>(spreads.size());
    if (spreads.size() > 1) {
        double ss = 0.0;
        for (double x : spreads) ss += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(spreads.size() - 1));
    }
    s.fraction_positive = static_cast<double>(positive) / static_cast<double>(spreads.size());
    s.spreads = std::move(spreads);
    return s;
}

NullExperimentSummary null_size_experiment(const SimConfig& config, std::size_t m,
                                           std::size_t horizon, std::size_t n_trials) {
    config.validate();
    for (double g : config.gamma)
        if (g != config.gamma.front())
            throw ArgumentError("null experiment needs identical growth rates for every stock");
    if (m < 1 || m >= config.n_stocks)
        throw ArgumentError("boundary m must lie in [1, n_stocks - 1]");
    if (horizon < 1 || n_trials < 1) throw ArgumentError("horizon and n_trials must be positive");
    return summarize_spreads(kernels::null_trial_spreads_parallel(config, m, horizon, n_trials));
}

}  // namespace spt

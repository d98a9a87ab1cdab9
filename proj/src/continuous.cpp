#include "spt/continuous.hpp"

#include <cmath>

#include "spt/errors.hpp"
#include "spt/period.hpp"
#include "spt/ranking.hpp"

namespace spt {

double market_entropy(std::span<const double> weights) {
    if (weights.empty()) throw DomainError("entropy of an empty weight vector");
    double s = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw DomainError("entropy needs strictly positive weights");
        s -= w * std::log(w);
    }
    return s;
}

double market_entropy(const WeightVector& weights) { return market_entropy(weights.weights); }

std::vector<double> entropy_portfolio(std::span<const double> weights) {
    if (weights.size() < 2) throw DomainError("entropy portfolio needs at least two stocks");
    const double s = market_entropy(weights);
    if (!(s > 0.0)) throw DomainError("degenerate weights: zero entropy");
    std::vector<double> pi(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) pi[i] = -weights[i] * std::log(weights[i]) / s;
    return pi;
}

std::vector<double> entropy_portfolio(const WeightVector& weights) {
    return entropy_portfolio(weights.weights);
}

Eigen::MatrixXd relative_covariances(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu) {
    const Eigen::VectorXd sigma_mu = sigma * mu;
    const double sigma_mumu = mu.dot(sigma_mu);
    const auto n = sigma.rows();
    Eigen::MatrixXd tau(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            tau(i, j) = sigma(i, j) - sigma_mu(i) - sigma_mu(j) + sigma_mumu;
    return tau;
}

CovarianceEstimate estimate_covariances(const MarketPanel& panel, std::size_t t_begin,
                                        std::size_t t_end, bool by_rank) {
    if (t_end >= panel.num_dates() || t_begin > t_end) throw LookupError("window outside panel dates");
    const std::size_t n_obs = t_end - t_begin;
    if (n_obs < 3)
        throw ArgumentError("covariance window needs at least 3 returns, got " + std::to_string(n_obs));

    CovarianceEstimate est;
    est.begin = panel.date(t_begin);
    est.end = panel.date(t_end);
    est.by_rank = by_rank;
    est.observations = n_obs;
    for (std::size_t s = 0; s < panel.num_stocks(); ++s) {
        bool all = true;
        for (std::size_t t = t_begin; t <= t_end && all; ++t) all = panel.present(t, s);
        if (all) est.universe.push_back(s);
    }
    const auto n = static_cast<Eigen::Index>(est.universe.size());
    if (n == 0) throw CoverageError("no stock listed throughout the covariance window");

    // Caps per date in stock order, or sorted descending for rank slots.
    auto caps_at = [&](std::size_t t) {
        Eigen::VectorXd c(n);
        for (Eigen::Index i = 0; i < n; ++i) c(i) = panel.cap(t, est.universe[static_cast<std::size_t>(i)]);
        if (by_rank) std::sort(c.data(), c.data() + n, std::greater<>());
        return c;
    };

    Eigen::MatrixXd returns(static_cast<Eigen::Index>(n_obs), n);
    est.mu = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd prev = caps_at(t_begin);
    for (std::size_t k = 0; k < n_obs; ++k) {
        const Eigen::VectorXd next = caps_at(t_begin + k + 1);
        est.mu += prev / prev.sum();
        returns.row(static_cast<Eigen::Index>(k)) = (next.array() / prev.array()).log().matrix().transpose();
        prev = next;
    }
    est.mu /= static_cast<double>(n_obs);

    const Eigen::RowVectorXd mean = returns.colwise().mean();
    const Eigen::MatrixXd centered = returns.rowwise() - mean;
    est.sigma = (centered.transpose() * centered) / static_cast<double>(n_obs - 1);
    est.sigma = (0.5 * (est.sigma + est.sigma.transpose())).eval();
    est.sigma_mu = est.sigma * est.mu;
    est.sigma_mumu = est.mu.dot(est.sigma_mu);
    est.tau = relative_covariances(est.sigma, est.mu);
    return est;
}

double excess_growth_rate(std::span<const double> pi, const Eigen::MatrixXd& sigma) {
    const auto n = static_cast<Eigen::Index>(pi.size());
    if (sigma.rows() != n || sigma.cols() != n)
        throw ArgumentError("excess growth rate: " + std::to_string(pi.size()) + " weights vs " +
                            std::to_string(sigma.rows()) + "x" + std::to_string(sigma.cols()) +
                            " covariance");
    const Eigen::Map<const Eigen::VectorXd> p(pi.data(), n);
    return 0.5 * (p.dot(sigma.diagonal()) - p.dot(sigma * p));
}

double excess_growth_rate(std::span<const double> pi, const CovarianceEstimate& cov) {
    return excess_growth_rate(pi, cov.sigma);
}

std::vector<double> fgp_weights(const GeneratingFunction& S, std::span<const double> ordered) {
    if (!S.has_gradient()) throw CapabilityError("generating function " + S.name + " has no gradient");
    for (double w : ordered)
        if (!(w > 0.0)) throw DomainError("generated weights need strictly positive market weights");
    const double s = S(ordered);
    if (!(s > 0.0)) throw DomainError("generating function " + S.name + " is not positive here");
    const auto grad = S.gradient(ordered);
    double drift = 0.0;
    for (std::size_t j = 0; j < ordered.size(); ++j) drift += ordered[j] * grad[j] / s;
    std::vector<double> pi(ordered.size());
    for (std::size_t k = 0; k < ordered.size(); ++k)
        pi[k] = (grad[k] / s + 1.0 - drift) * ordered[k];
    return pi;
}

std::vector<double> fgp_weights(const GeneratingFunction& S, const WeightVector& weights, bool ranked) {
    if (!ranked) return fgp_weights(S, weights.weights);
    const auto order = descending_order(weights.weights);
    std::vector<double> sorted(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) sorted[k] = weights.weights[order[k]];
    const auto pi_ranked = fgp_weights(S, sorted);
    std::vector<double> pi(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) pi[order[k]] = pi_ranked[k];
    return pi;
}

double distributional_increment(const GeneratingFunction& S, const MarketPanel& panel,
                                std::size_t t0, std::size_t t1, std::optional<std::size_t> m) {
    const auto p = make_period(panel, t0, t1);
    std::size_t len = p.size();
    if (m) {
        if (*m < 1 || *m > p.size())
            throw ArgumentError("size " + std::to_string(*m) + " outside universe of " +
                                std::to_string(p.size()));
        len = *m;
    }
    const std::span<const double> before(p.ranked0.data(), len), after(p.ranked1.data(), len);
    return std::log(S(after) / S(before));
}

double smooth_drift_increment(const GeneratingFunction& S, const WeightVector& weights,
                              const CovarianceEstimate& cov) {
    if (!S.has_hessian()) throw CapabilityError("generating function " + S.name + " has no hessian");
    if (!cov.by_rank) throw ArgumentError("smooth drift needs rank-slot covariances");
    const auto n = static_cast<Eigen::Index>(weights.weights.size());
    if (cov.tau.rows() != n)
        throw ArgumentError("smooth drift: " + std::to_string(n) + " weights vs " +
                            std::to_string(cov.tau.rows()) + " rank slots");
    std::vector<double> ranked(weights.weights);
    std::sort(ranked.begin(), ranked.end(), std::greater<>());
    const Eigen::MatrixXd h = S.hessian(ranked);
    const Eigen::Map<const Eigen::VectorXd> mu(ranked.data(), n);
    const double quad = (h.array() * (mu * mu.transpose()).array() * cov.tau.array()).sum();
    return -quad / (2.0 * S(ranked));
}

}  // namespace spt

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "spt/generating_function.hpp"
#include "spt/panel.hpp"

namespace spt {

// S(mu) = -sum mu_i log mu_i. Throws DomainError on a non-positive weight.
double market_entropy(std::span<const double> weights);
double market_entropy(const WeightVector& weights);

// pi_i = -mu_i log mu_i / S(mu): positive weights summing to one.
std::vector<double> entropy_portfolio(std::span<const double> weights);
std::vector<double> entropy_portfolio(const WeightVector& weights);

// Sample covariances of per-period log cap returns over a window, plus the
// relative covariances tau_ij = sigma_ij - sigma_i,mu - sigma_j,mu + sigma_mu,mu.
// Units are per period. With by_rank the series are rank-slot caps rather
// than stock caps, so identities mix across crossovers.
struct CovarianceEstimate {
    Date begin;
    Date end;
    bool by_rank = false;
    std::vector<std::size_t> universe;  // stocks listed on every window date
    std::size_t observations = 0;       // number of returns
    Eigen::VectorXd mu;                 // mean period-start weights (slot order when by_rank)
    Eigen::MatrixXd sigma;
    Eigen::VectorXd sigma_mu;
    double sigma_mumu = 0.0;
    Eigen::MatrixXd tau;
};

// tau from sigma and a reference weight vector.
Eigen::MatrixXd relative_covariances(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu);

// Window is the inclusive date-index range [t_begin, t_end]; it must hold at
// least three returns.
CovarianceEstimate estimate_covariances(const MarketPanel& panel, std::size_t t_begin,
                                        std::size_t t_end, bool by_rank);

// gamma* = (sum pi_i sigma_ii - sum pi_i pi_j sigma_ij) / 2
double excess_growth_rate(std::span<const double> pi, const Eigen::MatrixXd& sigma);
double excess_growth_rate(std::span<const double> pi, const CovarianceEstimate& cov);

// Portfolio generated by S at the given weights:
//   pi_k = (D_k log S + 1 - sum_j mu_j D_j log S) mu_k
// `ordered` must already be in the order S expects.
std::vector<double> fgp_weights(const GeneratingFunction& S, std::span<const double> ordered);
// With ranked = true the weights are sorted descending before S is applied
// and the result is mapped back to stock order.
std::vector<double> fgp_weights(const GeneratingFunction& S, const WeightVector& weights, bool ranked);

// log S(ranked mu(t1)) - log S(ranked mu(t0)) over the stocks listed at both
// dates. With `m`, only the first m ranked weights are passed to S.
double distributional_increment(const GeneratingFunction& S, const MarketPanel& panel,
                                std::size_t t0, std::size_t t1,
                                std::optional<std::size_t> m = std::nullopt);

// theta = -1/(2 S(mu)) sum_ij D_ij S(mu_p) mu_p(i) mu_p(j) tau_p(ij), using
// rank-slot covariances. Per-period units.
double smooth_drift_increment(const GeneratingFunction& S, const WeightVector& weights,
                              const CovarianceEstimate& cov);

}  // namespace spt

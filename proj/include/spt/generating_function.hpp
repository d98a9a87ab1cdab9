#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace spt {

// A positive function on the simplex, evaluated on a weight vector that is
// already in the order the function expects (rank order for rank-based
// functions). Derivatives are optional; operations that need one throw
// CapabilityError when it is missing.
struct GeneratingFunction {
    using Point = std::span<const double>;

    std::string name;
    std::function<double(Point)> value;
    std::function<std::vector<double>(Point)> gradient;
    std::function<Eigen::MatrixXd(Point)> hessian;

    double operator()(Point x) const { return value(x); }
    bool has_gradient() const { return static_cast<bool>(gradient); }
    bool has_hessian() const { return static_cast<bool>(hessian); }
};

namespace generators {

// S(x) = sum_i x_i; generates the market portfolio.
GeneratingFunction market();
// S(x) = x_(1) + ... + x_(m) on rank-ordered input.
GeneratingFunction top_sum(std::size_t m);
// S(x) = x_(m+1) + ... + x_(n) on rank-ordered input.
GeneratingFunction bottom_sum(std::size_t m);
// S(x) = -sum_i x_i log x_i.
GeneratingFunction entropy();
// S(x, v) = sum_i v_i x_i.
GeneratingFunction linear(std::vector<double> v);

}  // namespace generators

}  // namespace spt

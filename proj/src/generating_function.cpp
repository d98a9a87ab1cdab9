#include "spt/generating_function.hpp"

#include <algorithm>
#include <cmath>

#include "spt/errors.hpp"

namespace spt::generators {

namespace {

void require_size(std::span<const double> x, std::size_t at_least, const std::string& name) {
    if (x.size() < at_least)
        throw ArgumentError(name + " needs at least " + std::to_string(at_least) + " coordinates, got " +
                            std::to_string(x.size()));
}

// Sum over the half-open slot range [lo, hi) with hi clipped to the input.
GeneratingFunction slot_sum(std::string name, std::size_t lo, std::size_t hi) {
    GeneratingFunction g;
    g.name = name;
    g.value = [=](std::span<const double> x) {
        require_size(x, lo + 1, name);
        double s = 0.0;
        for (std::size_t k = lo; k < std::min(hi, x.size()); ++k) s += x[k];
        return s;
    };
    g.gradient = [=](std::span<const double> x) {
        std::vector<double> d(x.size(), 0.0);
        for (std::size_t k = lo; k < std::min(hi, x.size()); ++k) d[k] = 1.0;
        return d;
    };
    g.hessian = [](std::span<const double> x) {
        const auto n = static_cast<Eigen::Index>(x.size());
        return Eigen::MatrixXd::Zero(n, n).eval();
    };
    return g;
}

}  // namespace

GeneratingFunction market() {
    return slot_sum("market", 0, static_cast<std::size_t>(-1));
}

GeneratingFunction top_sum(std::size_t m) {
    if (m < 1) throw ArgumentError("top_sum needs m >= 1");
    return slot_sum("top" + std::to_string(m), 0, m);
}

GeneratingFunction bottom_sum(std::size_t m) {
    if (m < 1) throw ArgumentError("bottom_sum needs m >= 1");
    return slot_sum("bottom_after" + std::to_string(m), m, static_cast<std::size_t>(-1));
}

GeneratingFunction entropy() {
    GeneratingFunction g;
    g.name = "entropy";
    g.value = [](std::span<const double> x) {
        double s = 0.0;
        for (double xi : x) {
            if (!(xi > 0.0)) throw DomainError("entropy needs strictly positive weights");
            s -= xi * std::log(xi);
        }
        return s;
    };
    g.gradient = [](std::span<const double> x) {
        std::vector<double> d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) d[i] = -std::log(x[i]) - 1.0;
        return d;
    };
    g.hessian = [](std::span<const double> x) {
        const auto n = static_cast<Eigen::Index>(x.size());
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) h(i, i) = -1.0 / x[static_cast<std::size_t>(i)];
        return h;
    };
    return g;
}

GeneratingFunction linear(std::vector<double> v) {
    GeneratingFunction g;
    g.name = "linear";
    g.value = [v](std::span<const double> x) {
        if (x.size() != v.size()) throw ArgumentError("linear generating function: dimension mismatch");
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += v[i] * x[i];
        return s;
    };
    g.gradient = [v](std::span<const double> x) {
        if (x.size() != v.size()) throw ArgumentError("linear generating function: dimension mismatch");
        return v;
    };
    g.hessian = [](std::span<const double> x) {
        const auto n = static_cast<Eigen::Index>(x.size());
        return Eigen::MatrixXd::Zero(n, n).eval();
    };
    return g;
}

}  // namespace spt::generators

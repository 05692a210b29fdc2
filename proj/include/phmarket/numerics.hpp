#pragma once

#include <functional>

#include "phmarket/errors.hpp"

namespace phmarket::numerics {

/// Tolerances shared by the quadrature, root-finding and scalar-minimization
/// routines.
struct ToleranceConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_iter = 200;
    int grid_points = 10001;

    void validate() const;
};

/// Complementary error function, relative error below 1e-12 for |x| <= 10.
/// Throws std::domain_error on non-finite input.
double erfc_accurate(double x);

/// Inverse of erfc_accurate on (0, 2), solved by bisection.
double erfc_inverse(double y);

/// Pr(X <= t) for X ~ Normal(mean, std^2).
double gaussian_cdf(double t, double mean, double std);

/// Adaptive Simpson quadrature of f over [a, b] with estimated absolute
/// error below max(abs_tol, rel_tol * |result|). Exactly 0 when a == b.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const ToleranceConfig& tol = {});

/// Bisection root of f on [lo, hi]. Requires a sign change; throws
/// BracketError otherwise so callers can fall back to a grid search.
/// `iterations`, when given, receives the number of bisection steps.
double find_root_bisect(const std::function<double(double)>& f, double lo,
                        double hi, const ToleranceConfig& tol = {},
                        int* iterations = nullptr);

struct ScalarMin {
    double x;
    double value;
};

/// Grid scan over `grid_points` abscissae followed by a local derivative
/// bisection when the best point sits in a convex notch. Ties within
/// abs_tol resolve to the smallest abscissa. The result never exceeds
/// f(lo) or f(hi).
ScalarMin minimize_scalar(const std::function<double(double)>& f, double lo,
                          double hi, const ToleranceConfig& tol = {});

} // namespace phmarket::numerics

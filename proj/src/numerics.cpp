#include "phmarket/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace phmarket::numerics {

void ToleranceConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::domain_error("ToleranceConfig: tolerances must be strictly positive");
    if (max_iter < 1)
        throw std::domain_error("ToleranceConfig: max_iter must be >= 1");
    if (grid_points < 3)
        throw std::domain_error("ToleranceConfig: grid_points must be >= 3");
}

double erfc_accurate(double x) {
    if (!std::isfinite(x))
        throw std::domain_error("erfc_accurate: non-finite argument");
    // glibc's erfc is correctly rounded to a few ulp, far inside the
    // 1e-12 relative bar; the test suite checks it against an independent
    // series/continued-fraction oracle.
    return std::erfc(x);
}

double erfc_inverse(double y) {
    if (!(y > 0.0 && y < 2.0))
        throw std::domain_error("erfc_inverse: argument must lie in (0, 2)");
    // erfc is strictly decreasing; erfc(27) underflows to 0 and
    // erfc(-27) == 2 to machine precision, so [-27, 27] brackets any
    // attainable y.
    double lo = -27.0, hi = 27.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::erfc(mid) > y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double gaussian_cdf(double t, double mean, double std) {
    if (!(std > 0.0))
        throw std::domain_error("gaussian_cdf: std must be positive");
    return 0.5 * erfc_accurate(-(t - mean) / (std::sqrt(2.0) * std));
}

namespace {

double eval_checked(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v))
        throw NumericError("integrand evaluated to a non-finite value", x);
    return v;
}

double simpson(double fa, double fm, double fb, double h) {
    return (fa + 4.0 * fm + fb) * h / 6.0;
}

double adapt(const std::function<double(double)>& f, double a, double m, double b,
             double fa, double fm, double fb, double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval_checked(f, lm);
    const double frm = eval_checked(f, rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const ToleranceConfig& tol) {
    tol.validate();
    if (a > b)
        throw std::domain_error("integrate: requires a <= b");
    if (a == b)
        return 0.0;
    const double fa = eval_checked(f, a);
    const double fb = eval_checked(f, b);
    const double m = 0.5 * (a + b);
    const double fm = eval_checked(f, m);
    const double whole = simpson(fa, fm, fb, b - a);
    const double eps = std::max(tol.abs_tol, tol.rel_tol * std::abs(whole));
    return adapt(f, a, m, b, fa, fm, fb, whole, eps, 60);
}

double find_root_bisect(const std::function<double(double)>& f, double lo,
                        double hi, const ToleranceConfig& tol, int* iterations) {
    tol.validate();
    if (iterations)
        *iterations = 0;
    if (!(lo < hi))
        throw std::domain_error("find_root_bisect: requires lo < hi");
    double flo = eval_checked(f, lo);
    double fhi = eval_checked(f, hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if (flo * fhi > 0.0)
        throw BracketError("find_root_bisect: no sign change over [lo, hi]");
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < tol.max_iter; ++i) {
        mid = 0.5 * (lo + hi);
        const double fmid = eval_checked(f, mid);
        if (iterations)
            *iterations = i + 1;
        if (std::abs(fmid) <= tol.abs_tol || hi - lo <= tol.abs_tol)
            return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return mid;
}

ScalarMin minimize_scalar(const std::function<double(double)>& f, double lo,
                          double hi, const ToleranceConfig& tol) {
    tol.validate();
    if (!(lo <= hi))
        throw std::domain_error("minimize_scalar: requires lo <= hi");
    if (lo == hi)
        return {lo, eval_checked(f, lo)};

    const int n = tol.grid_points;
    const double step = (hi - lo) / (n - 1);
    std::vector<double> fx(static_cast<std::size_t>(n));
    double fmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double x = (i == n - 1) ? hi : lo + step * i;
        fx[static_cast<std::size_t>(i)] = eval_checked(f, x);
        fmin = std::min(fmin, fx[static_cast<std::size_t>(i)]);
    }
    // Ties within abs_tol resolve to the smallest abscissa.
    int best = 0;
    while (fx[static_cast<std::size_t>(best)] > fmin + tol.abs_tol)
        ++best;
    double xbest = (best == n - 1) ? hi : lo + step * best;
    double fbest = fx[static_cast<std::size_t>(best)];

    // Local refinement: bisect the numerical derivative when the grid
    // minimum sits in a convex notch.
    if (best > 0 && best < n - 1 &&
        fx[static_cast<std::size_t>(best - 1)] >= fbest &&
        fx[static_cast<std::size_t>(best + 1)] >= fbest) {
        const double h = step / 1024.0;
        auto deriv = [&](double x) { return (eval_checked(f, x + h) - eval_checked(f, x - h)) / (2.0 * h); };
        double a = lo + step * (best - 1);
        double b = lo + step * (best + 1);
        const double da = deriv(a);
        const double db = deriv(b);
        if (da < 0.0 && db > 0.0) {
            for (int i = 0; i < tol.max_iter && b - a > tol.abs_tol; ++i) {
                const double mid = 0.5 * (a + b);
                (deriv(mid) < 0.0 ? a : b) = mid;
            }
            const double xr = 0.5 * (a + b);
            const double fr = eval_checked(f, xr);
            if (fr <= fbest) {
                xbest = xr;
                fbest = fr;
            }
        }
    }

    // Endpoint guarantee: never report a value above f(lo) or f(hi).
    if (fx.front() < fbest) {
        xbest = lo;
        fbest = fx.front();
    }
    if (fx.back() < fbest) {
        xbest = hi;
        fbest = fx.back();
    }
    return {xbest, fbest};
}

} // namespace phmarket::numerics

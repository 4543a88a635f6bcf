#ifndef PDM_CALCULUS_HPP
#define PDM_CALCULUS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "pdm/errors.hpp"
#include "pdm/grid.hpp"

namespace pdm::calculus {

inline double default_step(double r) { return 1e-4 * std::max(1.0, std::abs(r)); }

namespace detail {

inline double checked_eval(const std::function<double(double)>& f, double x) {
    double v = f(x);
    if (!std::isfinite(v))
        throw evaluation_error("function evaluation returned non-finite value");
    return v;
}

} // namespace detail

// 4th-order central finite difference; exact for polynomials up to degree 4
// (order 1) resp. 5 (order 2).
inline double central_derivative(const std::function<double(double)>& f, double r,
                                 int order, double h = 0.0) {
    if (h <= 0.0) h = default_step(r);
    const double f2 = detail::checked_eval(f, r + 2 * h);
    const double f1 = detail::checked_eval(f, r + h);
    const double fm1 = detail::checked_eval(f, r - h);
    const double fm2 = detail::checked_eval(f, r - 2 * h);
    if (order == 1)
        return (-f2 + 8 * f1 - 8 * fm1 + fm2) / (12 * h);
    if (order == 2) {
        const double f0 = detail::checked_eval(f, r);
        return (-f2 + 16 * f1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
    }
    throw std::invalid_argument("central_derivative: order must be 1 or 2");
}

namespace detail {

inline double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double fa, double fm, double fb,
                               double whole, double tol, int depth, bool& ok) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = checked_eval(f, lm);
    const double frm = checked_eval(f, rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth <= 0) {
        ok = false;
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, ok) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, ok);
}

} // namespace detail

// Adaptive Simpson with interval bisection, max depth 48. Handles a > b by
// sign convention.
inline double adaptive_quadrature(const std::function<double(double)>& f, double a,
                                  double b, double tol = 1e-10) {
    if (tol <= 0.0) throw std::invalid_argument("adaptive_quadrature: tol must be > 0");
    if (a == b) return 0.0;
    if (a > b) return -adaptive_quadrature(f, b, a, tol);
    const double fa = detail::checked_eval(f, a);
    const double fb = detail::checked_eval(f, b);
    const double m = 0.5 * (a + b);
    const double fm = detail::checked_eval(f, m);
    const double whole = detail::simpson(fa, fm, fb, a, b);
    bool ok = true;
    const double result =
        detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48, ok);
    if (!ok)
        throw accuracy_error("adaptive_quadrature: recursion depth exhausted", result);
    return result;
}

// Tabulates I(r_i) = int_0^{r_i} f. Each grid cell is integrated by composite
// Simpson on a refined subgrid; the first node is anchored by adaptive
// quadrature from 0 (which may lie outside the grid).
inline std::vector<double> cumulative_integral(const std::function<double(double)>& f,
                                               const RadialGrid& grid,
                                               double tol = 1e-10,
                                               int refine = 8) {
    std::vector<double> out(grid.count);
    out[0] = grid.r_min == 0.0 ? 0.0 : adaptive_quadrature(f, 0.0, grid.r_min, tol);
    const double h = grid.spacing();
    const int sub = 2 * refine; // even subinterval count per cell
    for (std::size_t i = 1; i < grid.count; ++i) {
        const double a = grid.node(i - 1);
        const double hh = h / sub;
        double s = detail::checked_eval(f, a) + detail::checked_eval(f, a + sub * hh);
        for (int j = 1; j < sub; ++j)
            s += (j % 2 ? 4.0 : 2.0) * detail::checked_eval(f, a + j * hh);
        out[i] = out[i - 1] + s * hh / 3.0;
    }
    return out;
}

// Linear interpolation over a tabulated cumulative integral; built once per
// grid because W(r) evaluation sits in inner loops.
class CumulativeTable {
public:
    CumulativeTable(const std::function<double(double)>& f, const RadialGrid& grid,
                    double tol = 1e-10)
        : grid_(grid), values_(cumulative_integral(f, grid, tol)) {}

    double operator()(double r) const {
        const double h = grid_.spacing();
        double t = (r - grid_.r_min) / h;
        if (t <= 0.0) return values_.front();
        if (t >= static_cast<double>(grid_.count - 1)) return values_.back();
        const auto i = static_cast<std::size_t>(t);
        const double frac = t - static_cast<double>(i);
        return values_[i] + frac * (values_[i + 1] - values_[i]);
    }

    const std::vector<double>& values() const { return values_; }
    const RadialGrid& grid() const { return grid_; }

private:
    RadialGrid grid_;
    std::vector<double> values_;
};

} // namespace pdm::calculus

#endif

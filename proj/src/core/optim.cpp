#include "tsf/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tsf::optim {

void Box::project(std::span<double> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
}

namespace {

double safe_eval(const Objective& f, std::span<const double> x, int& count) {
    ++count;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

} // namespace

Minimum nelder_mead(const Objective& f, std::vector<double> x0, const Box& box,
                    const NelderMeadOptions& options) {
    const std::size_t n = x0.size();
    box.project(x0);
    int evals = 0;

    // Standard coefficients.
    constexpr double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        auto& v = simplex[i + 1];
        const double s = options.step.empty() ? 0.05 : options.step[i];
        v[i] += s;
        if (v[i] > box.upper[i]) v[i] = x0[i] - s;
        box.project(v);
    }
    for (std::size_t i = 0; i <= n; ++i) fv[i] = safe_eval(f, simplex[i], evals);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);

    while (evals < options.max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

        double spread = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) spread = std::max(spread, std::abs(simplex[i][j] - simplex[best][j]));
        }
        if (std::isfinite(fv[worst]) && std::abs(fv[worst] - fv[best]) <= options.ftol * (1.0 + std::abs(fv[best])) &&
            spread <= options.xtol) {
            break;
        }
        if (spread <= options.xtol * 1e-3) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);
        }

        for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + reflect * (centroid[j] - simplex[worst][j]);
        box.project(xr);
        const double fr = safe_eval(f, xr, evals);

        if (fr < fv[best]) {
            for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + expand * (xr[j] - centroid[j]);
            box.project(xe);
            const double fe = safe_eval(f, xe, evals);
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            simplex[worst] = xr;
            fv[worst] = fr;
            continue;
        }

        const bool outside = fr < fv[worst];
        for (std::size_t j = 0; j < n; ++j) {
            xc[j] = outside ? centroid[j] + contract * (xr[j] - centroid[j])
                            : centroid[j] + contract * (simplex[worst][j] - centroid[j]);
        }
        box.project(xc);
        const double fc = safe_eval(f, xc, evals);
        if (fc < std::min(fr, fv[worst])) {
            simplex[worst] = xc;
            fv[worst] = fc;
            continue;
        }

        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < n; ++j) {
                simplex[i][j] = simplex[best][j] + shrink * (simplex[i][j] - simplex[best][j]);
            }
            box.project(simplex[i]);
            fv[i] = safe_eval(f, simplex[i], evals);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    return Minimum{simplex[best], fv[best], evals};
}

double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (std::abs(b - a) > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace tsf::optim

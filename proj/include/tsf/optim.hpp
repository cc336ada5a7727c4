#pragma once

#include <functional>
#include <span>
#include <vector>

namespace tsf::optim {

using Objective = std::function<double(std::span<const double>)>;

struct Box {
    std::vector<double> lower;
    std::vector<double> upper;

    /// Clamps x into the box in place.
    void project(std::span<double> x) const;
};

struct NelderMeadOptions {
    /// Initial simplex edge per coordinate (absolute units).
    std::vector<double> step;
    int max_evaluations = 2000;
    double ftol = 1e-10;
    double xtol = 1e-9;
};

struct Minimum {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
};

/// Deterministic Nelder-Mead with projection onto a box. Non-finite objective
/// values are treated as +inf. The returned value never exceeds f(x0).
Minimum nelder_mead(const Objective& f, std::vector<double> x0, const Box& box,
                    const NelderMeadOptions& options);

/// Golden-section search for the minimum of a unimodal function on [a, b].
double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

} // namespace tsf::optim

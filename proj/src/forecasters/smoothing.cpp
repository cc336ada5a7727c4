#include "tsf/forecasters.hpp"
#include "tsf/optim.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tsf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Grid 0.01, 0.03, ..., 0.99.
std::vector<double> unit_grid() {
    std::vector<double> g;
    for (int i = 0; i < 50; ++i) g.push_back(0.01 + 0.02 * i);
    return g;
}

std::vector<double> phi_grid() {
    std::vector<double> g;
    for (double v = 0.81; v < kPhiUpper + 1e-12; v += 0.02) g.push_back(v);
    return g;
}

/// One-step SSE of the recursions; stops early once it exceeds `limit`.
double smoothing_sse(std::span<const double> y, double alpha, double beta, double phi, double level,
                     double trend, bool has_trend, double limit = kInf) {
    double sse = 0.0;
    for (const double obs : y) {
        const double damped = has_trend ? phi * trend : 0.0;
        const double pred = level + damped;
        const double err = obs - pred;
        sse += err * err;
        if (sse > limit) return sse;
        const double next = alpha * obs + (1.0 - alpha) * pred;
        if (has_trend) trend = beta * (next - level) + (1.0 - beta) * damped;
        level = next;
    }
    return sse;
}

/// SSE with the initial level (and trend) set to their least-squares values.
/// The one-step predictions are affine in the initial state, so the
/// sensitivities are carried alongside the recursion and a 2x2 (or 1x1)
/// normal system is solved at the end.
struct Concentrated {
    double sse = kInf;
    double level = 0.0;
    double trend = 0.0;
};

Concentrated concentrated_sse(std::span<const double> y, double alpha, double beta, double phi, bool has_trend) {
    // State = base + l0 * dl + b0 * db, for level (L) and trend (T).
    double lb = 0.0, ll = 1.0, lt = 0.0;
    double tb = 0.0, tl = 0.0, tt = has_trend ? 1.0 : 0.0;
    double sll = 0.0, slt = 0.0, stt = 0.0, sly = 0.0, sty = 0.0, syy = 0.0;
    const double ph = has_trend ? phi : 0.0;
    for (const double obs : y) {
        const double pb = lb + ph * tb, pl = ll + ph * tl, pt = lt + ph * tt;
        const double r = obs - pb;
        sll += pl * pl;
        slt += pl * pt;
        stt += pt * pt;
        sly += pl * r;
        sty += pt * r;
        syy += r * r;
        const double nb = alpha * obs + (1.0 - alpha) * pb;
        const double nl = (1.0 - alpha) * pl;
        const double nt = (1.0 - alpha) * pt;
        if (has_trend) {
            tb = beta * (nb - lb) + (1.0 - beta) * ph * tb;
            tl = beta * (nl - ll) + (1.0 - beta) * ph * tl;
            tt = beta * (nt - lt) + (1.0 - beta) * ph * tt;
        }
        lb = nb;
        ll = nl;
        lt = nt;
    }
    Concentrated c;
    if (!has_trend) {
        if (sll <= 0.0) return c;
        c.level = sly / sll;
        c.sse = syy - c.level * sly;
    } else {
        Eigen::Matrix2d a;
        a << sll, slt, slt, stt;
        const Eigen::Vector2d rhs(sly, sty);
        const Eigen::Vector2d s = a.completeOrthogonalDecomposition().solve(rhs);
        c.level = s[0];
        c.trend = s[1];
        c.sse = syy - s.dot(rhs);
    }
    if (!std::isfinite(c.sse)) c.sse = kInf;
    c.sse = std::max(c.sse, 0.0);
    return c;
}

double mean_abs(std::span<const double> y) {
    double s = 0.0;
    for (const double v : y) s += std::abs(v);
    s /= static_cast<double>(y.size());
    return s > 0.0 ? s : 1.0;
}

} // namespace

SmoothingPath smoothing_run(std::span<const double> y, const SmoothingParams& p) {
    SmoothingPath path;
    path.level = p.initial_level;
    path.trend = p.beta ? p.initial_trend : 0.0;
    smoothing_extend(path, y, p);
    return path;
}

void smoothing_extend(SmoothingPath& path, std::span<const double> y_new, const SmoothingParams& p) {
    const bool has_trend = p.beta.has_value();
    const double beta = p.beta.value_or(0.0);
    const double phi = p.phi.value_or(1.0);
    path.fitted.reserve(path.fitted.size() + y_new.size());
    for (const double obs : y_new) {
        const double damped = has_trend ? phi * path.trend : 0.0;
        const double pred = path.level + damped;
        path.fitted.push_back(pred);
        path.sse += (obs - pred) * (obs - pred);
        const double next = p.alpha * obs + (1.0 - p.alpha) * pred;
        if (has_trend) path.trend = beta * (next - path.level) + (1.0 - beta) * damped;
        path.level = next;
    }
}

double smoothing_forecast(const SmoothingPath& path, const SmoothingParams& p, Index h) {
    if (!p.beta) return path.level;
    const double phi = p.phi.value_or(1.0);
    if (phi == 1.0) return path.level + static_cast<double>(h) * path.trend;
    // phi + phi^2 + ... + phi^h
    double factor = 0.0, power = 1.0;
    for (Index i = 0; i < h; ++i) {
        power *= phi;
        factor += power;
    }
    return path.level + factor * path.trend;
}

SmoothingParams ses_fit(std::span<const double> y, std::optional<double> alpha) {
    if (alpha) {
        if (y.empty()) series_too_short("SES", 1, 0);
        if (!(*alpha >= 0.0 && *alpha <= 1.0)) throw Error(Errc::InvalidArgument, "alpha must lie in [0, 1]");
        return SmoothingParams{*alpha, std::nullopt, std::nullopt, y[0], 0.0};
    }
    if (y.size() < 2) series_too_short("SES", 2, y.size());

    const double scale = mean_abs(y);
    std::vector<double> z(y.begin(), y.end());
    for (double& v : z) v /= scale;

    double best_alpha = 0.0, best = kInf;
    for (const double a : unit_grid()) {
        const double sse = smoothing_sse(z, a, 0.0, 1.0, z[0], 0.0, false, best);
        if (sse < best) {
            best = sse;
            best_alpha = a;
        }
    }
    if (!std::isfinite(best)) throw Error(Errc::OptimizerFailed, "SES objective is not finite on the grid");

    const optim::Objective objective = [&](std::span<const double> x) {
        return concentrated_sse(z, x[0], 0.0, 1.0, false).sse;
    };
    const auto m = optim::nelder_mead(objective, {best_alpha}, optim::Box{{0.0}, {1.0}}, {{0.05}, 2000});
    const auto c = concentrated_sse(z, m.x[0], 0.0, 1.0, false);
    return SmoothingParams{m.x[0], std::nullopt, std::nullopt, c.level * scale, 0.0};
}

SmoothingParams holt_fit(std::span<const double> y, bool damped) {
    const char* who = damped ? "Damped" : "Holt";
    if (y.size() < 3) series_too_short(who, 3, y.size());

    const double scale = mean_abs(y);
    std::vector<double> z(y.begin(), y.end());
    for (double& v : z) v /= scale;
    const double l0 = z.front();
    const double b0 = (z.back() - z.front()) / static_cast<double>(z.size() - 1);

    const std::vector<double> phis = damped ? phi_grid() : std::vector<double>{1.0};
    const auto grid = unit_grid();
    double best = kInf, ba = 0.0, bb = 0.0, bp = 1.0;
    for (const double phi : phis) {
        for (const double a : grid) {
            for (const double b : grid) {
                const double sse = smoothing_sse(z, a, b, phi, l0, b0, true, best);
                if (sse < best) {
                    best = sse;
                    ba = a;
                    bb = b;
                    bp = phi;
                }
            }
        }
    }
    if (!std::isfinite(best)) throw Error(Errc::OptimizerFailed, std::string(who) + " objective is not finite on the grid");

    double alpha = 0.0, beta = 0.0, phi = 1.0;
    if (damped) {
        const optim::Objective objective = [&](std::span<const double> x) {
            return concentrated_sse(z, x[0], x[1], x[2], true).sse;
        };
        const optim::Box box{{0.0, 0.0, kPhiLower}, {1.0, 1.0, kPhiUpper}};
        const auto m = optim::nelder_mead(objective, {ba, bb, bp}, box, {{0.05, 0.05, 0.02}, 4000});
        alpha = m.x[0];
        beta = m.x[1];
        phi = m.x[2];
    } else {
        const optim::Objective objective = [&](std::span<const double> x) {
            return concentrated_sse(z, x[0], x[1], 1.0, true).sse;
        };
        const auto m = optim::nelder_mead(objective, {ba, bb}, optim::Box{{0.0, 0.0}, {1.0, 1.0}}, {{0.05, 0.05}, 4000});
        alpha = m.x[0];
        beta = m.x[1];
    }
    const auto c = concentrated_sse(z, alpha, beta, phi, true);
    SmoothingParams out{alpha, beta, std::nullopt, c.level * scale, c.trend * scale};
    if (damped) out.phi = phi;
    return out;
}

// ---------------------------------------------------------------------------

ExponentialSmoothing::ExponentialSmoothing(Trend trend, std::optional<double> alpha)
    : trend_(trend), alpha_(alpha) {
    if (alpha_ && trend_ != Trend::None) {
        throw Error(Errc::InvalidArgument, "a fixed alpha is only supported without trend; use fix_params");
    }
}

std::string ExponentialSmoothing::name() const {
    switch (trend_) {
    case Trend::None: return "SES";
    case Trend::Additive: return "Holt";
    case Trend::Damped: return "Damped";
    }
    return "ExponentialSmoothing";
}

std::size_t ExponentialSmoothing::min_length() const {
    if (fixed_) return 1;
    if (trend_ == Trend::None) return alpha_ ? 1 : 2;
    return 3;
}

ParamMap ExponentialSmoothing::get_params() const {
    static constexpr const char* kTrendNames[] = {"none", "additive", "damped"};
    ParamMap out{{"trend", std::string(kTrendNames[static_cast<int>(trend_)])}};
    if (alpha_) out["alpha"] = *alpha_;
    else out["alpha"] = std::string("auto");
    return out;
}

void ExponentialSmoothing::set_param(const std::string& key, const ParamValue& value) {
    if (key == "alpha") {
        if (const auto* s = std::get_if<std::string>(&value); s && *s == "auto") {
            alpha_.reset();
        } else {
            const double a = param_as_double(value, key);
            if (!(a >= 0.0 && a <= 1.0)) throw Error(Errc::InvalidArgument, "alpha must lie in [0, 1]");
            alpha_ = a;
        }
    } else if (key == "trend") {
        const auto s = param_as_string(value, key);
        if (s == "none") trend_ = Trend::None;
        else if (s == "additive") trend_ = Trend::Additive;
        else if (s == "damped") trend_ = Trend::Damped;
        else throw Error(Errc::InvalidArgument, "unknown trend '" + s + "'");
    } else {
        unknown_param(key);
    }
    fixed_.reset();
    reset();
}

void ExponentialSmoothing::fix_params(const SmoothingParams& params) {
    fixed_ = params;
    reset();
}

const SmoothingParams& ExponentialSmoothing::params() const {
    require_fitted();
    return params_;
}

double ExponentialSmoothing::level() const {
    require_fitted();
    return path_.level;
}

void ExponentialSmoothing::do_fit(const TimeSeries& y, const std::optional<ForecastingHorizon>&) {
    if (fixed_) params_ = *fixed_;
    else if (trend_ == Trend::None) params_ = ses_fit(y.view(), alpha_);
    else params_ = holt_fit(y.view(), trend_ == Trend::Damped);
    path_ = smoothing_run(y.view(), params_);
}

std::vector<double> ExponentialSmoothing::do_predict(std::span<const Index> positions) const {
    const TimeSeries& y = observed();
    std::vector<double> out;
    out.reserve(positions.size());
    for (const Index t : positions) {
        if (t > y.end()) {
            out.push_back(smoothing_forecast(path_, params_, t - y.end()));
        } else {
            if (t < y.start()) unsupported_in_sample(t);
            out.push_back(path_.fitted[static_cast<std::size_t>(t - y.start())]);
        }
    }
    return out;
}

void ExponentialSmoothing::do_update(const TimeSeries& y_new) {
    smoothing_extend(path_, y_new.view(), params_);
}

FittedParams ExponentialSmoothing::do_fitted_params() const {
    FittedParams out{{"alpha", params_.alpha}, {"level", path_.level}};
    if (params_.beta) {
        out["beta"] = *params_.beta;
        out["trend"] = path_.trend;
        out["initial_level"] = params_.initial_level;
        out["initial_trend"] = params_.initial_trend;
    }
    if (params_.phi) out["phi"] = *params_.phi;
    return out;
}

} // namespace tsf

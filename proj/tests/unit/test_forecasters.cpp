#include "doctest.h"

#include "tsf/forecasters.hpp"
#include "tsf/select.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace tsf;

namespace {

std::vector<double> noisy_trend(std::size_t n, double level, double slope, double noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> e(0.0, noise);
    std::vector<double> y(n);
    for (std::size_t t = 0; t < n; ++t) y[t] = level + slope * static_cast<double>(t) + e(rng);
    return y;
}

// Reference recursions written out directly, independent of the library.
struct Ref {
    std::vector<double> fitted;
    double level = 0, trend = 0, sse = 0;
};

Ref reference_smoothing(const std::vector<double>& y, double a, double b, double phi, double l0, double b0, bool trend) {
    Ref r;
    double l = l0, tr = trend ? b0 : 0.0;
    for (const double v : y) {
        const double f = trend ? l + phi * tr : l;
        r.fitted.push_back(f);
        r.sse += (v - f) * (v - f);
        const double ln = a * v + (1 - a) * f;
        if (trend) tr = b * (ln - l) + (1 - b) * phi * tr;
        l = ln;
    }
    r.level = l;
    r.trend = tr;
    return r;
}

// For fixed smoothing weights, one-step fitted values are linear in the
// initial state, so the SSE-optimal initial state solves a least-squares
// problem. Minimizing that over a dense weight grid gives an oracle bound.
double oracle_min_sse(const std::vector<double>& y, bool trend, const std::vector<double>& phis, double step) {
    double best = INFINITY;
    const auto n = static_cast<Eigen::Index>(y.size());
    for (const double phi : phis) {
        for (double a = 0.0; a <= 1.0 + 1e-12; a += step) {
            for (double b = 0.0; b <= (trend ? 1.0 + 1e-12 : 0.0); b += step) {
                // Columns: response to l0 = 1, response to b0 = 1, and to y with zero state.
                const auto base = reference_smoothing(y, a, b, phi, 0.0, 0.0, trend);
                const auto dl = reference_smoothing(y, a, b, phi, 1.0, 0.0, trend);
                Eigen::MatrixXd A(n, trend ? 2 : 1);
                Eigen::VectorXd rhs(n);
                for (Eigen::Index t = 0; t < n; ++t) {
                    A(t, 0) = dl.fitted[t] - base.fitted[t];
                    rhs[t] = y[t] - base.fitted[t];
                }
                if (trend) {
                    const auto db = reference_smoothing(y, a, b, phi, 0.0, 1.0, trend);
                    for (Eigen::Index t = 0; t < n; ++t) A(t, 1) = db.fitted[t] - base.fitted[t];
                }
                const Eigen::VectorXd s = A.completeOrthogonalDecomposition().solve(rhs);
                const double sse = (A * s - rhs).squaredNorm();
                best = std::min(best, sse);
            }
        }
    }
    return best;
}

} // namespace

TEST_CASE("naive last value") {
    NaiveForecaster f;
    f.fit(TimeSeries({3, 1, 4, 1, 5}));
    CHECK(f.predict(ForecastingHorizon::ahead(3)).values == std::vector<double>{5, 5, 5});
    CHECK(f.get_fitted_params().at("last") == 5);
}

TEST_CASE("seasonal naive repeats the last season") {
    NaiveForecaster f(NaiveStrategy::SeasonalLast, 4);
    f.fit(TimeSeries({1, 2, 3, 4, 5, 6, 7, 8}));
    CHECK(f.predict(ForecastingHorizon::ahead(6)).values == std::vector<double>{5, 6, 7, 8, 5, 6});
    CHECK(f.predict({9}).values == std::vector<double>{5});
    CHECK(f.get_fitted_params().at("last_season_0") == 5);
    // Needs a full season.
    CHECK_THROWS_AS(f.fit(TimeSeries({1, 2, 3})), Error);
}

TEST_CASE("seasonal naive with sp = 1 equals naive") {
    NaiveForecaster a(NaiveStrategy::SeasonalLast, 1), b;
    const TimeSeries y({2, 7, 1, 8});
    a.fit(y);
    b.fit(y);
    CHECK(a.predict(ForecastingHorizon::ahead(4)).values == b.predict(ForecastingHorizon::ahead(4)).values);
}

TEST_CASE("naive_forecast helper") {
    const TimeSeries y({1, 2, 3, 4, 5, 6}, 0, 3);
    CHECK(naive_forecast(y, NaiveStrategy::SeasonalLast, 3, ForecastingHorizon::ahead(4)) == std::vector<double>{4, 5, 6, 4});
}

TEST_CASE("SES with fixed alpha follows the level recursion") {
    const std::vector<double> y{10, 12, 11, 13, 12, 14};
    ExponentialSmoothing f(ExponentialSmoothing::Trend::None, 0.3);
    f.fit(TimeSeries(y));
    double l = y[0];
    for (std::size_t t = 0; t < y.size(); ++t) l = 0.3 * y[t] + 0.7 * l;
    CHECK(f.predict({1, 5}).values[0] == doctest::Approx(l).epsilon(1e-14));
    CHECK(f.predict({1, 5}).values[1] == doctest::Approx(l).epsilon(1e-14));
    CHECK(f.level() == doctest::Approx(l));
}

TEST_CASE("SES alpha = 1 is the naive forecast") {
    ExponentialSmoothing f(ExponentialSmoothing::Trend::None, 1.0);
    f.fit(TimeSeries({4, 9, 2}));
    CHECK(f.predict({1}).values[0] == doctest::Approx(2.0));
}

TEST_CASE("SES optimum is at least as good as a dense oracle search") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto y = noisy_trend(40, 50.0, 0.0, 3.0, seed);
        ExponentialSmoothing f;
        f.fit(TimeSeries(y));
        const auto& p = f.params();
        const auto ref = reference_smoothing(y, p.alpha, 0, 1, p.initial_level, 0, false);
        const double oracle = oracle_min_sse(y, false, {1.0}, 0.001);
        CHECK(ref.sse <= oracle * (1 + 1e-6));
        CHECK(f.level() == doctest::Approx(ref.level).epsilon(1e-12));
        CHECK(p.alpha >= 0.0);
        CHECK(p.alpha <= 1.0);
    }
}

TEST_CASE("Holt optimum is at least as good as a grid oracle") {
    for (std::uint64_t seed = 11; seed <= 13; ++seed) {
        const auto y = noisy_trend(30, 20.0, 1.5, 2.0, seed);
        ExponentialSmoothing f(ExponentialSmoothing::Trend::Additive);
        f.fit(TimeSeries(y));
        const auto& p = f.params();
        const auto ref = reference_smoothing(y, p.alpha, *p.beta, 1.0, p.initial_level, p.initial_trend, true);
        const double oracle = oracle_min_sse(y, true, {1.0}, 0.05);
        CHECK(ref.sse <= oracle * (1 + 1e-6));
        const auto fc = f.predict({1, 4}).values;
        CHECK(fc[0] == doctest::Approx(ref.level + ref.trend).epsilon(1e-10));
        CHECK(fc[1] == doctest::Approx(ref.level + 4 * ref.trend).epsilon(1e-10));
    }
}

TEST_CASE("damped trend respects phi bounds and beats a grid oracle") {
    const auto y = noisy_trend(36, 30.0, 0.8, 1.5, 99);
    ExponentialSmoothing f(ExponentialSmoothing::Trend::Damped);
    f.fit(TimeSeries(y));
    const auto& p = f.params();
    REQUIRE(p.phi.has_value());
    CHECK(*p.phi >= kPhiLower);
    CHECK(*p.phi <= kPhiUpper);
    const auto ref = reference_smoothing(y, p.alpha, *p.beta, *p.phi, p.initial_level, p.initial_trend, true);
    const double oracle = oracle_min_sse(y, true, {0.8, 0.85, 0.9, 0.95, 0.98}, 0.05);
    CHECK(ref.sse <= oracle * (1 + 1e-6));
    // h-step forecast: level + (phi + ... + phi^h) * trend
    const double phi = *p.phi;
    const double h3 = ref.level + (phi + phi * phi + phi * phi * phi) * ref.trend;
    CHECK(f.predict({3}).values[0] == doctest::Approx(h3).epsilon(1e-10));
    const auto fp = f.get_fitted_params();
    CHECK(fp.count("phi") == 1);
    CHECK(fp.count("beta") == 1);
}

TEST_CASE("Holt reproduces an exact line") {
    std::vector<double> y;
    for (int t = 0; t < 20; ++t) y.push_back(5.0 + 2.0 * t);
    ExponentialSmoothing f(ExponentialSmoothing::Trend::Additive);
    f.fit(TimeSeries(y));
    const auto fc = f.predict(ForecastingHorizon::ahead(3)).values;
    CHECK(fc[0] == doctest::Approx(45.0).epsilon(1e-6));
    CHECK(fc[2] == doctest::Approx(49.0).epsilon(1e-6));
}

TEST_CASE("smoothing update extends the state") {
    const auto y = noisy_trend(30, 10.0, 0.0, 1.0, 5);
    ExponentialSmoothing a, b;
    a.fit(TimeSeries(std::vector<double>(y.begin(), y.begin() + 20)));
    a.update(TimeSeries(std::vector<double>(y.begin() + 20, y.end()), 20));
    const auto p = a.params();
    b.fix_params(p);
    b.fit(TimeSeries(y));
    CHECK(a.predict({1}).values[0] == doctest::Approx(b.predict({1}).values[0]).epsilon(1e-12));
    // In-sample predictions are one-step fitted values.
    const auto ref = reference_smoothing(y, p.alpha, 0, 1, p.initial_level, 0, false);
    CHECK(a.predict({-5}).values[0] == doctest::Approx(ref.fitted[24]).epsilon(1e-12));
}

TEST_CASE("smoothing parameters") {
    ExponentialSmoothing f;
    CHECK(std::get<std::string>(f.get_params().at("alpha")) == "auto");
    f.set_param("alpha", 0.4);
    CHECK(std::get<double>(f.get_params().at("alpha")) == 0.4);
    CHECK_THROWS_AS(f.set_param("alpha", 1.5), Error);
    f.set_param("trend", std::string("damped"));
    CHECK(f.name() == "Damped");
}

TEST_CASE("polynomial trend matches closed-form simple regression") {
    const std::vector<double> y{2.0, 4.5, 5.5, 8.0, 9.5, 12.5};
    const auto n = static_cast<double>(y.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double t = static_cast<double>(i);
        st += t;
        sy += y[i];
        stt += t * t;
        sty += t * y[i];
    }
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    const double intercept = (sy - slope * st) / n;
    const auto c = polynomial_trend(y, 1);
    CHECK(c[0] == doctest::Approx(intercept).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(slope).epsilon(1e-12));

    PolynomialTrendForecaster f(1);
    f.fit(TimeSeries(y, 100));
    CHECK(f.predict({2}).values[0] == doctest::Approx(intercept + slope * 7).epsilon(1e-12));
    CHECK(f.get_fitted_params().at("coef_1") == doctest::Approx(slope));
}

TEST_CASE("quadratic trend extrapolates an exact quadratic") {
    std::vector<double> y;
    for (int t = 0; t < 12; ++t) y.push_back(1.0 - 0.5 * t + 0.25 * t * t);
    PolynomialTrendForecaster f(2);
    f.fit(TimeSeries(y));
    CHECK(f.predict({3}).values[0] == doctest::Approx(1.0 - 0.5 * 14 + 0.25 * 196).epsilon(1e-9));
    // In-sample values lie on the curve too.
    CHECK(f.predict({-4}).values[0] == doctest::Approx(y[7]).epsilon(1e-9));
}

TEST_CASE("theta combines the linear trend and SES on theta line 2") {
    const auto y = noisy_trend(40, 100.0, 1.2, 4.0, 21);
    ThetaForecaster f;
    f.fit(TimeSeries(y));
    const auto fp = f.get_fitted_params();
    CHECK(fp.at("theta1") == 0.0);
    CHECK(fp.at("theta2") == 2.0);

    // Oracle: OLS line, theta line 2 = 2y - line, SES recursion from the
    // fitted alpha and initial level must land on the reported level.
    const auto c = polynomial_trend(y, 1);
    CHECK(fp.at("intercept") == doctest::Approx(c[0]).epsilon(1e-12));
    CHECK(fp.at("slope") == doctest::Approx(c[1]).epsilon(1e-12));
    std::vector<double> z;
    for (std::size_t t = 0; t < y.size(); ++t) z.push_back(2 * y[t] - (c[0] + c[1] * static_cast<double>(t)));
    const auto sp = ses_fit(z);
    CHECK(sp.alpha == doctest::Approx(fp.at("alpha")).epsilon(1e-12));
    const double level = reference_smoothing(z, sp.alpha, 0, 1, sp.initial_level, 0, false).level;
    CHECK(fp.at("level") == doctest::Approx(level).epsilon(1e-10));

    for (const Index h : {1, 10, 48}) {
        const double expected = 0.5 * (c[0] + c[1] * static_cast<double>(39 + h)) + 0.5 * level;
        CHECK(f.predict({h}).values[0] == doctest::Approx(expected).epsilon(1e-10));
    }
    CHECK(theta_forecast(TimeSeries(y), {5}) == f.predict({5}).values);
}

TEST_CASE("theta on an exact line continues the line") {
    std::vector<double> y;
    for (int t = 0; t < 15; ++t) y.push_back(3.0 + 0.5 * t);
    ThetaForecaster f;
    f.fit(TimeSeries(y));
    // Theta line 2 equals the series itself, and SES lags a rising line, so
    // the combination sits between the SES level and the trend extrapolation.
    const double trend_h1 = 3.0 + 0.5 * 15;
    const double fc = f.predict({1}).values[0];
    CHECK(fc <= trend_h1 + 1e-9);
    CHECK(fc >= 0.5 * trend_h1 + 0.5 * y.front());
}

TEST_CASE("theta update keeps trend coefficients") {
    const auto y = noisy_trend(50, 40.0, 0.5, 2.0, 3);
    ThetaForecaster a;
    a.fit(TimeSeries(std::vector<double>(y.begin(), y.begin() + 40)));
    const auto before = a.get_fitted_params();
    a.update(TimeSeries(std::vector<double>(y.begin() + 40, y.end()), 40));
    const auto after = a.get_fitted_params();
    CHECK(after.at("slope") == before.at("slope"));
    CHECK(after.at("alpha") == before.at("alpha"));
    CHECK(after.at("level") != before.at("level"));
    CHECK(*a.cutoff() == 49);
}

TEST_CASE("documented small examples") {
    NaiveForecaster naive;
    naive.fit(TimeSeries({2, 5, 9}));
    CHECK(*naive.cutoff() == 2);
    CHECK(naive.predict(ForecastingHorizon::ahead(3)).values == std::vector<double>{9, 9, 9});
    CHECK(naive_forecast(TimeSeries({2, 5, 9}), NaiveStrategy::Last, 1, {1, 5}) == std::vector<double>{9, 9});
    naive.update(TimeSeries({4}, 3));
    CHECK(naive.predict({1}).values == std::vector<double>{4});

    NaiveForecaster snaive(NaiveStrategy::SeasonalLast, 2);
    snaive.fit(TimeSeries({1, 2, 3, 4}));
    CHECK(snaive.predict(ForecastingHorizon::ahead(3)).values == std::vector<double>{3, 4, 3});
    CHECK(naive_forecast(TimeSeries({1, 2, 3, 4}), NaiveStrategy::SeasonalLast, 2, ForecastingHorizon::ahead(4)) ==
          std::vector<double>{3, 4, 3, 4});
    CHECK_THROWS_AS(naive_forecast(TimeSeries({1}), NaiveStrategy::SeasonalLast, 4, {1}), Error);

    // Two-step hand recursion from l0 = 3 with alpha 0.5.
    const auto p = ses_fit(std::vector<double>{3, 5}, 0.5);
    CHECK(p.initial_level == 3.0);
    const auto path = smoothing_run(std::vector<double>{3, 5}, p);
    CHECK(path.fitted == std::vector<double>{3, 3});
    CHECK(path.level == 4.0);

    ExponentialSmoothing ses(ExponentialSmoothing::Trend::None, 0.5);
    ses.fit(TimeSeries({3, 5}));
    const double l = ses.level();
    ses.update(TimeSeries({10}, 2));
    CHECK(ses.level() == doctest::Approx(0.5 * 10 + 0.5 * l));

    ExponentialSmoothing holt(ExponentialSmoothing::Trend::Additive);
    CHECK_THROWS_AS(holt.fit(TimeSeries({1.0})), Error);

    std::vector<double> line;
    for (int t = 0; t < 10; ++t) line.push_back(2.0 * t + 1.0);
    PolynomialTrendForecaster pt(1);
    pt.fit(TimeSeries(line));
    CHECK(pt.predict({1, 2}).values[0] == doctest::Approx(21.0).epsilon(1e-10));
    CHECK(pt.predict({1, 2}).values[1] == doctest::Approx(23.0).epsilon(1e-10));
    CHECK(pt.get_fitted_params().at("coef_0") == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(pt.get_fitted_params().at("coef_1") == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(polynomial_trend(std::vector<double>{1, 2, 3}, 0)[0] == doctest::Approx(2.0));
    PolynomialTrendForecaster quad(2);
    CHECK_THROWS_AS(quad.fit(TimeSeries({1, 2})), Error);

    ExponentialSmoothing holt_line(ExponentialSmoothing::Trend::Additive);
    holt_line.fit(TimeSeries(line));
    CHECK(holt_line.predict({1}).values[0] == doctest::Approx(21.0).epsilon(1e-4));
    CHECK(holt_line.predict({5}).values[0] == doctest::Approx(29.0).epsilon(1e-4));

    ThetaForecaster theta;
    theta.fit(TimeSeries(line));
    // SES on theta line 2 (the line itself) tracks the last value, so the
    // combination drifts at half the slope: 0.5 * (2(9+h)+1) + 0.5 * 19.
    CHECK(theta.predict({1}).values[0] == doctest::Approx(20.0).epsilon(1e-3));
    CHECK(theta.predict({3}).values[0] == doctest::Approx(22.0).epsilon(1e-3));
}

TEST_CASE("constant series") {
    const TimeSeries c(std::vector<double>(12, 5.0));
    for (const auto trend : {ExponentialSmoothing::Trend::None, ExponentialSmoothing::Trend::Additive,
                             ExponentialSmoothing::Trend::Damped}) {
        ExponentialSmoothing f(trend);
        f.fit(c);
        CHECK(f.get_fitted_params().at("level") == doctest::Approx(5.0).epsilon(1e-9));
        for (const double v : f.predict(ForecastingHorizon::ahead(6)).values) CHECK(v == doctest::Approx(5.0).epsilon(1e-6));
        if (trend != ExponentialSmoothing::Trend::None) CHECK(std::abs(f.get_fitted_params().at("trend")) < 1e-6);
    }
    for (const double a : {0.0, 0.3, 1.0}) {
        ExponentialSmoothing f(ExponentialSmoothing::Trend::None, a);
        f.fit(c);
        CHECK(f.predict({4}).values[0] == 5.0);
    }
    ThetaForecaster theta;
    theta.fit(c);
    for (const double v : theta.predict(ForecastingHorizon::ahead(5)).values) CHECK(v == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("damped with phi = 1 equals Holt") {
    const auto y = noisy_trend(25, 10.0, 0.7, 1.0, 8);
    SmoothingParams p{0.4, 0.2, std::nullopt, 9.5, 0.6};
    SmoothingParams q = p;
    q.phi = 1.0;
    const auto a = smoothing_run(y, p);
    const auto b = smoothing_run(y, q);
    for (const Index h : {1, 2, 7}) CHECK(smoothing_forecast(a, p, h) == doctest::Approx(smoothing_forecast(b, q, h)).epsilon(1e-14));
}

TEST_CASE("trend forecasts: Holt is affine in h, damped converges monotonically") {
    const auto y = noisy_trend(40, 20.0, 0.9, 1.0, 17);
    ExponentialSmoothing holt(ExponentialSmoothing::Trend::Additive);
    holt.fit(TimeSeries(y));
    const auto h = holt.predict(ForecastingHorizon::ahead(10)).values;
    for (std::size_t i = 2; i < h.size(); ++i) CHECK(h[i] - h[i - 1] == doctest::Approx(h[1] - h[0]).epsilon(1e-9));

    ExponentialSmoothing damped(ExponentialSmoothing::Trend::Damped);
    damped.fit(TimeSeries(y));
    const auto fp = damped.get_fitted_params();
    const double phi = fp.at("phi");
    const double limit = fp.at("level") + fp.at("trend") * phi / (1 - phi);
    const auto d = damped.predict(ForecastingHorizon::ahead(2000)).values;
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(std::abs(limit - d[i]) <= std::abs(limit - d[i - 1]) + 1e-12);
    CHECK(d.back() == doctest::Approx(limit).epsilon(1e-6));
}

TEST_CASE("empty update leaves smoothing forecasts unchanged") {
    const auto y = noisy_trend(20, 5.0, 0.3, 0.5, 2);
    for (const auto trend : {ExponentialSmoothing::Trend::None, ExponentialSmoothing::Trend::Additive,
                             ExponentialSmoothing::Trend::Damped}) {
        ExponentialSmoothing f(trend);
        f.fit(TimeSeries(y));
        const auto before = f.predict(ForecastingHorizon::ahead(4)).values;
        f.update(TimeSeries({}, 20));
        CHECK(f.predict(ForecastingHorizon::ahead(4)).values == before);
    }
}

TEST_CASE("SES update_predict with and without refitting") {
    const auto y = noisy_trend(30, 5.0, 0.0, 0.5, 4);
    for (const bool refit : {false, true}) {
        ExponentialSmoothing f;
        f.fit(TimeSeries(std::vector<double>(y.begin(), y.begin() + 20)));
        const TimeSeries test(std::vector<double>(y.begin() + 20, y.end()), 20);
        const auto out = f.update_predict(test, Splitter(1, ForecastingHorizon::ahead(1), 1, SplitMode::Sliding, false), refit);
        CHECK(out.size() == 10);
        for (const auto& [cutoff, fc] : out) {
            REQUIRE(fc.values.size() == 1);
            CHECK(std::isfinite(fc.values[0]));
        }
    }
}

#include "doctest.h"

#include "tsf/compose.hpp"
#include "tsf/forecasters.hpp"

#include "support/synthetic.hpp"

#include <random>

using namespace tsf;

namespace {

TransformedTargetForecaster::Step step(std::string name, TransformerPtr t) { return {std::move(name), std::move(t)}; }

std::vector<double> iota_series(std::size_t n, double first) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = first + static_cast<double>(i);
    return y;
}

} // namespace

TEST_CASE("tabularize windows oldest first") {
    const std::vector<double> y{1, 2, 3, 4, 5};
    const auto t = tabularize(y, 2);
    REQUIRE(t.X.rows() == 3);
    REQUIRE(t.X.cols() == 2);
    Eigen::MatrixXd expected(3, 2);
    expected << 1, 2, 2, 3, 3, 4;
    CHECK(t.X == expected);
    CHECK(t.targets == Eigen::Vector3d(3, 4, 5));
    CHECK(tabularize(y, 4).X.rows() == 1);
    CHECK_THROWS_AS(tabularize(y, 5), Error);
    CHECK_THROWS_AS(tabularize(y, 0), Error);
}

TEST_CASE("tabularize then reconstruct reproduces the series") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.0);
    for (std::size_t len = 2; len < 40; len += 3) {
        std::vector<double> y(len);
        for (double& v : y) v = n(rng);
        for (std::size_t w = 1; w < len; w += 2) {
            const auto t = tabularize(y, w);
            std::vector<double> rebuilt;
            for (Eigen::Index j = 0; j < t.X.cols(); ++j) rebuilt.push_back(t.X(0, j));
            for (Eigen::Index i = 0; i < t.targets.size(); ++i) rebuilt.push_back(t.targets[i]);
            CHECK(rebuilt == y);
            // Every row is the window ending just before its target.
            for (Eigen::Index i = 0; i < t.X.rows(); ++i) CHECK(t.X(i, t.X.cols() - 1) == y[static_cast<std::size_t>(i) + w - 1]);
        }
    }
}

TEST_CASE("recursive reduction with OLS continues a line") {
    ReducedRegressionForecaster f(std::make_unique<LinearRegression>(), 2);
    f.fit(TimeSeries(iota_series(20, 1.0)));
    const auto fc = f.predict(ForecastingHorizon::ahead(3)).values;
    CHECK(fc[0] == doctest::Approx(21.0).epsilon(1e-6));
    CHECK(fc[1] == doctest::Approx(22.0).epsilon(1e-6));
    CHECK(fc[2] == doctest::Approx(23.0).epsilon(1e-6));

    // Pseudoinverse oracle on the augmented design gives the same one-step value.
    const auto t = tabularize(iota_series(20, 1.0), 2);
    Eigen::MatrixXd A(t.X.rows(), 3);
    A << Eigen::VectorXd::Ones(t.X.rows()), t.X;
    const Eigen::VectorXd beta = A.completeOrthogonalDecomposition().pseudoInverse() * t.targets;
    CHECK(fc[0] == doctest::Approx(beta[0] + 19 * beta[1] + 20 * beta[2]).epsilon(1e-9));
}

TEST_CASE("recursive reduction with 1-NN") {
    ReducedRegressionForecaster f(std::make_unique<KNeighborsRegressor>(1), 2);
    f.fit(TimeSeries({1, 2, 3, 4}));
    // Rows (1,2)->3 and (2,3)->4; query (3,4) is nearest to (2,3).
    CHECK(f.predict({1}).values == std::vector<double>{4});
    // Second step feeds 4 back: query (4,4), nearest (2,3) again.
    CHECK(f.predict({2}).values == std::vector<double>{4});
}

TEST_CASE("recursive reduction reproduces a noiseless AR(2) continuation") {
    std::vector<double> y{1.0, 0.5};
    for (int t = 2; t < 40; ++t) y.push_back(0.6 * y[t - 1] - 0.3 * y[t - 2] + 2.0);
    ReducedRegressionForecaster f(std::make_unique<LinearRegression>(), 2);
    f.fit(TimeSeries(y));
    const auto fc = f.predict(ForecastingHorizon::ahead(5)).values;
    std::vector<double> truth = y;
    for (int h = 0; h < 5; ++h) {
        const auto n = truth.size();
        truth.push_back(0.6 * truth[n - 1] - 0.3 * truth[n - 2] + 2.0);
        CHECK(fc[static_cast<std::size_t>(h)] == doctest::Approx(truth.back()).epsilon(1e-9));
    }
}

TEST_CASE("reduction: constant series, sparse horizon, in-sample") {
    ReducedRegressionForecaster f(std::make_unique<KNeighborsRegressor>(1), 3);
    f.fit(TimeSeries(std::vector<double>(10, 4.0)));
    CHECK(f.predict({2, 5}).values == std::vector<double>{4.0, 4.0});

    ReducedRegressionForecaster lin(std::make_unique<LinearRegression>(), 2);
    lin.fit(TimeSeries(iota_series(10, 0.0), 100));
    // In-sample at position 105 uses the window (103, 104) -> value 5.
    CHECK(lin.predict({-4}).values[0] == doctest::Approx(5.0).epsilon(1e-9));
    CHECK_THROWS_AS(lin.predict({-8}), Error);
    CHECK(lin.min_length() == 3);
    CHECK(lin.get_fitted_params().count("regressor.coef_1") == 1);
}

TEST_CASE("reduction parameters and strategies") {
    ReducedRegressionForecaster f(std::make_unique<KNeighborsRegressor>(1), 3);
    const auto p = f.get_params();
    CHECK(std::get<std::int64_t>(p.at("window_length")) == 3);
    CHECK(std::get<std::int64_t>(p.at("regressor.k")) == 1);
    f.set_param("regressor.k", std::int64_t{2});
    CHECK(std::get<std::int64_t>(f.get_params().at("regressor.k")) == 2);
    CHECK_THROWS_AS(f.set_param("regressor.bogus", 1.0), Error);
    CHECK_THROWS_AS(f.set_param("bogus", 1.0), Error);
    f.set_param("strategy", std::string("direct"));
    try {
        f.fit(TimeSeries(iota_series(10, 0.0)));
        FAIL("direct strategy should not fit");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Unimplemented);
    }
    CHECK_THROWS_AS(f.fit(TimeSeries({1.0, 2.0})), Error);
}

TEST_CASE("pipeline: deseasonalize + naive equals a direct Naive2") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto y = testing::seasonal_series(60 + seed, 12, seed, 0.02);
        std::vector<TransformedTargetForecaster::Step> steps;
        steps.push_back(step("deseasonalize", std::make_unique<Deseasonalizer>(12)));
        TransformedTargetForecaster pipe(std::move(steps), std::make_unique<NaiveForecaster>());
        pipe.fit(TimeSeries(y, 0, 12));
        const auto fc = pipe.predict(ForecastingHorizon::ahead(18)).values;

        const bool seasonal = seasonality_test(y, 12);
        const auto idx = seasonal ? classical_decompose(y, 12) : std::vector<double>(12, 1.0);
        const std::size_t T = y.size() - 1;
        const double base = y[T] / idx[T % 12];
        for (std::size_t h = 1; h <= 18; ++h) CHECK(fc[h - 1] == doctest::Approx(base * idx[(T + h) % 12]).epsilon(1e-12));
    }
}

TEST_CASE("pipeline with no transformers is the bare forecaster") {
    const auto y = testing::seasonal_series(30, 1, 3, 0.1);
    TransformedTargetForecaster pipe({}, std::make_unique<ExponentialSmoothing>());
    ExponentialSmoothing bare;
    pipe.fit(TimeSeries(y));
    bare.fit(TimeSeries(y));
    CHECK(pipe.predict(ForecastingHorizon::ahead(5)).values == bare.predict(ForecastingHorizon::ahead(5)).values);
}

TEST_CASE("pipeline: standardize + linear trend continues a line") {
    std::vector<double> y;
    for (int t = 0; t < 15; ++t) y.push_back(-3.0 + 0.7 * t);
    std::vector<TransformedTargetForecaster::Step> steps;
    steps.push_back(step("standardize", std::make_unique<Standardizer>()));
    TransformedTargetForecaster pipe(std::move(steps), std::make_unique<PolynomialTrendForecaster>(1));
    pipe.fit(TimeSeries(y));
    const auto fc = pipe.predict({1, 4}).values;
    CHECK(fc[0] == doctest::Approx(-3.0 + 0.7 * 15).epsilon(1e-8));
    CHECK(fc[1] == doctest::Approx(-3.0 + 0.7 * 18).epsilon(1e-8));
}

TEST_CASE("pipeline prediction is the manual inverse chain") {
    const auto y = testing::seasonal_series(48, 4, 12, 0.05);
    const TimeSeries ts(y, 0, 4);
    auto make_steps = [] {
        std::vector<TransformedTargetForecaster::Step> s;
        s.push_back(step("deseasonalize", std::make_unique<Deseasonalizer>(4)));
        s.push_back(step("boxcox", std::make_unique<BoxCoxTransformer>()));
        s.push_back(step("detrend", std::make_unique<Detrender>(std::make_unique<PolynomialTrendForecaster>(1))));
        s.push_back(step("standardize", std::make_unique<Standardizer>()));
        return s;
    };
    TransformedTargetForecaster pipe(make_steps(), std::make_unique<ReducedRegressionForecaster>(std::make_unique<LinearRegression>(), 4));
    pipe.fit(ts);
    const auto fh = ForecastingHorizon::ahead(6);
    const auto fc = pipe.predict(fh).values;

    // Manual composition with independent objects.
    auto steps = make_steps();
    TimeSeries z = ts;
    for (auto& [name, t] : steps) {
        t->fit(z);
        z = t->transform(z);
    }
    ReducedRegressionForecaster f(std::make_unique<LinearRegression>(), 4);
    f.fit(z);
    std::vector<double> out = f.predict(fh).values;
    const auto pos = fh.to_absolute(ts.end());
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) out = it->second->inverse_transform(pos, out);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(fc[i] == doctest::Approx(out[i]).epsilon(1e-12));
}

TEST_CASE("pipeline parameters and update") {
    std::vector<TransformedTargetForecaster::Step> steps;
    steps.push_back(step("deseasonalize", std::make_unique<Deseasonalizer>(4)));
    steps.push_back(step("detrend", std::make_unique<Detrender>(std::make_unique<PolynomialTrendForecaster>(1))));
    TransformedTargetForecaster pipe(std::move(steps), std::make_unique<ReducedRegressionForecaster>(std::make_unique<LinearRegression>(), 3));
    const auto p = pipe.get_params();
    CHECK(std::get<std::int64_t>(p.at("deseasonalize.sp")) == 4);
    CHECK(std::get<std::int64_t>(p.at("detrend.forecaster.degree")) == 1);
    CHECK(std::get<std::int64_t>(p.at("forecast.window_length")) == 3);
    pipe.set_param("forecast.window_length", std::int64_t{5});
    CHECK(std::get<std::int64_t>(pipe.get_params().at("forecast.window_length")) == 5);
    CHECK_THROWS_AS(pipe.set_param("nothing.x", 1.0), Error);

    const auto y = testing::seasonal_series(50, 4, 2, 0.05);
    pipe.fit(TimeSeries(std::vector<double>(y.begin(), y.begin() + 40), 0, 4));
    pipe.update(TimeSeries(std::vector<double>(y.begin() + 40, y.end()), 40, 4));
    CHECK(*pipe.cutoff() == 49);
    CHECK(pipe.predict(ForecastingHorizon::ahead(3)).values.size() == 3);
    CHECK(pipe.get_fitted_params().count("forecast.regressor.intercept") == 1);

    std::vector<TransformedTargetForecaster::Step> dup;
    dup.push_back(step("a", std::make_unique<Standardizer>()));
    dup.push_back(step("a", std::make_unique<Standardizer>()));
    CHECK_THROWS_AS(TransformedTargetForecaster(std::move(dup), std::make_unique<NaiveForecaster>()), Error);
}

TEST_CASE("ensemble mean") {
    std::vector<EnsembleForecaster::Component> c;
    c.emplace_back("naive", std::make_unique<NaiveForecaster>());
    c.emplace_back("snaive", std::make_unique<NaiveForecaster>(NaiveStrategy::SeasonalLast, 2));
    EnsembleForecaster e(std::move(c));
    e.fit(TimeSeries({1, 2, 3, 4}));
    CHECK(e.predict({1}).values == std::vector<double>{3.5});
    CHECK(std::get<std::int64_t>(e.get_params().at("snaive.sp")) == 2);
    CHECK(e.get_fitted_params().at("naive.last") == 4.0);
}

TEST_CASE("ensemble of one and permutation invariance") {
    const auto y = testing::seasonal_series(40, 1, 8, 0.1);
    std::vector<EnsembleForecaster::Component> one;
    one.emplace_back("ses", std::make_unique<ExponentialSmoothing>());
    EnsembleForecaster single(std::move(one));
    ExponentialSmoothing ses;
    single.fit(TimeSeries(y));
    ses.fit(TimeSeries(y));
    CHECK(single.predict(ForecastingHorizon::ahead(4)).values == ses.predict(ForecastingHorizon::ahead(4)).values);

    auto build = [](bool reversed) {
        std::vector<EnsembleForecaster::Component> c;
        c.emplace_back("ses", std::make_unique<ExponentialSmoothing>());
        c.emplace_back("holt", std::make_unique<ExponentialSmoothing>(ExponentialSmoothing::Trend::Additive));
        c.emplace_back("theta", std::make_unique<ThetaForecaster>());
        if (reversed) std::reverse(c.begin(), c.end());
        return EnsembleForecaster(std::move(c));
    };
    auto a = build(false), b = build(true);
    a.fit(TimeSeries(y));
    b.fit(TimeSeries(y));
    const auto pa = a.predict(ForecastingHorizon::ahead(6)).values;
    const auto pb = b.predict(ForecastingHorizon::ahead(6)).values;
    for (std::size_t i = 0; i < pa.size(); ++i) CHECK(pa[i] == doctest::Approx(pb[i]).epsilon(1e-13));

    CHECK_THROWS_AS(EnsembleForecaster({}), Error);
}

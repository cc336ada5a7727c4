#include "doctest.h"

#include "tsf/core.hpp"
#include "tsf/forecasters.hpp"
#include "tsf/optim.hpp"
#include "tsf/select.hpp"

#include <cmath>
#include <limits>

using namespace tsf;

namespace {

template <class F>
Errc error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected tsf::Error");
    return Errc::Io;
}

} // namespace

TEST_CASE("time series indexing and slicing") {
    TimeSeries y({1, 2, 3, 4, 5}, 10, 2);
    CHECK(y.size() == 5);
    CHECK(y.start() == 10);
    CHECK(y.end() == 14);
    CHECK(y.sp() == 2);
    CHECK(y.at_index(12) == 3);
    CHECK(y.contains(14));
    CHECK_FALSE(y.contains(15));
    CHECK(y.positions() == std::vector<Index>{10, 11, 12, 13, 14});

    const auto s = y.slice(1, 3);
    CHECK(s.start() == 11);
    CHECK(s.values() == std::vector<double>{2, 3, 4});
    CHECK(y.tail(2).start() == 13);
    CHECK(y.head(2).values() == std::vector<double>{1, 2});

    const auto joined = y.head(2).concat(y.slice(2, 3));
    CHECK(joined.values() == y.values());
    CHECK(joined.start() == 10);
    CHECK(error_code([&] { (void)y.head(2).concat(y.slice(3, 2)); }) == Errc::NonContiguousUpdate);
}

TEST_CASE("time series rejects non-finite values") {
    CHECK(error_code([] { TimeSeries({1.0, std::nan("")}); }) == Errc::NonFiniteInput);
    CHECK(error_code([] { TimeSeries({std::numeric_limits<double>::infinity()}); }) == Errc::NonFiniteInput);
    CHECK(TimeSeries().empty());
    CHECK(TimeSeries().end() == -1);
}

TEST_CASE("forecasting horizon") {
    const auto fh = ForecastingHorizon::ahead(3);
    CHECK(fh.steps() == std::vector<Index>{1, 2, 3});
    CHECK(fh.to_absolute(9) == std::vector<Index>{10, 11, 12});
    CHECK(fh.is_out_of_sample());
    CHECK(ForecastingHorizon({-2, -1, 1}).min_step() == -2);
    CHECK_FALSE(ForecastingHorizon({-2, -1}).is_out_of_sample());
    CHECK(error_code([] { ForecastingHorizon({1, 0, 2}); }) == Errc::InvalidArgument);
    CHECK(error_code([] { ForecastingHorizon({2, 1}); }) == Errc::InvalidArgument);
    CHECK(error_code([] { ForecastingHorizon::ahead(0); }) == Errc::InvalidArgument);
}

TEST_CASE("fit sets cutoff and observed series") {
    NaiveForecaster f;
    CHECK_FALSE(f.is_fitted());
    CHECK(error_code([&] { (void)f.predict(ForecastingHorizon::ahead(1)); }) == Errc::NotFitted);
    CHECK(error_code([&] { (void)f.get_fitted_params(); }) == Errc::NotFitted);

    f.fit(TimeSeries({1, 2, 3}, 5));
    CHECK(f.is_fitted());
    CHECK(*f.cutoff() == 7);
    CHECK(f.observed().values() == std::vector<double>{1, 2, 3});
    const auto p = f.predict({1, 3});
    CHECK(p.horizon == ForecastingHorizon({1, 3}));
    CHECK(p.values == std::vector<double>{3, 3});
}

TEST_CASE("fit validates input") {
    NaiveForecaster f;
    CHECK(error_code([&] { f.fit(TimeSeries()); }) == Errc::SeriesTooShort);
    ExponentialSmoothing holt(ExponentialSmoothing::Trend::Additive);
    CHECK(error_code([&] { holt.fit(TimeSeries({1, 2})); }) == Errc::SeriesTooShort);
}

TEST_CASE("update advances the cutoff without refitting") {
    NaiveForecaster f;
    f.fit(TimeSeries({1, 2, 3}));
    f.update(TimeSeries({7, 8}, 3));
    CHECK(*f.cutoff() == 4);
    CHECK(f.predict(ForecastingHorizon::ahead(1)).values == std::vector<double>{8});
    CHECK(error_code([&] { f.update(TimeSeries({1}, 9)); }) == Errc::NonContiguousUpdate);

    // Empty update is a no-op.
    f.update(TimeSeries({}, 5));
    CHECK(*f.cutoff() == 4);
}

TEST_CASE("update with update_params refits on all observations") {
    ExponentialSmoothing a, b;
    const std::vector<double> all{3, 5, 4, 6, 5, 7, 6, 8, 7, 9};
    a.fit(TimeSeries(std::vector<double>(all.begin(), all.begin() + 6)));
    a.update(TimeSeries(std::vector<double>(all.begin() + 6, all.end()), 6), true);
    b.fit(TimeSeries(all));
    CHECK(a.predict({1}).values == b.predict({1}).values);
    CHECK(a.params().alpha == b.params().alpha);
}

TEST_CASE("update_predict walks the test series") {
    NaiveForecaster f;
    f.fit(TimeSeries({1, 2, 3}));
    const TimeSeries y_test({4, 5, 6, 7}, 3);
    // Cutoffs before each test point; each predicts one step.
    Splitter cv(1, ForecastingHorizon::ahead(1), 1, SplitMode::Sliding, false);
    const auto out = f.update_predict(y_test, cv);
    REQUIRE(out.size() == 4);
    CHECK(out[0].first == 2);
    CHECK(out[0].second.values == std::vector<double>{3});
    CHECK(out[1].first == 3);
    CHECK(out[1].second.values == std::vector<double>{4});
    CHECK(out[2].first == 4);
    CHECK(out[2].second.values == std::vector<double>{5});
    CHECK(out[3].first == 5);
    CHECK(out[3].second.values == std::vector<double>{6});
}

TEST_CASE("parameters round-trip and reject unknown names") {
    NaiveForecaster f;
    auto params = f.get_params();
    CHECK(std::get<std::string>(params.at("strategy")) == "last");
    f.set_params({{"strategy", std::string("seasonal_last")}, {"sp", std::int64_t{4}}});
    params = f.get_params();
    CHECK(std::get<std::string>(params.at("strategy")) == "seasonal_last");
    CHECK(std::get<std::int64_t>(params.at("sp")) == 4);
    CHECK(f.name() == "sNaive");
    CHECK(error_code([&] { f.set_param("nope", true); }) == Errc::UnknownParameter);

    f.fit(TimeSeries({1, 2, 3, 4, 5}));
    f.set_param("sp", std::int64_t{2});
    CHECK_FALSE(f.is_fitted());
}

TEST_CASE("param value conversions") {
    CHECK(param_as_int(std::int64_t{3}, "x") == 3);
    CHECK(param_as_double(std::int64_t{3}, "x") == 3.0);
    CHECK(param_as_double(2.5, "x") == 2.5);
    CHECK(error_code([] { (void)param_as_int(std::string("a"), "x"); }) == Errc::InvalidArgument);
    std::string head, tail;
    CHECK(split_path("a.b.c", head, tail));
    CHECK(head == "a");
    CHECK(tail == "b.c");
    CHECK_FALSE(split_path("abc", head, tail));
    ParamMap out;
    merge_prefixed(out, "p", ParamMap{{"k", std::int64_t{1}}});
    CHECK(out.count("p.k") == 1);
}

TEST_CASE("clone copies hyper-parameters and fitted state independently") {
    NaiveForecaster f(NaiveStrategy::SeasonalLast, 2);
    f.fit(TimeSeries({1, 2, 3, 4}));
    auto g = f.clone();
    CHECK(g->predict({1, 2}).values == f.predict({1, 2}).values);
    g->update(TimeSeries({10}, 4));
    CHECK(*f.cutoff() == 3);
    CHECK(*g->cutoff() == 4);
}

TEST_CASE("in-sample prediction") {
    NaiveForecaster f;
    f.fit(TimeSeries({1, 2, 3, 4}));
    // In-sample naive predictions are the previous observation.
    CHECK(f.predict({-2, -1, 1}).values == std::vector<double>{1, 2, 4});
    CHECK(error_code([&] { (void)f.predict({-3}); }) == Errc::UnsupportedInSample);
    const std::vector<Index> cutoff_pos{3};
    CHECK(f.predict_at(cutoff_pos) == std::vector<double>{3});
}

TEST_CASE("nelder-mead minimizes a shifted quadratic and the Rosenbrock function") {
    optim::Box box{{-5, -5}, {5, 5}};
    optim::NelderMeadOptions opt{{0.5, 0.5}};
    opt.max_evaluations = 5000;
    opt.ftol = 1e-14;
    opt.xtol = 1e-12;
    auto quad = [](std::span<const double> x) { return (x[0] - 1.5) * (x[0] - 1.5) + 3.0 * (x[1] + 0.5) * (x[1] + 0.5); };
    const auto q = optim::nelder_mead(quad, {0, 0}, box, opt);
    CHECK(q.x[0] == doctest::Approx(1.5).epsilon(1e-5));
    CHECK(q.x[1] == doctest::Approx(-0.5).epsilon(1e-5));

    auto rosen = [](std::span<const double> x) {
        return 100.0 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1 - x[0]) * (1 - x[0]);
    };
    const auto r = optim::nelder_mead(rosen, {-1.2, 1.0}, box, opt);
    CHECK(r.value < 1e-8);
    CHECK(r.value <= rosen(std::vector<double>{-1.2, 1.0}));
}

TEST_CASE("nelder-mead respects the box") {
    optim::Box box{{0.0}, {1.0}};
    const auto m = optim::nelder_mead([](std::span<const double> x) { return -x[0]; }, {0.5}, box, {{0.1}});
    CHECK(m.x[0] == doctest::Approx(1.0));
    const auto nan_obj = optim::nelder_mead([](std::span<const double> x) { return x[0] > 0.6 ? std::nan("") : x[0]; },
                                            {0.5}, box, {{0.1}});
    CHECK(std::isfinite(nan_obj.value));
    CHECK(nan_obj.x[0] == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("golden section") {
    const double x = optim::golden_section_min([](double v) { return std::cos(v); }, 2.0, 4.5, 1e-12);
    CHECK(x == doctest::Approx(M_PI).epsilon(1e-8));
}

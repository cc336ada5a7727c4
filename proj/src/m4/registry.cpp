#include "tsf/m4.hpp"

#include "tsf/compose.hpp"
#include "tsf/forecasters.hpp"
#include "tsf/select.hpp"

#include <algorithm>

namespace tsf::m4 {

WindowRule parse_window_rule(const std::string& s) {
    if (s == "max") return WindowRule::Max;
    if (s == "min") return WindowRule::Min;
    throw Error(Errc::InvalidArgument, "unknown window rule '" + s + "'");
}

const std::vector<std::int64_t>& tuning_windows() {
    static const std::vector<std::int64_t> windows{3, 4, 6, 8, 10, 12, 15, 18, 21, 24};
    return windows;
}

namespace {

using Steps = std::vector<TransformedTargetForecaster::Step>;

const std::vector<std::string> kStatistical{"Naive", "sNaive", "Naive2", "SES", "Holt", "Damped", "Com", "Theta", "Theta-bc"};
const std::vector<std::string> kReductionSuffixes{"", "-s", "-t-s", "-Theta-bc", "-Theta-bc-t"};

TransformerPtr deseasonalizer(int sp, const RegistryOptions& o) { return std::make_unique<Deseasonalizer>(sp, o.seasonality); }

ForecasterPtr deseasonalized(ForecasterPtr f, int sp, const RegistryOptions& o) {
    Steps steps;
    steps.emplace_back("deseasonalize", deseasonalizer(sp, o));
    return std::make_unique<TransformedTargetForecaster>(std::move(steps), std::move(f));
}

ForecasterPtr theta_bc(int sp, const RegistryOptions& o) {
    Steps steps;
    steps.emplace_back("deseasonalize", deseasonalizer(sp, o));
    steps.emplace_back("boxcox", std::make_unique<BoxCoxTransformer>());
    return std::make_unique<TransformedTargetForecaster>(std::move(steps), std::make_unique<ThetaForecaster>());
}

ForecasterPtr smoothing(ExponentialSmoothing::Trend trend, int sp, const RegistryOptions& o) {
    return deseasonalized(std::make_unique<ExponentialSmoothing>(trend), sp, o);
}

std::size_t default_window(int sp, const RegistryOptions& o) {
    return static_cast<std::size_t>(o.window_rule == WindowRule::Max ? std::max(sp, 3) : std::min(sp, 3));
}

ForecasterPtr tuned(ForecasterPtr f, int horizon) {
    std::vector<ParamValue> windows(tuning_windows().begin(), tuning_windows().end());
    ParamGrid grid({{"forecast.window_length", windows}});
    return std::make_unique<GridSearchForecaster>(std::move(f), std::move(grid),
                                                  Splitter::single(ForecastingHorizon::ahead(horizon)));
}

ForecasterPtr reduction_model(const RegressorFactory& regressor, const std::string& variant, int sp, int horizon,
                              const RegistryOptions& o) {
    const bool boosted = variant == "-Theta-bc" || variant == "-Theta-bc-t";
    const bool seasonal = variant == "-s" || variant == "-t-s" || (boosted && o.deseasonalize_residuals);
    const bool tune = variant == "-t-s" || variant == "-Theta-bc-t";

    Steps steps;
    if (seasonal) steps.emplace_back("deseasonalize", deseasonalizer(sp, o));
    ForecasterPtr trend = boosted ? theta_bc(sp, o) : std::make_unique<PolynomialTrendForecaster>(1);
    steps.emplace_back("detrend", std::make_unique<Detrender>(std::move(trend)));
    steps.emplace_back("standardize", std::make_unique<Standardizer>());
    auto reducer = std::make_unique<ReducedRegressionForecaster>(regressor(), default_window(sp, o));
    ForecasterPtr model = std::make_unique<TransformedTargetForecaster>(std::move(steps), std::move(reducer));
    return tune ? tuned(std::move(model), horizon) : std::move(model);
}

std::map<std::string, RegressorFactory> all_regressors(const RegistryOptions& o) {
    std::map<std::string, RegressorFactory> out{
        {"LR", [] { return std::make_unique<LinearRegression>(true); }},
        {"KNN", [] { return std::make_unique<KNeighborsRegressor>(1); }},
    };
    for (const auto& [name, factory] : o.regressors) out[name] = factory;
    return out;
}

} // namespace

std::vector<std::string> model_names(const RegistryOptions& options) {
    std::vector<std::string> out = kStatistical;
    for (const auto& [prefix, factory] : all_regressors(options)) {
        for (const auto& suffix : kReductionSuffixes) out.push_back(prefix + suffix);
    }
    return out;
}

ForecasterPtr build_model(const std::string& name, int sp, int horizon, const RegistryOptions& o) {
    using Trend = ExponentialSmoothing::Trend;
    if (name == "Naive") return std::make_unique<NaiveForecaster>(NaiveStrategy::Last);
    if (name == "sNaive") return std::make_unique<NaiveForecaster>(NaiveStrategy::SeasonalLast, sp);
    if (name == "Naive2") return deseasonalized(std::make_unique<NaiveForecaster>(NaiveStrategy::Last), sp, o);
    if (name == "SES") return smoothing(Trend::None, sp, o);
    if (name == "Holt") return smoothing(Trend::Additive, sp, o);
    if (name == "Damped") return smoothing(Trend::Damped, sp, o);
    if (name == "Com") {
        std::vector<EnsembleForecaster::Component> parts;
        parts.emplace_back("SES", build_model("SES", sp, horizon, o));
        parts.emplace_back("Holt", build_model("Holt", sp, horizon, o));
        parts.emplace_back("Damped", build_model("Damped", sp, horizon, o));
        return std::make_unique<EnsembleForecaster>(std::move(parts));
    }
    if (name == "Theta") return deseasonalized(std::make_unique<ThetaForecaster>(), sp, o);
    if (name == "Theta-bc") return theta_bc(sp, o);

    for (const auto& [prefix, factory] : all_regressors(o)) {
        if (name.rfind(prefix, 0) != 0) continue;
        const std::string variant = name.substr(prefix.size());
        if (std::find(kReductionSuffixes.begin(), kReductionSuffixes.end(), variant) != kReductionSuffixes.end()) {
            return reduction_model(factory, variant, sp, horizon, o);
        }
    }
    throw Error(Errc::UnknownModel, "unknown model '" + name + "'");
}

} // namespace tsf::m4

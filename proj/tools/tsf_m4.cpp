// Command-line harness for M4-style forecasting benchmarks.

#include "tsf/m4.hpp"

#include "CLI11.hpp"

#include <fmt/format.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace tsf;

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::Io, "cannot write " + path);
    out << content;
}

int cmd_run(const std::string& dataset_arg, const std::string& models_arg, const std::string& train_dir,
            const std::string& test_dir, const std::string& out_path, int jobs, const std::string& mase_arg,
            const std::string& window_arg) {
    m4::RunConfig config;
    config.models = split_csv(models_arg);
    config.jobs = jobs;
    config.mase_denominator = parse_mase_denominator(mase_arg);
    config.registry.window_rule = m4::parse_window_rule(window_arg);

    std::vector<m4::DatasetSpec> specs;
    if (dataset_arg == "all") specs = m4::datasets();
    else
        for (const auto& name : split_csv(dataset_arg)) specs.push_back(m4::dataset(name));

    std::vector<m4::RunRecord> records;
    for (const auto& spec : specs) {
        const auto data = m4::load_m4(m4::train_path(train_dir, spec), m4::test_path(test_dir, spec), spec);
        std::cerr << fmt::format("{}: {} series, {} models\n", spec.name, data.size(), m4::effective_models(config.models).size());
        const auto t0 = std::chrono::steady_clock::now();
        auto part = m4::run_dataset(spec, data, config);
        std::cerr << fmt::format("{}: done in {:.1f}s\n", spec.name,
                                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        records.insert(records.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    const auto aggregates = m4::aggregate(records);
    m4::write_results(out_path, records, aggregates);

    for (const auto& a : aggregates) {
        std::cout << fmt::format("{:<10} {:<16} n={:<6} failed={:<4} sMAPE={:.3f} MASE={:.3f} OWA={:.3f} rank={:.3f}\n", a.dataset,
                                 a.model, a.n_series, a.n_failed, a.smape, a.mase, a.owa, a.mean_rank_smape);
    }
    return 0;
}

int cmd_compare(const std::string& results, const std::string& published, const std::string& out_path, bool strict) {
    const auto res = m4::read_results(results);
    const auto rows = m4::compare(res.aggregates, m4::read_published(published), strict);
    write_file(out_path, m4::comparison_csv(rows));
    std::cout << m4::comparison_text(rows);
    return 0;
}

int cmd_stats(const std::string& results, const std::string& test, const std::string& metric, const std::string& dataset,
              double alpha, const std::string& out_path, const std::string& svg_path) {
    auto res = m4::read_results(results);
    if (!dataset.empty()) {
        std::erase_if(res.records, [&](const m4::RunRecord& r) { return r.dataset != dataset; });
    }
    const auto report = m4::stats(res.records, m4::parse_stat_test(test), parse_metric(metric), alpha);
    write_file(out_path, m4::stats_json(report) + "\n");
    if (!svg_path.empty()) {
        if (!report.cd) throw Error(Errc::InvalidArgument, "--svg needs --test nemenyi");
        write_file(svg_path, render_cd_svg(*report.cd));
    }
    std::cout << fmt::format("{} series\n", report.n_series);
    for (const auto& [m, r] : report.mean_ranks) std::cout << fmt::format("  {:<16} {:.4f}\n", m, r);
    if (report.friedman) std::cout << fmt::format("Friedman chi2 = {:.4f}, p = {:.4g}\n", report.friedman->statistic, report.friedman->p_value);
    if (report.cd) std::cout << fmt::format("CD = {:.4f} ({} groups)\n", report.cd->cd, report.cd->groups.size());
    for (const auto& p : report.pairwise) {
        std::cout << fmt::format("  {:<32} p = {:.4g}  holm = {:.4g}{}\n", p.model_a + " vs " + p.model_b, p.p_value, p.p_holm,
                                 p.significant ? "  *" : "");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"M4 forecasting benchmark"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Evaluate models on M4 data sets");
    std::string dataset, models, train_dir, test_dir, out, mase_arg = "as_formula", window_arg = "max";
    int jobs = 1;
    run->add_option("--dataset", dataset, "Data set name, comma list or 'all'")->required();
    run->add_option("--models", models, "Comma-separated model names")->required();
    run->add_option("--train-dir", train_dir, "Directory with <Name>-train.csv")->required();
    run->add_option("--test-dir", test_dir, "Directory with <Name>-test.csv")->required();
    run->add_option("--out", out, "JSON-lines results file")->required();
    run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    run->add_option("--mase-denominator", mase_arg, "as_formula or train_only")
        ->check(CLI::IsMember({"as_formula", "train_only"}));
    run->add_option("--window-rule", window_arg, "Reduction window: max(sp,3) or min(sp,3)")
        ->check(CLI::IsMember({"max", "min"}));

    auto* cmp = app.add_subcommand("compare", "Percentage differences against published values");
    std::string results, published, cmp_out;
    bool strict = false;
    cmp->add_option("--results", results)->required();
    cmp->add_option("--published", published)->required();
    cmp->add_option("--out", cmp_out)->required();
    cmp->add_flag("--strict", strict, "Fail when a result has no published value");

    auto* st = app.add_subcommand("stats", "Significance tests over a results file");
    std::string st_results, test, metric = "smape", st_out, svg, st_dataset;
    double alpha = 0.05;
    st->add_option("--results", st_results)->required();
    st->add_option("--test", test)->required()->check(CLI::IsMember({"friedman", "nemenyi", "wilcoxon_holm", "ttest"}));
    st->add_option("--metric", metric)->check(CLI::IsMember({"smape", "mase"}));
    st->add_option("--dataset", st_dataset, "Restrict to one data set");
    st->add_option("--alpha", alpha);
    st->add_option("--out", st_out)->required();
    st->add_option("--svg", svg, "Critical-difference diagram (nemenyi)");

    auto* list = app.add_subcommand("models", "List registered model names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(dataset, models, train_dir, test_dir, out, jobs, mase_arg, window_arg);
        if (*cmp) return cmd_compare(results, published, cmp_out, strict);
        if (*st) return cmd_stats(st_results, test, metric, st_dataset, alpha, st_out, svg);
        if (*list) {
            for (const auto& m : m4::model_names()) std::cout << m << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

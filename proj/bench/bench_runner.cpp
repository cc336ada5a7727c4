// Serial vs OpenMP runner on a synthetic hourly data set.
//
//   bench_runner [n_series] [jobs] [models]

#include "tsf/m4.hpp"

#include "../tests/support/synthetic.hpp"

#include <fmt/format.h>
#include <omp.h>

#include <chrono>
#include <cstring>
#include <iostream>

using namespace tsf;

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_metrics(const std::vector<m4::RunRecord>& a, const std::vector<m4::RunRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].model != b[i].model || a[i].series_id != b[i].series_id || a[i].error != b[i].error) return false;
        if (std::memcmp(&a[i].smape, &b[i].smape, sizeof(double)) != 0) return false;
        if (std::memcmp(&a[i].mase, &b[i].mase, sizeof(double)) != 0) return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t n_series = argc > 1 ? std::stoul(argv[1]) : 64;
    const int jobs = argc > 2 ? std::stoi(argv[2]) : std::max(2, omp_get_max_threads());
    const std::string models = argc > 3 ? argv[3] : "Naive,sNaive,SES,Theta,LR-s,KNN-s";

    const auto& spec = m4::dataset("hourly");
    const auto dir = std::filesystem::temp_directory_path() / "tsf_bench_runner";
    testing::write_synthetic_m4(dir, spec, n_series, 700, 960, 20240501);
    const auto data = m4::load_m4(m4::train_path(dir, spec), m4::test_path(dir, spec), spec);

    m4::RunConfig config;
    for (std::size_t pos = 0, next; pos <= models.size(); pos = next + 1) {
        next = models.find(',', pos);
        if (next == std::string::npos) next = models.size();
        if (next > pos) config.models.push_back(models.substr(pos, next - pos));
    }
    config.jobs = jobs;

    std::vector<m4::RunRecord> serial, parallel;
    const double t_serial = seconds([&] { serial = m4::run_dataset_serial(spec, data, config); });
    const double t_parallel = seconds([&] { parallel = m4::run_dataset(spec, data, config); });

    std::cout << fmt::format("series={} tasks={} jobs={} hardware_threads={}\n", data.size(), serial.size(), jobs,
                             omp_get_num_procs());
    std::cout << fmt::format("serial   {:8.3f} s\n", t_serial);
    std::cout << fmt::format("parallel {:8.3f} s  speedup {:.2f}x\n", t_parallel, t_serial / t_parallel);
    const bool same = same_metrics(serial, parallel);
    std::cout << fmt::format("identical metrics: {}\n", same ? "yes" : "NO");
    std::filesystem::remove_all(dir);
    return same ? 0 : 1;
}

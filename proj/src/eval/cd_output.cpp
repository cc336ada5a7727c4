#include "tsf/eval.hpp"

#include "json.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace tsf {

std::string to_json(const CdDiagram& d) {
    nlohmann::ordered_json j;
    std::vector<std::size_t> order(d.models.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d.mean_ranks[a] < d.mean_ranks[b]; });
    auto ranks = nlohmann::ordered_json::array();
    for (const auto i : order) ranks.push_back({{"model", d.models[i]}, {"mean_rank", d.mean_ranks[i]}});
    auto groups = nlohmann::ordered_json::array();
    for (const auto& g : d.groups) {
        auto names = nlohmann::ordered_json::array();
        for (const auto i : g) names.push_back(d.models[i]);
        groups.push_back(names);
    }
    j["alpha"] = d.alpha;
    j["n_series"] = d.n_series;
    j["cd"] = d.cd;
    j["mean_ranks"] = ranks;
    j["groups"] = groups;
    return j.dump(2);
}

std::string render_cd_svg(const CdDiagram& d) {
    const std::size_t k = d.models.size();
    const double width = 640.0, left = 60.0, right = 580.0, axis_y = 60.0;
    const double lo = 1.0, hi = std::max<double>(2.0, static_cast<double>(k));
    auto x_of = [&](double r) { return left + (r - lo) / (hi - lo) * (right - left); };

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d.mean_ranks[a] < d.mean_ranks[b]; });

    const double label_top = axis_y + 30.0 + 12.0 * static_cast<double>(d.groups.size());
    const double height = label_top + 22.0 * static_cast<double>((k + 1) / 2) + 30.0;

    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
        width, height);
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"black\"/>\n", x_of(lo), axis_y,
                     x_of(hi), axis_y);
    for (int r = 1; r <= static_cast<int>(hi); ++r) {
        const double x = x_of(r);
        s += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n", x, axis_y - 5,
                         axis_y);
        s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", x, axis_y - 10, r);
    }
    // CD bar above the axis.
    s += fmt::format("<line x1=\"{:.1f}\" y1=\"20\" x2=\"{:.1f}\" y2=\"20\" stroke=\"black\" stroke-width=\"2\"/>\n", x_of(lo),
                     x_of(lo + d.cd));
    s += fmt::format("<text x=\"{:.1f}\" y=\"15\">CD = {:.3f}</text>\n", x_of(lo), d.cd);

    for (std::size_t g = 0; g < d.groups.size(); ++g) {
        double a = hi, b = lo;
        for (const auto i : d.groups[g]) {
            a = std::min(a, d.mean_ranks[i]);
            b = std::max(b, d.mean_ranks[i]);
        }
        const double y = axis_y + 15.0 + 12.0 * static_cast<double>(g);
        s += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"black\" stroke-width=\"3\"/>\n",
                         x_of(a) - 3, y, x_of(b) + 3, y);
    }

    for (std::size_t n = 0; n < k; ++n) {
        const std::size_t i = order[n];
        const bool left_side = n < (k + 1) / 2;
        const std::size_t row = left_side ? n : k - 1 - n;
        const double x = x_of(d.mean_ranks[i]);
        const double y = label_top + 22.0 * static_cast<double>(row);
        const double text_x = left_side ? 10.0 : width - 10.0;
        s += fmt::format("<polyline points=\"{:.1f},{:.1f} {:.1f},{:.1f} {:.1f},{:.1f}\" fill=\"none\" stroke=\"gray\"/>\n", x,
                         axis_y, x, y, left_side ? text_x + 110.0 : text_x - 110.0, y);
        s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"{}\">{} ({:.3f})</text>\n", text_x, y + 4,
                         left_side ? "start" : "end", d.models[i], d.mean_ranks[i]);
    }
    s += "</svg>\n";
    return s;
}

} // namespace tsf

#include "tsf/m4.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <unordered_map>

namespace tsf::m4 {

const std::vector<DatasetSpec>& datasets() {
    static const std::vector<DatasetSpec> specs{
        {"yearly", 1, 6}, {"quarterly", 4, 8}, {"monthly", 12, 18},
        {"weekly", 1, 13}, {"daily", 1, 14},   {"hourly", 24, 48},
    };
    return specs;
}

const DatasetSpec& dataset(const std::string& name) {
    for (const auto& s : datasets()) {
        if (s.name == name) return s;
    }
    throw Error(Errc::InvalidArgument, "unknown dataset '" + name + "'");
}

namespace {

std::string capitalized(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

std::string_view unquote(std::string_view f) {
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.remove_suffix(1);
    while (!f.empty() && f.front() == ' ') f.remove_prefix(1);
    if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
    return f;
}

struct Row {
    std::string id;
    std::vector<double> values;
};

Row parse_row(const std::string& line, std::size_t line_no, const std::filesystem::path& file) {
    auto malformed = [&](const std::string& why) {
        return Error(Errc::MalformedRow, fmt::format("{}:{}: {}", file.string(), line_no, why));
    };
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
        const auto comma = rest.find(',');
        fields.push_back(unquote(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    Row row;
    row.id = std::string(fields.front());
    if (row.id.empty()) throw malformed("empty series id");

    std::size_t last = fields.size();
    while (last > 1 && fields[last - 1].empty()) --last;
    row.values.reserve(last - 1);
    for (std::size_t i = 1; i < last; ++i) {
        const auto f = fields[i];
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
            throw malformed(fmt::format("field {} is not a number: '{}'", i + 1, f));
        }
        row.values.push_back(v);
    }
    return row;
}

std::vector<Row> read_rows(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(Errc::Io, "cannot open " + file.string());
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) continue;
        if (unquote(line).empty()) continue;
        rows.push_back(parse_row(line, line_no, file));
    }
    return rows;
}

} // namespace

std::filesystem::path train_path(const std::filesystem::path& dir, const DatasetSpec& spec) {
    return dir / (capitalized(spec.name) + "-train.csv");
}

std::filesystem::path test_path(const std::filesystem::path& dir, const DatasetSpec& spec) {
    return dir / (capitalized(spec.name) + "-test.csv");
}

std::vector<Series> load_m4(const std::filesystem::path& train_file, const std::filesystem::path& test_file,
                            const DatasetSpec& spec) {
    auto train = read_rows(train_file);
    auto test = read_rows(test_file);

    std::unordered_map<std::string, std::size_t> test_index;
    for (std::size_t i = 0; i < test.size(); ++i) test_index.emplace(test[i].id, i);

    std::vector<Series> out;
    out.reserve(train.size());
    for (auto& row : train) {
        const auto it = test_index.find(row.id);
        if (it == test_index.end()) throw Error(Errc::MissingTestSeries, "no test series for " + row.id);
        auto& t = test[it->second].values;
        if (t.size() != static_cast<std::size_t>(spec.horizon)) {
            throw Error(Errc::MalformedRow,
                        fmt::format("{}: test series {} has {} values, expected {}", test_file.string(), row.id, t.size(), spec.horizon));
        }
        if (row.values.empty()) throw Error(Errc::MalformedRow, fmt::format("{}: series {} is empty", train_file.string(), row.id));
        out.push_back({row.id, TimeSeries(std::move(row.values), 0, spec.sp), std::move(t)});
    }
    return out;
}

} // namespace tsf::m4

#include "gep/data.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace gep {

namespace {

const std::vector<double> kPrecipitation = {
    0.77, 1.74, 0.81, 1.2,  1.95, 1.2,  0.47, 1.43, 3.37, 2.2,
    3.0,  3.09, 1.51, 2.1,  0.52, 1.62, 1.31, 0.32, 0.59, 0.81,
    2.81, 1.87, 1.18, 1.35, 4.75, 2.48, 0.96, 1.89, 0.9,  2.05};

const std::vector<double> kToys = {
    4.2,  1.12, 1.39, 2.0,  3.99, 2.15, 1.74, 5.81, 1.7,  2.85, 0.5,
    0.99, 11.5, 5.12, 0.9,  1.99, 6.24, 2.6,  3.0,  12.2, 7.36, 4.75,
    11.59, 8.69, 9.8, 1.85, 1.99, 1.35, 10.0, 0.65, 1.45};

double parse_number(const std::string& text, int line_no) {
    errno = 0;
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0') || errno == ERANGE)
        throw DataError("line " + std::to_string(line_no) + ": cannot parse value '" + text +
                        "'");
    return v;
}

std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Sample builtin_dataset(DatasetId id) {
    switch (id) {
        case DatasetId::precipitation: return Sample(kPrecipitation);
        case DatasetId::toys: return Sample(kToys);
    }
    throw ArgumentError("builtin_dataset: unknown dataset");
}

std::optional<DatasetId> dataset_from_name(const std::string& name) {
    if (name == "precipitation") return DatasetId::precipitation;
    if (name == "toys") return DatasetId::toys;
    return std::nullopt;
}

std::string dataset_name(DatasetId id) {
    return id == DatasetId::precipitation ? "precipitation" : "toys";
}

Sample load_sample(const std::string& path, std::optional<int> column, bool skip_header) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    if (column && *column < 0) throw ArgumentError("load_sample: column must be nonnegative");

    std::vector<double> values;
    std::string line;
    int line_no = 0;
    bool header_pending = skip_header;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        std::string field = s;
        if (column) {
            std::stringstream ss(s);
            std::string cell;
            int idx = -1;
            bool found = false;
            while (std::getline(ss, cell, ',')) {
                if (++idx == *column) {
                    field = strip(cell);
                    found = true;
                    break;
                }
            }
            if (!found)
                throw DataError("line " + std::to_string(line_no) + ": no column " +
                                std::to_string(*column) + " in '" + s + "'");
        }
        const double v = parse_number(field, line_no);
        if (!(v > 0.0) || !std::isfinite(v))
            throw DataError("line " + std::to_string(line_no) +
                            ": values must be positive and finite, got '" + field + "'");
        values.push_back(v);
    }
    if (values.empty()) throw DataError("no data values in file: " + path);
    return Sample(std::move(values));
}

}  // namespace gep

// Copyright 2026 The dqkl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "dqkl/data/data.hpp"

namespace dqkl::data {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view field, std::size_t line) {
    field = trim(field);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size()) {
        throw CsvError(line, "cannot parse '" + std::string(field) + "' as a number");
    }
    return value;
}

}  // namespace

CsvError::CsvError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

learn::LabeledDataset read_csv(std::istream& in) {
    std::vector<learn::Sample> samples;
    std::string raw;
    std::size_t line = 0;
    bool seen_content = false;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = trim(raw);
        if (text.empty()) continue;
        if (!seen_content) {
            seen_content = true;
            if (text == "x1,x2,label") continue;
        }
        std::array<std::string_view, 3> fields;
        std::size_t count = 0;
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            if (count == fields.size()) {
                throw CsvError(line, "expected 3 fields");
            }
            fields[count++] = text.substr(start, comma - start);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (count != 3) throw CsvError(line, "expected 3 fields, found " + std::to_string(count));
        const double x1 = parse_real(fields[0], line);
        const double x2 = parse_real(fields[1], line);
        const std::string_view label = trim(fields[2]);
        int y = 0;
        if (label == "1") {
            y = 1;
        } else if (label == "-1") {
            y = -1;
        } else {
            throw CsvError(line, "label must be 1 or -1, got '" + std::string(label) + "'");
        }
        samples.push_back({{x1, x2}, y});
    }
    if (samples.empty()) throw CsvError(0, "CSV input has no data rows");
    return learn::LabeledDataset(std::move(samples));
}

learn::LabeledDataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_csv(in);
}

void write_csv(std::ostream& out, const learn::LabeledDataset& data) {
    if (data.feature_dim() != 2 && !data.empty()) {
        throw std::invalid_argument("CSV output supports exactly two features");
    }
    out << "x1,x2,label\n";
    std::array<char, 64> buf{};
    for (const auto& s : data) {
        for (double v : s.x) {
            // Shortest representation that parses back to the same double.
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
            out.write(buf.data(), res.ptr - buf.data());
            out << ',';
        }
        out << s.label << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const learn::LabeledDataset& data) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_csv(out, data);
}

}  // namespace dqkl::data

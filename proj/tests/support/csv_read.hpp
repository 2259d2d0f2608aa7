// Copyright 2026 The Spectral POVM Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Minimal reader for the CSV emitted by the analysis commands.

#pragma once

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(const std::string &name) const {
        for (std::size_t k = 0; k < header.size(); ++k) {
            if (header[k] == name) {
                return k;
            }
        }
        throw std::runtime_error("no CSV column '" + name + "'");
    }

    [[nodiscard]] std::vector<double> numbers(const std::string &name) const {
        const auto k = column(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto &r : rows) {
            out.push_back(std::strtod(r.at(k).c_str(), nullptr));
        }
        return out;
    }
};

inline std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cells.push_back(cell);
    }
    return cells;
}

inline Csv parse_csv(const std::string &text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (first) {
            csv.header = split_csv_line(line);
            first = false;
        } else {
            csv.rows.push_back(split_csv_line(line));
        }
    }
    return csv;
}

} // namespace oracle

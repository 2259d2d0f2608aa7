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


#include <cmath>
#include <cstdio>

#include "povm/errors.hpp"
#include "povm/scenario.hpp"

namespace povm::scenario {

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (value == 0.0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    row(header);
}

void CsvWriter::row(const std::vector<std::string> &cells) {
    if (cells.size() != columns_) {
        throw Error("csv row has the wrong number of cells");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) {
            text_ += ',';
        }
        text_ += cells[i];
    }
    text_ += '\n';
}

} // namespace povm::scenario

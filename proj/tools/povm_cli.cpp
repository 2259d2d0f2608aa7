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


// Command-line front end. Links only the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "povm/povm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;

int exit_code_for(povm_status status) {
    switch (status) {
    case POVM_OK:
        return kExitOk;
    case POVM_ERR_UNREACHABLE:
        return kExitValidation;
    case POVM_ERR_INTERNAL:
        return kExitInternal;
    default:
        return kExitConfig;
    }
}

int report(povm_status status) {
    std::cerr << "povm: " << povm_status_name(status) << ": " << povm_last_error()
              << '\n';
    return exit_code_for(status);
}

void print_warning(const char *message, void *) {
    std::cerr << "povm: warning: " << message << '\n';
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Spectral POVM analysis of frequency-filtered photon detection"};
    app.set_version_flag("--version", std::string(povm_version()));
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_path;
    std::optional<double> tolerance;

    const char *commands[][2] = {
        {"spectrum", "Time-dependent detection density behind each filter port"},
        {"purity-curve", "Window-element purity against the closed form"},
        {"herald", "Heralded-photon purity and efficiency sweep"},
        {"hom-map", "Two-photon coincidence map at the filter"},
        {"povm-check", "Unitarity, completeness, overlap and weight checks"}};
    for (const auto &cmd : commands) {
        auto *sub = app.add_subcommand(cmd[0], cmd[1]);
        sub->add_option("--config", config_path, "Scenario file (.ini or .json)")
            ->required();
        sub->add_option("--out", out_path, "Output CSV path (default: scenario "
                                           "output.path, else stdout)");
        sub->add_option("--tolerance", tolerance, "Validation tolerance override");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    povm_set_warning_callback(print_warning, nullptr);

    povm_scenario *scenario = nullptr;
    if (const auto status = povm_scenario_load(config_path.c_str(), &scenario);
        status != POVM_OK) {
        return report(status);
    }

    povm_result *result = nullptr;
    const double *tol = tolerance ? &*tolerance : nullptr;
    if (const auto status = povm_scenario_run(scenario, command.c_str(), tol, &result);
        status != POVM_OK) {
        povm_scenario_destroy(scenario);
        return report(status);
    }

    const std::string target =
        out_path.empty() ? std::string(povm_scenario_output_path(scenario)) : out_path;
    int code = povm_result_exit_code(result);
    if (target.empty()) {
        std::fputs(povm_result_csv(result), stdout);
    } else {
        std::ofstream out(target, std::ios::binary | std::ios::trunc);
        out << povm_result_csv(result);
        if (!out) {
            std::cerr << "povm: cannot write '" << target << "'\n";
            code = kExitConfig;
        }
    }
    if (code == kExitValidation) {
        std::cerr << "povm: validation failed: " << povm_result_message(result) << '\n';
    }
    povm_result_destroy(result);
    povm_scenario_destroy(scenario);
    return code;
}

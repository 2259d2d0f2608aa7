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

#include "povm/errors.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace povm {
namespace {

std::mutex &handler_mutex() {
    static std::mutex m;
    return m;
}

WarningHandler &handler_slot() {
    static WarningHandler handler = [](const std::string &message) {
        std::cerr << "povm: warning: " << message << '\n';
    };
    return handler;
}

} // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard lock(handler_mutex());
    return std::exchange(handler_slot(), std::move(handler));
}

void warn(const std::string &message) {
    WarningHandler handler;
    {
        std::lock_guard lock(handler_mutex());
        handler = handler_slot();
    }
    if (handler) {
        handler(message);
    }
}

} // namespace povm

// Copyright 2026 The ppdo Authors
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

#ifndef PPDO_REPORT_JSON_H_
#define PPDO_REPORT_JSON_H_

#include <span>

#include <json.hpp>

#include "ppdo/privacy.h"
#include "ppdo/protocol.h"

namespace ppdo {

// epsilon is a number, or the string "breach" with breach_reason alongside.
nlohmann::json ToJson(const PrivacyReport& report);
nlohmann::json ToJson(const RunReport& report);
nlohmann::json ToJson(std::span<const SweepRow> rows);

}  // namespace ppdo

#endif  // PPDO_REPORT_JSON_H_

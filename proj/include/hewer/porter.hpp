// Copyright 2026 The hewer authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

namespace hewer {

/// Classic Porter stemming (the reference-implementation variant every
/// mainstream engine ships, including the bli->ble and logi->log rules).
/// The token is ASCII-lowercased first; inputs of length <= 2 come back
/// unchanged apart from case. Non-letter characters are treated as
/// consonants, so digit-only tokens pass through untouched.
std::string porter_stem(std::string_view token);

}  // namespace hewer

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

#include "hewer/manifest.hpp"

namespace hewer {

struct PipelineOptions {
  std::string out_dir;
  int threads = 0;  // <= 0: OpenMP default
  bool quiet = false;
};

/// Executes the whole sweep a manifest describes: index builds, baseline
/// retrieval + evaluation for every (granularity, variant, depth), difficult
/// question identification, extension mining + HEW evaluation, blind RF, and
/// reports. The output directory must not already contain a run; two
/// executions with the same inputs produce byte-identical trees regardless of
/// thread count.
void run_manifest(const Manifest& manifest, const PipelineOptions& options);

}  // namespace hewer

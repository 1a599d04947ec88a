// SPDX-License-Identifier: MIT
// Golden files: canonical renderings of the recorded polynomials and
// presentations, pinned byte for byte so that any drift in computation or
// printing is caught.  The same renderers drive checking and regeneration.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace invforge {

struct GoldenDiff {
  std::string path;  // relative to the golden tree
  bool created = false;
  bool changed = false;
  size_t old_bytes = 0;
  size_t new_bytes = 0;
};

// Render every golden artifact from live computation, as (relative path,
// content) pairs in manifest order.
std::vector<std::pair<std::string, std::string>> golden_render_all();

// Compare the rendered artifacts against the tree at `dir`; GoldenMismatch
// names every missing or differing file.
void golden_check(const std::string& dir);

// Rewrite the tree at `dir` (creating directories); one entry per file.
std::vector<GoldenDiff> golden_regenerate(const std::string& dir);

// The tree this build was pointed at.
std::string golden_default_dir();

}  // namespace invforge

#pragma once

#include <string>

namespace tl {

// Resolution order: $TAULEHMER_FIXTURES, the installed data directory, the
// source tree the library was built from.
std::string fixture_dir();
std::string fixture_path(const std::string& name);

}  // namespace tl

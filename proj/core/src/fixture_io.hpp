#pragma once

#include <string>

#include "json.hpp"
#include "taulehmer/arith.hpp"

namespace tl::detail {

const nlohmann::json& fixture(const std::string& name);  // parsed once, cached
Int json_int(const nlohmann::json& v);

}  // namespace tl::detail

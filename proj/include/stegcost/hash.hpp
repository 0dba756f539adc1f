#pragma once

#include <array>
#include <cstdint>

#include "stegcost/common.hpp"

namespace stegcost {

std::array<std::uint8_t, 32> sha256(const Bytes& data);

}  // namespace stegcost

// Copyright 2026 The ledgersim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ledgersim/types.hpp"

namespace ledgersim {

Digest sha256(std::string_view data);

std::string to_hex(const Digest& digest);
std::optional<Digest> digest_from_hex(std::string_view hex);

}  // namespace ledgersim

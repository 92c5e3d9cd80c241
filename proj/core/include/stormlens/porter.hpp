// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace stormlens::text {

/// Porter stemming algorithm (the classic frozen variant, including the
/// step-2 "bli"->"ble" and "logi"->"log" revisions). Input is expected to be
/// a lowercase alphabetic token; tokens shorter than 3 characters or
/// containing non-letters are returned unchanged.
std::string porter_stem(std::string_view token);

}  // namespace stormlens::text

#pragma once

namespace seqk {

inline constexpr const char* version_string = "0.1.0";

}  // namespace seqk

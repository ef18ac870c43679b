#pragma once

namespace arclab {

inline constexpr const char* kVersion = "0.1.0";

}

#pragma once

namespace mimogames {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace mimogames

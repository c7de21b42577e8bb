#pragma once

namespace cliquedist {
inline constexpr const char* kVersion = "0.1.0";
}

#pragma once

namespace handshake {

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace handshake

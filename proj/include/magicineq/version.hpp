#pragma once

#define MAGICINEQ_VERSION_MAJOR 1
#define MAGICINEQ_VERSION_MINOR 0
#define MAGICINEQ_VERSION_PATCH 0
#define MAGICINEQ_VERSION "1.0.0"

namespace magicineq {

inline const char* version() { return MAGICINEQ_VERSION; }

} // namespace magicineq

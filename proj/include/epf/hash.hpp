#pragma once

#include <cstddef>
#include <cstdint>

namespace epf {

/// FNV-1a 64-bit over raw bytes; chainable via the seed argument.
inline uint64_t fnv1a64(const void* data, size_t len,
                        uint64_t seed = 14695981039346656037ULL) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    uint64_t h = seed;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace epf

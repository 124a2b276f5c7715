#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace facteval {

/// 64-bit FNV-1a. Used for content-addressed cache keys and input
/// provenance hashes; stable across platforms and runs.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 0xcbf29ce484222325ULL) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string to_hex(std::uint64_t value);

/// Hashes a sequence of fields with a separator that cannot collide with
/// field content (length-prefixed framing).
class FieldHasher {
public:
    FieldHasher& add(std::string_view field);
    std::string hex() const { return to_hex(state_); }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

/// FNV-1a over a whole file's bytes; throws std::runtime_error if the file
/// cannot be opened.
std::string hash_file(const std::string& path);

}  // namespace facteval

#include "facteval/hash.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace facteval {

std::string to_hex(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

FieldHasher& FieldHasher::add(std::string_view field) {
    std::string len = std::to_string(field.size());
    state_ = fnv1a64(len, state_);
    state_ = fnv1a64(":", state_);
    state_ = fnv1a64(field, state_);
    return *this;
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for hashing: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        std::streamsize got = in.gcount();
        if (got > 0) h = fnv1a64(std::string_view(buf.data(), static_cast<size_t>(got)), h);
    }
    return to_hex(h);
}

}  // namespace facteval

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "envforge/core/error.hpp"
#include "envforge/core/fsutil.hpp"

namespace envforge {

using json = nlohmann::json;

/// Canonical serialization: object keys sorted (nlohmann's default object is
/// key-ordered), two-space indent, UTF-8, trailing newline. All emitted
/// artifacts (traces, manifests, reports) go through this so byte comparison
/// is meaningful.
inline std::string canonical_dump(const json& value) {
    return value.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

inline json parse_json(std::string_view text, std::string_view what = "json") {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) {
        throw Error(Errc::spec_parse_failure, "malformed " + std::string(what));
    }
    return parsed;
}

inline json load_json_file(const fs::path& path) {
    return parse_json(read_text_file(path), path.string());
}

inline void save_json_file(const fs::path& path, const json& value) {
    write_text_file(path, canonical_dump(value));
}

/// FNV-1a 64-bit. Used for replay prompt binding and trace checksums;
/// collision resistance beyond accidental drift is not required.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

inline std::string fnv1a64_hex(std::string_view data) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t hash = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

} // namespace envforge

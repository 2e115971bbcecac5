// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "envforge/core/error.hpp"

namespace envforge {

namespace fs = std::filesystem;

inline std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_text_file(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

/// A file is text if its first 8 KiB contains no NUL byte.
inline bool is_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    char buf[8192];
    in.read(buf, sizeof(buf));
    const auto n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
        if (buf[i] == '\0') return false;
    }
    return true;
}

inline std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.emplace_back(text.substr(start));
            break;
        }
        lines.emplace_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    if (!lines.empty() && lines.back().empty() && !text.empty() && text.back() == '\n') {
        lines.pop_back();
    }
    return lines;
}

inline std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

/// Recursively copies a directory tree (used for snapshots and repo mounts).
inline void copy_tree(const fs::path& from, const fs::path& to) {
    fs::create_directories(to);
    fs::copy(from, to,
             fs::copy_options::recursive | fs::copy_options::overwrite_existing |
                 fs::copy_options::copy_symlinks);
}

class TempDir {
public:
    explicit TempDir(std::string_view prefix = "envforge") {
        auto base = fs::temp_directory_path();
        for (int attempt = 0; attempt < 1000; ++attempt) {
            auto candidate = base / (std::string(prefix) + "-" +
                                     std::to_string(::getpid()) + "-" +
                                     std::to_string(counter_id()));
            std::error_code ec;
            if (fs::create_directories(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw Error(Errc::io_error, "cannot create temp directory");
    }

    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }

private:
    static std::uint64_t counter_id() {
        static std::atomic<std::uint64_t> counter{0};
        return ++counter;
    }

    fs::path path_;
};

} // namespace envforge

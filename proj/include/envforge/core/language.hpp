// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace envforge {

/// Closed language registry. `other` covers code in languages the pipeline
/// recognizes as code but has no plugin for.
enum class Language {
    python,
    java,
    rust,
    js_ts,
    go,
    other,
};

inline constexpr std::array<Language, 6> kAllLanguages = {
    Language::python, Language::java, Language::rust,
    Language::js_ts,  Language::go,   Language::other,
};

inline constexpr std::array<Language, 5> kPluginLanguages = {
    Language::python, Language::java, Language::rust, Language::js_ts, Language::go,
};

inline std::string_view to_string(Language lang) {
    switch (lang) {
        case Language::python: return "python";
        case Language::java: return "java";
        case Language::rust: return "rust";
        case Language::js_ts: return "js-ts";
        case Language::go: return "go";
        case Language::other: return "other";
    }
    return "other";
}

inline std::optional<Language> language_from_string(std::string_view tag) {
    for (Language lang : kAllLanguages) {
        if (to_string(lang) == tag) return lang;
    }
    return std::nullopt;
}

/// Maps a file extension (without dot, lowercase) to its registry tag.
/// Extensions of languages without a plugin map to `other`; non-code
/// extensions map to nullopt.
inline std::optional<Language> language_from_extension(std::string_view ext) {
    if (ext == "py" || ext == "pyi") return Language::python;
    if (ext == "java") return Language::java;
    if (ext == "rs") return Language::rust;
    if (ext == "js" || ext == "jsx" || ext == "ts" || ext == "tsx" || ext == "mjs" ||
        ext == "cjs") {
        return Language::js_ts;
    }
    if (ext == "go") return Language::go;
    if (ext == "c" || ext == "h" || ext == "cc" || ext == "cpp" || ext == "hpp" ||
        ext == "rb" || ext == "php" || ext == "cs" || ext == "kt" || ext == "swift" ||
        ext == "scala" || ext == "sh" || ext == "pl" || ext == "lua" || ext == "m") {
        return Language::other;
    }
    return std::nullopt;
}

} // namespace envforge

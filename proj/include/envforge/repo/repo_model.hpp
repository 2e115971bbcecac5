// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "envforge/core/error.hpp"
#include "envforge/core/fsutil.hpp"
#include "envforge/core/jsonutil.hpp"
#include "envforge/core/language.hpp"

namespace envforge {

struct FileEntry {
    std::string path;  // relative, normalized, '/'-separated, unique
    std::uint64_t size = 0;
    std::optional<Language> language;
    bool is_code = false;
};

/// Immutable after scan; safe to share across concurrent readers.
struct Repository {
    fs::path root;
    std::string name;
    std::optional<std::string> revision;
    std::vector<FileEntry> files;  // sorted by path
    std::int64_t scanned_at = 0;   // unix seconds; runtime metadata

    const FileEntry* find(std::string_view rel_path) const {
        auto it = std::lower_bound(files.begin(), files.end(), rel_path,
                                   [](const FileEntry& e, std::string_view p) {
                                       return e.path < p;
                                   });
        if (it != files.end() && it->path == rel_path) return &*it;
        return nullptr;
    }

    bool has_file(std::string_view rel_path) const { return find(rel_path) != nullptr; }

    fs::path absolute(std::string_view rel_path) const { return root / fs::path(rel_path); }

    /// Canonical form: sorted keys, files in path order, no host-specific or
    /// volatile fields, so identical trees serialize byte-identically.
    json to_json() const {
        json files_json = json::array();
        for (const auto& entry : files) {
            json item;
            item["is_code"] = entry.is_code;
            item["language"] =
                entry.language ? json(std::string(to_string(*entry.language))) : json(nullptr);
            item["path"] = entry.path;
            item["size"] = entry.size;
            files_json.push_back(std::move(item));
        }
        json out;
        out["files"] = std::move(files_json);
        out["name"] = name;
        out["revision"] = revision ? json(*revision) : json(nullptr);
        return out;
    }

    static Repository from_json(const json& doc, fs::path root = {}) {
        Repository repo;
        repo.root = std::move(root);
        repo.name = doc.at("name").get<std::string>();
        if (doc.contains("revision") && !doc["revision"].is_null()) {
            repo.revision = doc["revision"].get<std::string>();
        }
        for (const auto& item : doc.at("files")) {
            FileEntry entry;
            entry.path = item.at("path").get<std::string>();
            entry.size = item.at("size").get<std::uint64_t>();
            if (!item.at("language").is_null()) {
                entry.language = language_from_string(item["language"].get<std::string>());
            }
            entry.is_code = item.at("is_code").get<bool>();
            repo.files.push_back(std::move(entry));
        }
        return repo;
    }
};

enum class ArtifactKind {
    dockerfile,
    ci_pipeline,
    build_manifest,
    lockfile,
    test_script,
    readme,
};

inline std::string_view to_string(ArtifactKind kind) {
    switch (kind) {
        case ArtifactKind::dockerfile: return "dockerfile";
        case ArtifactKind::ci_pipeline: return "ci-pipeline";
        case ArtifactKind::build_manifest: return "build-manifest";
        case ArtifactKind::lockfile: return "lockfile";
        case ArtifactKind::test_script: return "test-script";
        case ArtifactKind::readme: return "readme";
    }
    return "readme";
}

struct ConfigArtifact {
    ArtifactKind kind;
    std::string path;  // refers to an existing FileEntry
    std::optional<Language> language_affinity;
};

struct LanguageProfile {
    std::map<Language, std::uint64_t> bytes_per_language;
    Language dominant = Language::other;
};

namespace detail {

inline std::string basename_of(std::string_view rel_path) {
    auto pos = rel_path.rfind('/');
    return std::string(pos == std::string_view::npos ? rel_path : rel_path.substr(pos + 1));
}

inline std::string extension_of(std::string_view rel_path) {
    auto base = basename_of(rel_path);
    auto dot = base.rfind('.');
    if (dot == std::string::npos || dot + 1 >= base.size()) return "";
    return lowercase(std::string_view(base).substr(dot + 1));
}

/// Glob match supporting '*' (any run, including '/') and '?'.
inline bool glob_match(std::string_view pattern, std::string_view text) {
    std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

inline bool path_component_equals(std::string_view rel_path, std::string_view component) {
    std::size_t start = 0;
    while (start < rel_path.size()) {
        auto end = rel_path.find('/', start);
        auto part = rel_path.substr(start, end == std::string_view::npos ? end : end - start);
        if (part == component) return true;
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return false;
}

inline bool starts_with_icase(std::string_view text, std::string_view prefix) {
    if (text.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        char a = text[i], b = prefix[i];
        if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
        if (b >= 'A' && b <= 'Z') b = static_cast<char>(b - 'A' + 'a');
        if (a != b) return false;
    }
    return true;
}

inline bool is_readme(std::string_view basename) {
    return starts_with_icase(basename, "readme");
}

inline bool is_dockerfile(std::string_view basename) {
    return starts_with_icase(basename, "dockerfile");
}

} // namespace detail

/// Default directories excluded from scans: version-control metadata plus
/// vendored/generated caches that would distort code-byte counts.
inline const std::vector<std::string>& default_ignore_rules() {
    static const std::vector<std::string> rules = {".git", "node_modules", "target", "dist",
                                                   "venv"};
    return rules;
}

inline Repository scan_repository(const fs::path& root,
                                  const std::vector<std::string>& ignore_rules = {}) {
    std::error_code ec;
    if (!fs::exists(root, ec) || !fs::is_directory(root, ec)) {
        throw Error(Errc::unreadable_root, root.string());
    }

    std::vector<std::string> rules = default_ignore_rules();
    rules.insert(rules.end(), ignore_rules.begin(), ignore_rules.end());

    auto ignored = [&rules](const std::string& rel) {
        for (const auto& rule : rules) {
            if (detail::path_component_equals(rel, rule)) return true;
            if (rule.find('*') != std::string::npos || rule.find('?') != std::string::npos) {
                if (detail::glob_match(rule, rel)) return true;
            }
        }
        return false;
    };

    Repository repo;
    repo.root = fs::absolute(root);
    repo.name = repo.root.filename().string();
    repo.scanned_at = static_cast<std::int64_t>(::time(nullptr));

    for (auto it = fs::recursive_directory_iterator(
             repo.root, fs::directory_options::skip_permission_denied, ec);
         it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (ec) break;
        const auto& dirent = *it;
        auto rel = fs::relative(dirent.path(), repo.root, ec).generic_string();
        if (ec || rel.empty() || rel == ".") continue;
        if (ignored(rel)) {
            if (dirent.is_directory(ec)) it.disable_recursion_pending();
            continue;
        }
        if (!dirent.is_regular_file(ec)) continue;

        FileEntry entry;
        entry.path = rel;
        entry.size = static_cast<std::uint64_t>(dirent.file_size(ec));
        if (ec) entry.size = 0;
        entry.language = language_from_extension(detail::extension_of(rel));
        entry.is_code = entry.language.has_value();
        repo.files.push_back(std::move(entry));
    }

    if (repo.files.empty()) throw Error(Errc::empty_repository, root.string());

    std::sort(repo.files.begin(), repo.files.end(),
              [](const FileEntry& a, const FileEntry& b) { return a.path < b.path; });
    return repo;
}

inline std::vector<ConfigArtifact> detect_artifacts(const Repository& repo) {
    std::vector<ConfigArtifact> artifacts;

    for (const auto& entry : repo.files) {
        auto base = detail::basename_of(entry.path);

        auto push = [&](ArtifactKind kind, std::optional<Language> affinity) {
            artifacts.push_back({kind, entry.path, affinity});
        };

        if (detail::is_dockerfile(base)) {
            push(ArtifactKind::dockerfile, std::nullopt);
            continue;
        }
        if (entry.path.starts_with(".github/workflows/") &&
            (entry.path.ends_with(".yml") || entry.path.ends_with(".yaml"))) {
            push(ArtifactKind::ci_pipeline, std::nullopt);
            continue;
        }
        if (base == "package.json") {
            push(ArtifactKind::build_manifest, Language::js_ts);
            continue;
        }
        if (base == "pom.xml" || base == "build.gradle") {
            push(ArtifactKind::build_manifest, Language::java);
            continue;
        }
        if (base == "Cargo.toml") {
            push(ArtifactKind::build_manifest, Language::rust);
            continue;
        }
        if (base == "go.mod") {
            push(ArtifactKind::build_manifest, Language::go);
            continue;
        }
        if (base == "setup.py" || base == "pyproject.toml" ||
            detail::glob_match("requirements*.txt", base)) {
            push(ArtifactKind::build_manifest, Language::python);
            continue;
        }
        if (base == "poetry.lock") {
            push(ArtifactKind::lockfile, Language::python);
            continue;
        }
        if (base == "Cargo.lock") {
            push(ArtifactKind::lockfile, Language::rust);
            continue;
        }
        if (base == "package-lock.json" || base == "yarn.lock") {
            push(ArtifactKind::lockfile, Language::js_ts);
            continue;
        }
        if (base == "go.sum") {
            push(ArtifactKind::lockfile, Language::go);
            continue;
        }
        if (detail::is_readme(base)) {
            push(ArtifactKind::readme, std::nullopt);
            continue;
        }
        bool in_test_dir = detail::path_component_equals(entry.path, "tests") ||
                           detail::path_component_equals(entry.path, "test");
        bool test_named = detail::glob_match("test_*.py", base) ||
                          detail::glob_match("*_test.py", base) ||
                          detail::glob_match("*_test.go", base) ||
                          detail::glob_match("*.test.js", base) ||
                          detail::glob_match("*.test.ts", base) ||
                          detail::glob_match("*Test.java", base);
        if (in_test_dir || test_named) {
            push(ArtifactKind::test_script, entry.language);
            continue;
        }
    }
    return artifacts;
}

inline LanguageProfile dominant_language(const Repository& repo) {
    LanguageProfile profile;
    for (const auto& entry : repo.files) {
        if (entry.is_code && entry.language) {
            profile.bytes_per_language[*entry.language] += entry.size;
        }
    }
    if (profile.bytes_per_language.empty()) {
        throw Error(Errc::undetectable_language, repo.name);
    }
    // argmax; ties broken by lexicographically smallest tag
    std::uint64_t best = 0;
    std::string best_tag;
    for (const auto& [lang, bytes] : profile.bytes_per_language) {
        auto tag = std::string(to_string(lang));
        if (bytes > best || (bytes == best && (best_tag.empty() || tag < best_tag))) {
            best = bytes;
            best_tag = tag;
            profile.dominant = lang;
        }
    }
    return profile;
}

namespace detail {

struct TreeNode {
    std::map<std::string, TreeNode> dirs;
    std::vector<std::string> files;  // basenames, sorted on build

    std::size_t descendant_count() const {
        std::size_t n = files.size();
        for (const auto& [_, child] : dirs) n += 1 + child.descendant_count();
        return n;
    }
};

inline void render_tree(const TreeNode& node, const std::string& prefix, int level,
                        int max_depth, bool highlight,
                        const std::set<std::string>& marked, const std::string& dir_path,
                        std::string& out) {
    struct Row {
        std::string label;
        const TreeNode* dir = nullptr;  // null for files
        std::string rel;
    };
    std::vector<Row> rows;
    for (const auto& [name, child] : node.dirs) {
        rows.push_back({name + "/", &child, dir_path.empty() ? name : dir_path + "/" + name});
    }
    for (const auto& file : node.files) {
        rows.push_back({file, nullptr, dir_path.empty() ? file : dir_path + "/" + file});
    }

    for (std::size_t i = 0; i < rows.size(); ++i) {
        bool last = (i + 1 == rows.size());
        const auto& row = rows[i];
        out += prefix;
        out += last ? "└── " : "├── ";
        out += row.label;
        if (highlight && !row.dir && marked.count(row.rel)) out += " *";
        out += '\n';
        if (row.dir) {
            auto child_prefix = prefix + (last ? "    " : "│   ");
            if (level + 1 < max_depth) {
                render_tree(*row.dir, child_prefix, level + 1, max_depth, highlight, marked,
                            row.rel, out);
            } else {
                auto hidden = row.dir->descendant_count();
                if (hidden > 0) {
                    out += child_prefix + "└── (+" + std::to_string(hidden) + " more)\n";
                }
            }
        }
    }
}

} // namespace detail

/// Renders the inventory as a tree. Entries deeper than `depth` are collapsed
/// into a "(+N more)" row. With `highlight`, configuration-artifact files
/// (README, manifests, Dockerfiles, ...) are marked with " *".
inline std::string directory_tree(const Repository& repo, int depth, bool highlight) {
    if (depth < 1) throw Error(Errc::invalid_arguments, "depth must be >= 1");

    detail::TreeNode root;
    for (const auto& entry : repo.files) {
        detail::TreeNode* node = &root;
        std::string_view rest = entry.path;
        while (true) {
            auto slash = rest.find('/');
            if (slash == std::string_view::npos) {
                node->files.emplace_back(rest);
                break;
            }
            node = &node->dirs[std::string(rest.substr(0, slash))];
            rest = rest.substr(slash + 1);
        }
    }

    std::set<std::string> marked;
    if (highlight) {
        for (const auto& artifact : detect_artifacts(repo)) {
            if (artifact.kind != ArtifactKind::test_script) marked.insert(artifact.path);
        }
    }

    std::string out = repo.name + "/\n";
    detail::render_tree(root, "", 0, depth, highlight, marked, "", out);
    return out;
}

namespace detail {

inline const std::vector<std::regex>& outline_patterns(std::optional<Language> lang) {
    static const std::vector<std::regex> python = {
        std::regex(R"(^\s*(def|class)\s+\w+.*$)"),
    };
    static const std::vector<std::regex> js_ts = {
        std::regex(R"(^\s*(export\s+)?(default\s+)?(async\s+)?function\s*\*?\s*\w+.*$)"),
        std::regex(R"(^\s*(export\s+)?(abstract\s+)?class\s+\w+.*$)"),
        std::regex(R"(^\s*(export\s+)?(interface|enum)\s+\w+.*$)"),
        std::regex(R"(^\s*(export\s+)?type\s+\w+\s*=.*$)"),
        std::regex(R"(^\s*(export\s+)?const\s+\w+\s*=\s*(async\s*)?\(.*=>.*$)"),
    };
    static const std::vector<std::regex> rust = {
        std::regex(R"(^\s*(pub(\(\w+\))?\s+)?(async\s+)?(unsafe\s+)?fn\s+\w+.*$)"),
        std::regex(R"(^\s*(pub(\(\w+\))?\s+)?(struct|enum|trait|mod)\s+\w+.*$)"),
        std::regex(R"(^\s*impl\b.*$)"),
    };
    static const std::vector<std::regex> java = {
        std::regex(R"(^\s*(public|protected|private)?\s*(static\s+)?(final\s+)?(abstract\s+)?(class|interface|enum|record)\s+\w+.*$)"),
        std::regex(R"(^\s*(public|protected|private)\s+[\w<>\[\],\s]+\s+\w+\s*\(.*$)"),
    };
    static const std::vector<std::regex> go = {
        std::regex(R"(^func\s+.*$)"),
        std::regex(R"(^type\s+\w+\s+(struct|interface)\b.*$)"),
    };
    // regex heuristics for unsupported languages
    static const std::vector<std::regex> fallback = {
        std::regex(R"(^\s*(class|struct|enum|interface|def|fn|func|function)\s+\w+.*$)"),
        std::regex(R"(^[A-Za-z_][\w:<>~&*\s]*\s+\w+\s*\([^;]*\)\s*\{?\s*$)"),
    };

    if (!lang) return fallback;
    switch (*lang) {
        case Language::python: return python;
        case Language::js_ts: return js_ts;
        case Language::rust: return rust;
        case Language::java: return java;
        case Language::go: return go;
        case Language::other: return fallback;
    }
    return fallback;
}

inline void outline_one_file(const Repository& repo, const FileEntry& entry,
                             bool line_numbers, std::string& out) {
    auto abs = repo.absolute(entry.path);
    if (!is_text_file(abs)) throw Error(Errc::not_text, entry.path);
    const auto& patterns = outline_patterns(entry.language);
    auto lines = split_lines(read_text_file(abs));
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (const auto& pattern : patterns) {
            if (std::regex_match(lines[i], pattern)) {
                std::string sig = lines[i];
                // trim trailing whitespace
                while (!sig.empty() && (sig.back() == ' ' || sig.back() == '\t' ||
                                        sig.back() == '\r')) {
                    sig.pop_back();
                }
                if (line_numbers) out += std::to_string(i + 1) + ": ";
                out += sig + "\n";
                break;
            }
        }
    }
}

} // namespace detail

/// Signature outline for a file or directory. Directories list their code
/// files in path order; `recursive` includes nested directories.
inline std::string code_outline(const Repository& repo, const std::string& target,
                                bool recursive, bool line_numbers) {
    auto abs = repo.absolute(target);
    std::error_code ec;
    if (!fs::exists(abs, ec)) throw Error(Errc::invalid_arguments, "no such path: " + target);

    std::string normalized = fs::path(target).generic_string();
    while (normalized.starts_with("./")) normalized = normalized.substr(2);

    std::string out;
    if (fs::is_regular_file(abs, ec)) {
        const auto* entry = repo.find(normalized);
        if (!entry) throw Error(Errc::invalid_arguments, "path not in inventory: " + target);
        detail::outline_one_file(repo, *entry, line_numbers, out);
        return out;
    }

    std::string prefix = normalized.empty() || normalized == "." ? "" : normalized + "/";
    for (const auto& entry : repo.files) {
        if (!entry.is_code) continue;
        if (!entry.path.starts_with(prefix)) continue;
        auto rest = std::string_view(entry.path).substr(prefix.size());
        if (!recursive && rest.find('/') != std::string_view::npos) continue;
        std::string section;
        detail::outline_one_file(repo, entry, line_numbers, section);
        if (!section.empty()) {
            out += "== " + entry.path + " ==\n" + section;
        }
    }
    return out;
}

struct SearchHit {
    std::string path;
    std::size_t line = 0;  // 1-based
    std::string excerpt;
};

enum class SearchMode { detailed, simple };

/// Literal-substring search over code and README entries. Results ordered by
/// (path, line). Detailed mode includes two lines of context on each side.
inline std::vector<SearchHit> search_code(const Repository& repo, const std::string& query,
                                          SearchMode mode) {
    if (query.empty()) throw Error(Errc::invalid_arguments, "empty query");

    std::vector<SearchHit> hits;
    for (const auto& entry : repo.files) {
        bool searchable = entry.is_code || detail::is_readme(detail::basename_of(entry.path));
        if (!searchable) continue;
        auto abs = repo.absolute(entry.path);
        if (!is_text_file(abs)) continue;
        auto lines = split_lines(read_text_file(abs));
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (lines[i].find(query) == std::string::npos) continue;
            SearchHit hit;
            hit.path = entry.path;
            hit.line = i + 1;
            if (mode == SearchMode::simple) {
                hit.excerpt = lines[i];
            } else {
                std::size_t from = i >= 2 ? i - 2 : 0;
                std::size_t to = std::min(lines.size() - 1, i + 2);
                for (std::size_t k = from; k <= to; ++k) {
                    hit.excerpt += std::to_string(k + 1) + (k == i ? "> " : ": ") + lines[k];
                    if (k != to) hit.excerpt += '\n';
                }
            }
            hits.push_back(std::move(hit));
        }
    }
    return hits;
}

} // namespace envforge

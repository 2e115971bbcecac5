// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace envforge {

/// Closed set of error conditions raised across the pipeline. Each maps to
/// exactly one CLI exit code (see cli/commands.hpp).
enum class Errc {
    unreadable_root,
    empty_repository,
    undetectable_language,
    not_text,
    already_registered,
    unsupported_language,
    plugin_mismatch,
    spec_parse_failure,
    llm_unavailable,
    no_candidates,
    build_failure,
    engine_unavailable,
    sandbox_create_failure,
    invalid_state,
    global_timeout,
    sandbox_lost,
    version_switch_unsupported,
    rolled_back,
    finalize_failure,
    budget_exceeded,
    fixture_drift,
    unparseable,
    bad_range,
    no_match,
    nothing_to_run,
    runner_absent,
    no_ci,
    issue_db_unavailable,
    invalid_arguments,
    unsupported_trace,
    undefined_essr,
    empty_report,
    io_error,
};

inline std::string_view to_string(Errc code) {
    switch (code) {
        case Errc::unreadable_root: return "unreadable-root";
        case Errc::empty_repository: return "empty-repository";
        case Errc::undetectable_language: return "undetectable-language";
        case Errc::not_text: return "not-text";
        case Errc::already_registered: return "already-registered";
        case Errc::unsupported_language: return "unsupported-language";
        case Errc::plugin_mismatch: return "plugin-mismatch";
        case Errc::spec_parse_failure: return "spec-parse-failure";
        case Errc::llm_unavailable: return "llm-unavailable";
        case Errc::no_candidates: return "no-candidates";
        case Errc::build_failure: return "build-failure";
        case Errc::engine_unavailable: return "engine-unavailable";
        case Errc::sandbox_create_failure: return "sandbox-create-failure";
        case Errc::invalid_state: return "invalid-state";
        case Errc::global_timeout: return "global-timeout";
        case Errc::sandbox_lost: return "sandbox-lost";
        case Errc::version_switch_unsupported: return "version-switch-unsupported";
        case Errc::rolled_back: return "rolled-back";
        case Errc::finalize_failure: return "finalize-failure";
        case Errc::budget_exceeded: return "budget-exceeded";
        case Errc::fixture_drift: return "fixture-drift";
        case Errc::unparseable: return "unparseable";
        case Errc::bad_range: return "bad-range";
        case Errc::no_match: return "no-match";
        case Errc::nothing_to_run: return "nothing-to-run";
        case Errc::runner_absent: return "runner-absent";
        case Errc::no_ci: return "no-ci";
        case Errc::issue_db_unavailable: return "issue-db-unavailable";
        case Errc::invalid_arguments: return "invalid-arguments";
        case Errc::unsupported_trace: return "unsupported-trace";
        case Errc::undefined_essr: return "undefined-essr";
        case Errc::empty_report: return "empty-report";
        case Errc::io_error: return "io-error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    explicit Error(Errc code) : Error(code, "") {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace envforge

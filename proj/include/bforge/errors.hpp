#pragma once

#include <stdexcept>
#include <string>

namespace bforge {

// Every failure the library reports, so the CLI can map kinds to exit codes.
enum class Errc {
    // domain / parsing
    NoJsonBlock,
    DuplicateKey,
    MissingFinalAnswerKey,
    ExecutionParseError,
    Malformed,
    // backends
    Transport,
    Protocol,
    CassetteMiss,
    ScriptExhausted,
    EmptyResponse,
    // extraction / evaluation
    NoAnswerFound,
    EmptyDevSet,
    // pipeline
    InsufficientValidPlans,
    NoCorrectExecutionAnywhere,
    NoExpandableNode,
    EmptyDemoList,
    // harness / artifacts
    Io,
    TooSmall,
    MissingArtifact,
    Usage,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

// Exit codes documented in the README: 0 ok, 2 usage, 3 backend/transport,
// 4 parse/validation, 5 pipeline infeasible.
int exit_code_for(Errc code);

}  // namespace bforge

#include "bforge/errors.hpp"

namespace bforge {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::NoJsonBlock: return "NoJsonBlock";
        case Errc::DuplicateKey: return "DuplicateKey";
        case Errc::MissingFinalAnswerKey: return "MissingFinalAnswerKey";
        case Errc::ExecutionParseError: return "ExecutionParseError";
        case Errc::Malformed: return "Malformed";
        case Errc::Transport: return "Transport";
        case Errc::Protocol: return "Protocol";
        case Errc::CassetteMiss: return "CassetteMiss";
        case Errc::ScriptExhausted: return "ScriptExhausted";
        case Errc::EmptyResponse: return "EmptyResponse";
        case Errc::NoAnswerFound: return "NoAnswerFound";
        case Errc::EmptyDevSet: return "EmptyDevSet";
        case Errc::InsufficientValidPlans: return "InsufficientValidPlans";
        case Errc::NoCorrectExecutionAnywhere: return "NoCorrectExecutionAnywhere";
        case Errc::NoExpandableNode: return "NoExpandableNode";
        case Errc::EmptyDemoList: return "EmptyDemoList";
        case Errc::Io: return "Io";
        case Errc::TooSmall: return "TooSmall";
        case Errc::MissingArtifact: return "MissingArtifact";
        case Errc::Usage: return "Usage";
    }
    return "Error";
}

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::Usage:
            return 2;
        case Errc::Transport:
        case Errc::Protocol:
        case Errc::CassetteMiss:
        case Errc::ScriptExhausted:
        case Errc::EmptyResponse:
            return 3;
        case Errc::InsufficientValidPlans:
        case Errc::NoCorrectExecutionAnywhere:
        case Errc::NoExpandableNode:
            return 5;
        default:
            return 4;
    }
}

}  // namespace bforge

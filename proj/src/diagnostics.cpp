#include "asmq/diagnostics.hpp"

namespace asmq {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::BadToken: return "BadToken";
    case Errc::UnknownMnemonic: return "UnknownMnemonic";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::UnsupportedInstruction: return "UnsupportedInstruction";
    case Errc::OracleStructure: return "OracleStructure";
    case Errc::DuplicateRegister: return "DuplicateRegister";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::OverlappingRanges: return "OverlappingRanges";
    case Errc::WidthMismatch: return "WidthMismatch";
    case Errc::MissingCarrySource: return "MissingCarrySource";
    case Errc::MissingMemoryValue: return "MissingMemoryValue";
    case Errc::RewriteInCoherentMode: return "RewriteInCoherentMode";
    case Errc::TooManyQubits: return "TooManyQubits";
    case Errc::FileNotFound: return "FileNotFound";
    }
    return "Unknown";
}

CompileError::CompileError(Errc code, const std::string& message, int line)
    : std::runtime_error(message), code_(code), line_(line) {}

void fail(Errc code, const std::string& message, int line) {
    throw CompileError(code, message, line);
}

} // namespace asmq

#pragma once

#include <stdexcept>
#include <string>

namespace asmq {

enum class Errc {
    MalformedHeader,
    OutOfRange,
    BadToken,
    UnknownMnemonic,
    ArityMismatch,
    UnsupportedInstruction,
    OracleStructure,
    DuplicateRegister,
    IndexOutOfRange,
    NotInvertible,
    OverlappingRanges,
    WidthMismatch,
    MissingCarrySource,
    MissingMemoryValue,
    RewriteInCoherentMode,
    TooManyQubits,
    FileNotFound,
};

const char* errc_name(Errc code);

/// Diagnostic carrying an error code and (when known) a 1-based source line.
class CompileError : public std::runtime_error {
public:
    CompileError(Errc code, const std::string& message, int line = 0);

    Errc code() const { return code_; }
    int line() const { return line_; }
    void set_line(int line) { line_ = line; }

private:
    Errc code_;
    int line_;
};

[[noreturn]] void fail(Errc code, const std::string& message, int line = 0);

} // namespace asmq

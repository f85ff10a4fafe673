#pragma once

#include "asmq/lowering.hpp"
#include "asmq/parser.hpp"
#include "asmq/simulator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace asmq {

/// CLI-level overrides; set fields win over the JSON header, which wins over
/// built-in defaults.
struct Overrides {
    std::optional<int> shots;
    std::optional<std::uint64_t> seed;
    std::optional<DisplayMode> display;
    std::optional<bool> execute;
    std::optional<bool> decode;
    std::optional<bool> maintain_coherence;
};

struct RunReport {
    Config config;
    std::vector<std::string> warnings;
    std::vector<TraceEntry> decode_trace;        // populated when config.decode
    std::optional<std::string> qasm;             // populated when display wants QASM
    std::optional<std::string> diagram;          // populated when display wants text
    std::optional<sim::Histogram> histogram;     // populated when config.execute
    sim::ClassicalLayout layout;
    Lowered lowered;
};

/// Parse + lower + (optionally) emit and simulate one source text. Programs
/// that execute without any explicit STR get every named register measured
/// into an implicit classical register at the end.
RunReport run_source(const std::string& source, const Overrides& overrides = {});

/// Always produces QASM regardless of the display setting (for --emit-qasm).
std::string qasm_of(const RunReport& report);

/// Histogram lines `bitstring: count`, sorted by count descending then
/// bitstring ascending, annotated with the decimal value of each classical
/// register.
std::vector<std::string> format_histogram(const sim::Histogram& histogram,
                                          const sim::ClassicalLayout& layout);

std::vector<std::string> format_trace(const std::vector<TraceEntry>& trace);

} // namespace asmq

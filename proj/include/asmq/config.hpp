#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace asmq {

enum class DisplayMode { None, Text, Qasm, Both };

const char* display_mode_name(DisplayMode mode);

/// Program options, read from the JSON header block and overridable from the CLI.
struct Config {
    int register_size = 2;        // qubits per register, 1..8
    bool decode = false;          // print the per-instruction lowering trace
    bool execute = true;          // run the simulator
    DisplayMode display = DisplayMode::Text;
    int shots = 1024;
    std::uint64_t seed = 0;
    bool maintain_coherence = false; // fresh ancillas + uncomputation instead of resets
    int grover_iterations = 1;       // repetitions of the ORACLE..DIF span
    std::map<std::uint64_t, std::uint64_t> memory; // address -> value, consumed by LDR

    bool operator==(const Config&) const = default;
};

} // namespace asmq

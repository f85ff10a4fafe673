#pragma once

#include "asmq/circuit.hpp"
#include "asmq/register_file.hpp"

#include <string>

namespace asmq {

struct DecomposeResult {
    QuantumCircuit circuit; // gates restricted to x/h/z/cx/ccx/swap/reset/measure/barrier
    int original_qubits = 0; // extra qubits beyond this index are V-chain ancillas
};

/// Rewrites the circuit into the QASM-expressible gate set: negated controls
/// become X sandwiches, MCZ becomes H-MCT-H on its target, and MCTs with more
/// than two controls are expanded into a Toffoli V-chain over clean helper
/// qubits appended to the circuit.
DecomposeResult decompose_for_qasm(const QuantumCircuit& circuit);

/// OpenQASM 2.0 serialization. Deterministic: identical circuits produce
/// byte-identical output. Named registers map to lower-case qregs, ancillas
/// group into `anc`, the oracle target into `tgt`, V-chain helpers into `vch`.
std::string emit_qasm(const QuantumCircuit& circuit, const RegisterFile& regs);

/// Plain-text circuit diagram: one row per qubit, one column per gate,
/// barriers drawn as full-height vertical lines.
std::string emit_text_diagram(const QuantumCircuit& circuit, const RegisterFile& regs);

} // namespace asmq

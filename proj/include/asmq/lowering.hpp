#pragma once

#include "asmq/circuit.hpp"
#include "asmq/instruction.hpp"
#include "asmq/register_file.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace asmq {

enum class Mode { Reset, Coherent };

/// A register view over arbitrary qubit indices; bit 0 is the least
/// significant. Named registers are contiguous, pooled temporaries are not.
struct Wires {
    std::vector<Qubit> qs;

    Wires() = default;
    Wires(std::vector<Qubit> v) : qs(std::move(v)) {}
    Wires(QubitRange r) {
        qs.reserve(static_cast<std::size_t>(r.size));
        for (int i = 0; i < r.size; ++i)
            qs.push_back(r[i]);
    }

    int size() const { return static_cast<int>(qs.size()); }
    Qubit operator[](int bit) const { return qs[static_cast<std::size_t>(bit)]; }
    Qubit msb() const { return qs.back(); }
    bool overlaps(const Wires& other) const {
        for (Qubit a : qs)
            for (Qubit b : other.qs)
                if (a == b)
                    return true;
        return false;
    }
};

/// Shared state threaded through the instruction builders: the circuit under
/// construction, the register file, and the lowering mode. Temporaries are
/// acquired from the clean-ancilla pool and disposed per mode (segment
/// inversion when maintaining coherence, Reset otherwise).
struct BuildContext {
    QuantumCircuit& circuit;
    RegisterFile& regs;
    Mode mode = Mode::Reset;
    /// Qubit cap applied to coherent-mode rebinds (set when execution is
    /// requested; rebinding past it raises RewriteInCoherentMode).
    std::optional<int> qubit_budget;

    bool coherent() const { return mode == Mode::Coherent; }

    std::size_t mark() const { return circuit.gates().size(); }

    std::vector<Qubit> acquire(int count) { return regs.acquire_ancillas(circuit, count); }
    Qubit acquire_one() { return acquire(1)[0]; }
    void release_clean(std::span<const Qubit> qubits) { regs.release_ancillas(qubits); }

    /// Disposes of temporaries computed by gates [span_begin, span_end):
    /// coherent mode appends the inverted segment, reset mode appends Reset
    /// on each temp qubit. The qubits are returned to the pool either way.
    void dispose(std::size_t span_begin, std::size_t span_end, std::span<const Qubit> temps);

    // gate shorthands
    void x(Qubit t);
    void h(Qubit t);
    void z(Qubit t);
    void cx(Qubit c, Qubit t);
    void ccx(Qubit c0, Qubit c1, Qubit t);
    void mct(std::vector<Qubit> controls, std::vector<Qubit> negated, Qubit t);
    void mcz(std::vector<Qubit> controls, Qubit t);
    void swap(Qubit a, Qubit b);
    void reset(Qubit t);
    void barrier();
    void measure(Qubit q, int bit);
};

struct TraceEntry {
    std::string text;
    int gate_count = 0;
    std::vector<Qubit> qubits_touched;
    int cumulative_qubits = 0;
};

struct Lowered {
    QuantumCircuit circuit;
    RegisterFile regs;
    std::vector<TraceEntry> trace;
};

/// Lowers a parsed program to a quantum circuit. When the program requests
/// execution, coherent-mode rebinds are capped at the simulator's qubit
/// limit.
Lowered lower_program(const Program& program);

} // namespace asmq

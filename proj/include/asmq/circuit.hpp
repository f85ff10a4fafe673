#pragma once

#include <span>
#include <string>
#include <vector>

namespace asmq {

using Qubit = int;

struct Gate {
    enum class Kind { X, H, Z, CX, Swap, Mct, Mcz, Reset, Measure, Barrier };

    Kind kind = Kind::X;
    Qubit target = 0;                // unused by Barrier
    std::vector<Qubit> controls;     // CX: exactly one; Mct/Mcz: any number
    std::vector<Qubit> negated;      // negated controls, Mct only
    Qubit swap_partner = -1;         // Swap
    int classical_bit = -1;          // Measure

    bool is_unitary() const { return kind != Kind::Reset && kind != Kind::Measure; }

    static Gate x(Qubit t);
    static Gate h(Qubit t);
    static Gate z(Qubit t);
    static Gate cx(Qubit control, Qubit t);
    static Gate ccx(Qubit c0, Qubit c1, Qubit t);
    static Gate mct(std::vector<Qubit> controls, std::vector<Qubit> negated, Qubit t);
    static Gate mcz(std::vector<Qubit> controls, Qubit t);
    static Gate swap(Qubit a, Qubit b);
    static Gate reset(Qubit t);
    static Gate measure(Qubit t, int classical_bit);
    static Gate barrier();

    bool operator==(const Gate&) const = default;
};

/// Ordered gate list over indexed qubits. Qubit allocation is monotone and
/// appending never reorders existing gates.
class QuantumCircuit {
public:
    int qubit_count() const { return qubit_count_; }
    int classical_bit_count() const { return classical_bit_count_; }
    const std::vector<Gate>& gates() const { return gates_; }

    /// Extends the circuit by `count` fresh |0> qubits labeled
    /// `label_prefix[i]`; returns the first new index.
    int allocate_qubits(int count, const std::string& label_prefix);
    int allocate_classical_bits(int count);

    /// Appends after validating all indices. Throws IndexOutOfRange.
    void append(Gate gate);

    const std::string& label(Qubit q) const;
    bool has_measurement() const;
    bool has_reset() const;
    int count_gates(Gate::Kind kind) const;

private:
    int qubit_count_ = 0;
    int classical_bit_count_ = 0;
    std::vector<Gate> gates_;
    std::vector<std::string> labels_;
};

/// Reverses a Reset/Measure-free gate segment. Every gate in the supported
/// set is self-inverse, so reversal alone inverts the segment. Throws
/// NotInvertible if a Reset or Measure is present.
std::vector<Gate> invert_segment(std::span<const Gate> segment);

} // namespace asmq

#include "asmq/circuit.hpp"

#include "asmq/diagnostics.hpp"

#include <algorithm>
#include <set>

namespace asmq {

Gate Gate::x(Qubit t) { return {Kind::X, t, {}, {}, -1, -1}; }
Gate Gate::h(Qubit t) { return {Kind::H, t, {}, {}, -1, -1}; }
Gate Gate::z(Qubit t) { return {Kind::Z, t, {}, {}, -1, -1}; }
Gate Gate::cx(Qubit control, Qubit t) { return {Kind::CX, t, {control}, {}, -1, -1}; }
Gate Gate::ccx(Qubit c0, Qubit c1, Qubit t) { return {Kind::Mct, t, {c0, c1}, {}, -1, -1}; }

Gate Gate::mct(std::vector<Qubit> controls, std::vector<Qubit> negated, Qubit t) {
    return {Kind::Mct, t, std::move(controls), std::move(negated), -1, -1};
}

Gate Gate::mcz(std::vector<Qubit> controls, Qubit t) {
    return {Kind::Mcz, t, std::move(controls), {}, -1, -1};
}

Gate Gate::swap(Qubit a, Qubit b) { return {Kind::Swap, a, {}, {}, b, -1}; }
Gate Gate::reset(Qubit t) { return {Kind::Reset, t, {}, {}, -1, -1}; }
Gate Gate::measure(Qubit t, int classical_bit) { return {Kind::Measure, t, {}, {}, -1, classical_bit}; }
Gate Gate::barrier() { return {Kind::Barrier, -1, {}, {}, -1, -1}; }

int QuantumCircuit::allocate_qubits(int count, const std::string& label_prefix) {
    const int start = qubit_count_;
    for (int i = 0; i < count; ++i)
        labels_.push_back(label_prefix + "[" + std::to_string(i) + "]");
    qubit_count_ += count;
    return start;
}

int QuantumCircuit::allocate_classical_bits(int count) {
    const int start = classical_bit_count_;
    classical_bit_count_ += count;
    return start;
}

void QuantumCircuit::append(Gate gate) {
    auto check_index = [&](Qubit q, const char* what) {
        if (q < 0 || q >= qubit_count_)
            fail(Errc::IndexOutOfRange, std::string(what) + " index " + std::to_string(q) +
                                            " is outside the circuit (" +
                                            std::to_string(qubit_count_) + " qubit(s))");
    };

    if (gate.kind != Gate::Kind::Barrier) {
        check_index(gate.target, "target");
        std::set<Qubit> seen{gate.target};
        for (Qubit c : gate.controls) {
            check_index(c, "control");
            if (!seen.insert(c).second)
                fail(Errc::IndexOutOfRange,
                     "control list is not duplicate-free or contains the target");
        }
        for (Qubit c : gate.negated) {
            check_index(c, "negated control");
            if (!seen.insert(c).second)
                fail(Errc::IndexOutOfRange,
                     "control list is not duplicate-free or contains the target");
        }
        if (gate.kind == Gate::Kind::Swap) {
            check_index(gate.swap_partner, "swap partner");
            if (gate.swap_partner == gate.target)
                fail(Errc::IndexOutOfRange, "swap partner equals the target");
        }
        if (gate.kind == Gate::Kind::Measure &&
            (gate.classical_bit < 0 || gate.classical_bit >= classical_bit_count_))
            fail(Errc::IndexOutOfRange, "classical bit index " +
                                            std::to_string(gate.classical_bit) +
                                            " is outside the circuit");
    }
    gates_.push_back(std::move(gate));
}

const std::string& QuantumCircuit::label(Qubit q) const {
    return labels_.at(static_cast<std::size_t>(q));
}

bool QuantumCircuit::has_measurement() const {
    return std::any_of(gates_.begin(), gates_.end(),
                       [](const Gate& g) { return g.kind == Gate::Kind::Measure; });
}

bool QuantumCircuit::has_reset() const {
    return std::any_of(gates_.begin(), gates_.end(),
                       [](const Gate& g) { return g.kind == Gate::Kind::Reset; });
}

int QuantumCircuit::count_gates(Gate::Kind kind) const {
    return static_cast<int>(
        std::count_if(gates_.begin(), gates_.end(),
                      [kind](const Gate& g) { return g.kind == kind; }));
}

std::vector<Gate> invert_segment(std::span<const Gate> segment) {
    for (const Gate& gate : segment)
        if (!gate.is_unitary())
            fail(Errc::NotInvertible,
                 "segment contains a Reset or Measure gate and cannot be inverted");
    std::vector<Gate> inverted(segment.rbegin(), segment.rend());
    return inverted;
}

} // namespace asmq

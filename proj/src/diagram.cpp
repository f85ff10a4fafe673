#include "asmq/emitter.hpp"

#include <algorithm>
#include <sstream>

namespace asmq {

namespace {

struct Column {
    std::vector<char> cells; // one per qubit row

    explicit Column(int qubits) : cells(static_cast<std::size_t>(qubits), '-') {}

    void set(Qubit q, char glyph) { cells[static_cast<std::size_t>(q)] = glyph; }

    // Vertical connector through otherwise idle rows between lo and hi.
    void connect(Qubit lo, Qubit hi) {
        for (Qubit q = lo; q <= hi; ++q)
            if (cells[static_cast<std::size_t>(q)] == '-')
                cells[static_cast<std::size_t>(q)] = '|';
    }
};

} // namespace

std::string emit_text_diagram(const QuantumCircuit& circuit, const RegisterFile& regs) {
    (void)regs;
    const int qubits = circuit.qubit_count();
    std::vector<Column> columns;
    columns.reserve(circuit.gates().size());

    for (const Gate& gate : circuit.gates()) {
        Column col(qubits);
        switch (gate.kind) {
        case Gate::Kind::Barrier:
            for (Qubit q = 0; q < qubits; ++q)
                col.set(q, '|');
            break;
        case Gate::Kind::X:
        case Gate::Kind::CX:
        case Gate::Kind::Mct: {
            col.set(gate.target, 'X');
            Qubit lo = gate.target;
            Qubit hi = gate.target;
            for (Qubit c : gate.controls) {
                col.set(c, '*');
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            for (Qubit c : gate.negated) {
                col.set(c, 'o');
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            col.connect(lo, hi);
            break;
        }
        case Gate::Kind::H:
            col.set(gate.target, 'H');
            break;
        case Gate::Kind::Z:
        case Gate::Kind::Mcz: {
            col.set(gate.target, 'Z');
            Qubit lo = gate.target;
            Qubit hi = gate.target;
            for (Qubit c : gate.controls) {
                col.set(c, '*');
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            col.connect(lo, hi);
            break;
        }
        case Gate::Kind::Swap: {
            col.set(gate.target, 'x');
            col.set(gate.swap_partner, 'x');
            col.connect(std::min(gate.target, gate.swap_partner),
                        std::max(gate.target, gate.swap_partner));
            break;
        }
        case Gate::Kind::Reset:
            col.set(gate.target, 'R');
            break;
        case Gate::Kind::Measure:
            col.set(gate.target, 'M');
            break;
        }
        columns.push_back(std::move(col));
    }

    std::size_t label_width = 0;
    for (Qubit q = 0; q < qubits; ++q)
        label_width = std::max(label_width, circuit.label(q).size());

    std::ostringstream out;
    for (Qubit q = 0; q < qubits; ++q) {
        const std::string& label = circuit.label(q);
        out << label << std::string(label_width - label.size(), ' ') << ": ";
        out << '-';
        for (const Column& col : columns) {
            out << col.cells[static_cast<std::size_t>(q)] << '-';
        }
        out << '\n';
    }
    return out.str();
}

} // namespace asmq

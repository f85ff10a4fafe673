#include "asmq/emitter.hpp"

#include "asmq/diagnostics.hpp"

#include <map>
#include <sstream>

namespace asmq {

namespace {

// Toffoli cascade computing the AND of all controls onto the target, using
// clean helper qubits; helpers are uncomputed symmetrically.
void expand_mct(QuantumCircuit& out, const std::vector<Qubit>& controls, Qubit target,
                const std::vector<Qubit>& helpers) {
    const int k = static_cast<int>(controls.size());
    if (k == 0) {
        out.append(Gate::x(target));
        return;
    }
    if (k == 1) {
        out.append(Gate::cx(controls[0], target));
        return;
    }
    if (k == 2) {
        out.append(Gate::ccx(controls[0], controls[1], target));
        return;
    }
    std::vector<Gate> compute;
    compute.push_back(Gate::ccx(controls[0], controls[1], helpers[0]));
    for (int j = 2; j <= k - 2; ++j)
        compute.push_back(Gate::ccx(controls[static_cast<std::size_t>(j)],
                                    helpers[static_cast<std::size_t>(j) - 2],
                                    helpers[static_cast<std::size_t>(j) - 1]));
    for (const Gate& g : compute)
        out.append(g);
    out.append(Gate::ccx(controls[static_cast<std::size_t>(k) - 1],
                         helpers[static_cast<std::size_t>(k) - 3], target));
    for (auto it = compute.rbegin(); it != compute.rend(); ++it)
        out.append(*it);
}

} // namespace

DecomposeResult decompose_for_qasm(const QuantumCircuit& circuit) {
    // Worst-case helper count over all multi-controlled gates.
    int helpers_needed = 0;
    for (const Gate& gate : circuit.gates()) {
        int controls = 0;
        if (gate.kind == Gate::Kind::Mct || gate.kind == Gate::Kind::Mcz)
            controls = static_cast<int>(gate.controls.size() + gate.negated.size());
        helpers_needed = std::max(helpers_needed, controls - 2);
    }

    DecomposeResult result;
    result.original_qubits = circuit.qubit_count();
    QuantumCircuit& out = result.circuit;
    out.allocate_qubits(circuit.qubit_count(), "q");
    out.allocate_classical_bits(circuit.classical_bit_count());
    std::vector<Qubit> helpers;
    if (helpers_needed > 0) {
        const int start = out.allocate_qubits(helpers_needed, "vch");
        for (int i = 0; i < helpers_needed; ++i)
            helpers.push_back(start + i);
    }

    for (const Gate& gate : circuit.gates()) {
        switch (gate.kind) {
        case Gate::Kind::X:
        case Gate::Kind::H:
        case Gate::Kind::Z:
        case Gate::Kind::CX:
        case Gate::Kind::Swap:
        case Gate::Kind::Reset:
        case Gate::Kind::Measure:
        case Gate::Kind::Barrier:
            out.append(gate);
            break;
        case Gate::Kind::Mct: {
            for (Qubit q : gate.negated)
                out.append(Gate::x(q));
            std::vector<Qubit> controls = gate.controls;
            controls.insert(controls.end(), gate.negated.begin(), gate.negated.end());
            expand_mct(out, controls, gate.target, helpers);
            for (Qubit q : gate.negated)
                out.append(Gate::x(q));
            break;
        }
        case Gate::Kind::Mcz:
            out.append(Gate::h(gate.target));
            expand_mct(out, gate.controls, gate.target, helpers);
            out.append(Gate::h(gate.target));
            break;
        }
    }
    return result;
}

namespace {

// Maps every IR qubit to a "<qasm reg>[<offset>]" name. Qubits not covered by
// the register file fall back to a plain `q` register.
struct NameMap {
    std::vector<std::string> qubit_names;
    std::vector<std::pair<std::string, int>> qreg_decls; // name -> width, declaration order

    explicit NameMap(const QuantumCircuit& circuit, const RegisterFile& regs, int vchain) {
        qubit_names.assign(static_cast<std::size_t>(circuit.qubit_count()) +
                               static_cast<std::size_t>(vchain),
                           "");
        std::map<std::string, int> widths;
        std::vector<std::string> order;
        auto add = [&](const std::string& reg, Qubit q) {
            if (!widths.count(reg))
                order.push_back(reg);
            const int offset = widths[reg]++;
            qubit_names[static_cast<std::size_t>(q)] =
                reg + "[" + std::to_string(offset) + "]";
        };
        for (const Allocation& alloc : regs.allocations())
            for (int i = 0; i < alloc.range.size; ++i)
                add(alloc.qasm_name, alloc.range[i]);
        for (int q = 0; q < circuit.qubit_count(); ++q)
            if (qubit_names[static_cast<std::size_t>(q)].empty())
                add("q", q);
        for (int v = 0; v < vchain; ++v)
            add("vch", circuit.qubit_count() + v);
        for (const auto& reg : order)
            qreg_decls.emplace_back(reg, widths[reg]);
    }

    const std::string& operator[](Qubit q) const {
        return qubit_names[static_cast<std::size_t>(q)];
    }
};

} // namespace

std::string emit_qasm(const QuantumCircuit& circuit, const RegisterFile& regs) {
    const DecomposeResult decomposed = decompose_for_qasm(circuit);
    const int vchain = decomposed.circuit.qubit_count() - circuit.qubit_count();
    const NameMap names(circuit, regs, vchain);

    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    for (const auto& [reg, width] : names.qreg_decls)
        out << "qreg " << reg << "[" << width << "];\n";

    std::vector<std::string> cbit_names(
        static_cast<std::size_t>(circuit.classical_bit_count()));
    for (const ClassicalRegister& creg : regs.classical_registers()) {
        out << "creg " << creg.qasm_name << "[" << creg.range.size << "];\n";
        for (int i = 0; i < creg.range.size; ++i)
            cbit_names[static_cast<std::size_t>(creg.range.start + i)] =
                creg.qasm_name + "[" + std::to_string(i) + "]";
    }

    for (const Gate& gate : decomposed.circuit.gates()) {
        switch (gate.kind) {
        case Gate::Kind::X:
            out << "x " << names[gate.target] << ";\n";
            break;
        case Gate::Kind::H:
            out << "h " << names[gate.target] << ";\n";
            break;
        case Gate::Kind::Z:
            out << "z " << names[gate.target] << ";\n";
            break;
        case Gate::Kind::CX:
            out << "cx " << names[gate.controls[0]] << ", " << names[gate.target] << ";\n";
            break;
        case Gate::Kind::Mct:
            out << "ccx " << names[gate.controls[0]] << ", " << names[gate.controls[1]]
                << ", " << names[gate.target] << ";\n";
            break;
        case Gate::Kind::Swap:
            out << "swap " << names[gate.target] << ", " << names[gate.swap_partner] << ";\n";
            break;
        case Gate::Kind::Reset:
            out << "reset " << names[gate.target] << ";\n";
            break;
        case Gate::Kind::Measure:
            out << "measure " << names[gate.target] << " -> "
                << cbit_names[static_cast<std::size_t>(gate.classical_bit)] << ";\n";
            break;
        case Gate::Kind::Barrier: {
            if (names.qreg_decls.empty())
                break;
            out << "barrier";
            for (std::size_t i = 0; i < names.qreg_decls.size(); ++i)
                out << (i ? ", " : " ") << names.qreg_decls[i].first;
            out << ";\n";
            break;
        }
        case Gate::Kind::Mcz:
            break; // decomposed away
        }
    }
    return out.str();
}

} // namespace asmq

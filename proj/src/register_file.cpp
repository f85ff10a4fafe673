#include "asmq/register_file.hpp"

#include "asmq/diagnostics.hpp"

#include <algorithm>

namespace asmq {

const char* flag_name(FlagBit flag) {
    switch (flag) {
    case FlagBit::N: return "N";
    case FlagBit::Z: return "Z";
    case FlagBit::C: return "C";
    case FlagBit::V: return "V";
    }
    return "?";
}

RegisterFile::RegisterFile(int register_size) : register_size_(register_size) {}

QubitRange RegisterFile::allocate_register(QuantumCircuit& circuit, const std::string& name) {
    if (registers_.count(name))
        fail(Errc::DuplicateRegister, "register " + name + " is already allocated");
    const int start = circuit.allocate_qubits(register_size_, name);
    const QubitRange range{start, register_size_};
    registers_[name] = Binding{range, false, 0};
    register_order_.push_back(name);
    std::string qasm_name = name;
    std::transform(qasm_name.begin(), qasm_name.end(), qasm_name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    allocations_.push_back({AllocKind::Named, qasm_name, range});
    return range;
}

QubitRange RegisterFile::rebind_register(QuantumCircuit& circuit, const std::string& name) {
    auto it = registers_.find(name);
    if (it == registers_.end())
        fail(Errc::DuplicateRegister, "cannot rebind unallocated register " + name);
    Binding& binding = it->second;
    ++binding.generation;
    const std::string label = name + "_" + std::to_string(binding.generation);
    const int start = circuit.allocate_qubits(register_size_, label);
    binding.range = QubitRange{start, register_size_};
    binding.dirty = false;
    std::string qasm_name = label;
    std::transform(qasm_name.begin(), qasm_name.end(), qasm_name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    allocations_.push_back({AllocKind::Named, qasm_name, binding.range});
    return binding.range;
}

bool RegisterFile::has_register(const std::string& name) const {
    return registers_.count(name) != 0;
}

QubitRange RegisterFile::range_of(const std::string& name) const {
    auto it = registers_.find(name);
    if (it == registers_.end())
        fail(Errc::DuplicateRegister, "register " + name + " is not allocated");
    return it->second.range;
}

bool RegisterFile::is_dirty(const std::string& name) const {
    auto it = registers_.find(name);
    return it != registers_.end() && it->second.dirty;
}

void RegisterFile::mark_dirty(const std::string& name) {
    auto it = registers_.find(name);
    if (it != registers_.end())
        it->second.dirty = true;
}

std::vector<std::string> RegisterFile::register_names() const { return register_order_; }

void RegisterFile::ensure_psr(QuantumCircuit& circuit) {
    if (has_psr())
        return;
    const int start = circuit.allocate_qubits(1, "PSR.N");
    circuit.allocate_qubits(1, "PSR.Z");
    circuit.allocate_qubits(1, "PSR.C");
    circuit.allocate_qubits(1, "PSR.V");
    for (int i = 0; i < 4; ++i)
        psr_[static_cast<std::size_t>(i)] = start + i;
    allocations_.push_back({AllocKind::Psr, "psr", QubitRange{start, 4}});
    psr_alloc_count_ = 4;
}

Qubit RegisterFile::rebind_flag(QuantumCircuit& circuit, FlagBit f) {
    const std::string label = std::string("PSR.") + flag_name(f) + "_" +
                              std::to_string(psr_alloc_count_);
    const int q = circuit.allocate_qubits(1, label);
    psr_[static_cast<std::size_t>(static_cast<int>(f))] = q;
    psr_dirty_[static_cast<std::size_t>(static_cast<int>(f))] = false;
    allocations_.push_back({AllocKind::Psr, "psr", QubitRange{q, 1}});
    ++psr_alloc_count_;
    return q;
}

Qubit RegisterFile::allocate_target(QuantumCircuit& circuit) {
    if (target_ >= 0)
        return target_;
    target_ = circuit.allocate_qubits(1, "target");
    allocations_.push_back({AllocKind::Target, "tgt", QubitRange{target_, 1}});
    return target_;
}

std::vector<Qubit> RegisterFile::acquire_ancillas(QuantumCircuit& circuit, int count) {
    std::vector<Qubit> out;
    out.reserve(static_cast<std::size_t>(count));
    while (count > 0 && !ancilla_pool_.empty()) {
        out.push_back(ancilla_pool_.back());
        ancilla_pool_.pop_back();
        --count;
    }
    while (count-- > 0) {
        const std::string label = "anc" + std::to_string(ancilla_alloc_count_);
        const int q = circuit.allocate_qubits(1, label);
        allocations_.push_back({AllocKind::Ancilla, "anc", QubitRange{q, 1}});
        ++ancilla_alloc_count_;
        out.push_back(q);
    }
    return out;
}

void RegisterFile::release_ancillas(std::span<const Qubit> qubits) {
    for (Qubit q : qubits)
        ancilla_pool_.push_back(q);
}

ClassicalRange RegisterFile::ensure_classical(QuantumCircuit& circuit,
                                              const std::string& display_name) {
    for (const auto& entry : classical_)
        if (entry.display_name == display_name)
            return entry.range;
    const int start = circuit.allocate_classical_bits(register_size_);
    std::string qasm_name = display_name;
    std::transform(qasm_name.begin(), qasm_name.end(), qasm_name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    // Implicit end-of-program measurements reuse the quantum register's name;
    // prefix them so the QASM identifier cannot collide with a CR register.
    if (!display_name.empty() && display_name[0] != 'C')
        qasm_name = "m_" + qasm_name;
    classical_.push_back({display_name, qasm_name, ClassicalRange{start, register_size_}});
    return classical_.back().range;
}

bool RegisterFile::has_classical(const std::string& display_name) const {
    for (const auto& entry : classical_)
        if (entry.display_name == display_name)
            return true;
    return false;
}

} // namespace asmq

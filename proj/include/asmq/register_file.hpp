#pragma once

#include "asmq/circuit.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace asmq {

/// Contiguous qubit range; bit 0 is the least significant bit.
struct QubitRange {
    int start = 0;
    int size = 0;

    Qubit operator[](int bit) const { return start + bit; }
    Qubit msb() const { return start + size - 1; }
    bool overlaps(const QubitRange& other) const {
        return start < other.start + other.size && other.start < start + size;
    }
    bool operator==(const QubitRange&) const = default;
};

struct ClassicalRange {
    int start = 0;
    int size = 0;

    bool operator==(const ClassicalRange&) const = default;
};

enum class FlagBit { N = 0, Z = 1, C = 2, V = 3 };

const char* flag_name(FlagBit flag);

enum class AllocKind { Named, Psr, Target, Ancilla };

struct Allocation {
    AllocKind kind;
    std::string qasm_name; // grouping key for QASM emission ("r1", "r1_1", ...)
    QubitRange range;
};

struct ClassicalRegister {
    std::string display_name; // "CR1" or the measured register's name
    std::string qasm_name;
    ClassicalRange range;
};

/// Tracks the mapping from register names to qubit ranges, the PSR flag
/// qubits, the oracle target qubit, classical registers, and the pool of
/// clean ancilla qubits.
class RegisterFile {
public:
    RegisterFile() = default;
    explicit RegisterFile(int register_size);

    int register_size() const { return register_size_; }

    // --- named quantum registers ---
    QubitRange allocate_register(QuantumCircuit& circuit, const std::string& name);
    QubitRange rebind_register(QuantumCircuit& circuit, const std::string& name);
    bool has_register(const std::string& name) const;
    QubitRange range_of(const std::string& name) const;
    bool is_dirty(const std::string& name) const;
    void mark_dirty(const std::string& name);
    /// Names of named registers in first-allocation order.
    std::vector<std::string> register_names() const;

    // --- PSR ---
    bool has_psr() const { return psr_[0] >= 0; }
    void ensure_psr(QuantumCircuit& circuit);
    Qubit flag(FlagBit f) const { return psr_[static_cast<int>(f)]; }
    bool flag_dirty(FlagBit f) const { return psr_dirty_[static_cast<int>(f)]; }
    void mark_flag_dirty(FlagBit f) { psr_dirty_[static_cast<int>(f)] = true; }
    Qubit rebind_flag(QuantumCircuit& circuit, FlagBit f);

    // --- oracle target ---
    bool has_target() const { return target_ >= 0; }
    Qubit target() const { return target_; }
    Qubit allocate_target(QuantumCircuit& circuit);

    // --- ancilla pool (clean |0> qubits) ---
    std::vector<Qubit> acquire_ancillas(QuantumCircuit& circuit, int count);
    void release_ancillas(std::span<const Qubit> qubits);
    const std::vector<Qubit>& ancilla_pool() const { return ancilla_pool_; }

    // --- classical registers ---
    ClassicalRange ensure_classical(QuantumCircuit& circuit, const std::string& display_name);
    bool has_classical(const std::string& display_name) const;
    const std::vector<ClassicalRegister>& classical_registers() const { return classical_; }

    const std::vector<Allocation>& allocations() const { return allocations_; }

private:
    struct Binding {
        QubitRange range;
        bool dirty = false;
        int generation = 0;
    };

    int register_size_ = 0;
    std::map<std::string, Binding> registers_;
    std::vector<std::string> register_order_;
    std::vector<Allocation> allocations_;
    std::array<Qubit, 4> psr_{-1, -1, -1, -1};
    std::array<bool, 4> psr_dirty_{false, false, false, false};
    int psr_alloc_count_ = 0;
    Qubit target_ = -1;
    std::vector<Qubit> ancilla_pool_;
    int ancilla_alloc_count_ = 0;
    std::vector<ClassicalRegister> classical_;
};

} // namespace asmq

#pragma once

#include "asmq/config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace asmq {

enum class Mnemonic {
    Adc, Add, And, Bic, Cmn, Cmp, Eor, Ldr, Lsl, Lsr, Mla, Mov, Mrs, Msr,
    Mul, Mvn, Orr, Rsb, Rsc, Sbc, Str, Sub, Teq, Tst,
    // quantum-specific
    Had, Xxx, Tgt, Dif, Bar, Mct,
    Nop,
};

const char* mnemonic_name(Mnemonic m);
std::optional<Mnemonic> mnemonic_from_name(const std::string& upper);

/// One parsed operand. `kind` selects which fields are meaningful.
struct Operand {
    enum class Kind { Register, Immediate, RegisterList, MemoryRef, ClassicalRegister };

    Kind kind = Kind::Register;
    std::string name;                // Register / ClassicalRegister (canonical upper case)
    std::uint64_t value = 0;         // Immediate
    std::vector<std::string> names;  // RegisterList
    std::string base;                // MemoryRef base register
    long long offset = 0;            // MemoryRef offset

    static Operand reg(std::string n);
    static Operand imm(std::uint64_t v);
    static Operand reg_list(std::vector<std::string> ns);
    static Operand mem(std::string base, long long offset);
    static Operand creg(std::string n);

    std::string to_string() const;
    bool operator==(const Operand&) const = default;
};

struct Instruction {
    Mnemonic mnemonic = Mnemonic::Nop;
    std::vector<Operand> operands;
    bool in_oracle = false;
    int source_line = 0;

    std::string to_string() const;
    bool operator==(const Instruction&) const = default;
};

struct Program {
    Config config;
    std::vector<Instruction> instructions;
    // [first, one-past-last) indices of the in-oracle instructions.
    std::optional<std::pair<int, int>> oracle_span;
    // Instruction index before which the recorded oracle segment is reversed.
    std::optional<int> reverse_position;
    int reverse_line = 0;
    std::vector<std::string> warnings;
};

} // namespace asmq

#include "asmq/instruction.hpp"

#include <array>
#include <sstream>
#include <utility>

namespace asmq {

namespace {

constexpr std::array<std::pair<Mnemonic, const char*>, 31> kMnemonicNames{{
    {Mnemonic::Adc, "ADC"}, {Mnemonic::Add, "ADD"}, {Mnemonic::And, "AND"},
    {Mnemonic::Bic, "BIC"}, {Mnemonic::Cmn, "CMN"}, {Mnemonic::Cmp, "CMP"},
    {Mnemonic::Eor, "EOR"}, {Mnemonic::Ldr, "LDR"}, {Mnemonic::Lsl, "LSL"},
    {Mnemonic::Lsr, "LSR"}, {Mnemonic::Mla, "MLA"}, {Mnemonic::Mov, "MOV"},
    {Mnemonic::Mrs, "MRS"}, {Mnemonic::Msr, "MSR"}, {Mnemonic::Mul, "MUL"},
    {Mnemonic::Mvn, "MVN"}, {Mnemonic::Orr, "ORR"}, {Mnemonic::Rsb, "RSB"},
    {Mnemonic::Rsc, "RSC"}, {Mnemonic::Sbc, "SBC"}, {Mnemonic::Str, "STR"},
    {Mnemonic::Sub, "SUB"}, {Mnemonic::Teq, "TEQ"}, {Mnemonic::Tst, "TST"},
    {Mnemonic::Had, "HAD"}, {Mnemonic::Xxx, "XXX"}, {Mnemonic::Tgt, "TGT"},
    {Mnemonic::Dif, "DIF"}, {Mnemonic::Bar, "BAR"}, {Mnemonic::Mct, "MCT"},
    {Mnemonic::Nop, "NOP"},
}};

} // namespace

const char* mnemonic_name(Mnemonic m) {
    for (const auto& [mn, name] : kMnemonicNames)
        if (mn == m)
            return name;
    return "?";
}

std::optional<Mnemonic> mnemonic_from_name(const std::string& upper) {
    for (const auto& [mn, name] : kMnemonicNames)
        if (upper == name)
            return mn;
    return std::nullopt;
}

Operand Operand::reg(std::string n) {
    Operand op;
    op.kind = Kind::Register;
    op.name = std::move(n);
    return op;
}

Operand Operand::imm(std::uint64_t v) {
    Operand op;
    op.kind = Kind::Immediate;
    op.value = v;
    return op;
}

Operand Operand::reg_list(std::vector<std::string> ns) {
    Operand op;
    op.kind = Kind::RegisterList;
    op.names = std::move(ns);
    return op;
}

Operand Operand::mem(std::string base, long long offset) {
    Operand op;
    op.kind = Kind::MemoryRef;
    op.base = std::move(base);
    op.offset = offset;
    return op;
}

Operand Operand::creg(std::string n) {
    Operand op;
    op.kind = Kind::ClassicalRegister;
    op.name = std::move(n);
    return op;
}

std::string Operand::to_string() const {
    std::ostringstream out;
    switch (kind) {
    case Kind::Register:
    case Kind::ClassicalRegister:
        out << name;
        break;
    case Kind::Immediate:
        out << '#' << value;
        break;
    case Kind::RegisterList:
        out << '{';
        for (std::size_t i = 0; i < names.size(); ++i)
            out << (i ? ", " : "") << names[i];
        out << '}';
        break;
    case Kind::MemoryRef:
        out << '[' << base << ", " << offset << ']';
        break;
    }
    return out.str();
}

std::string Instruction::to_string() const {
    std::ostringstream out;
    out << mnemonic_name(mnemonic);
    for (std::size_t i = 0; i < operands.size(); ++i)
        out << (i ? ", " : " ") << operands[i].to_string();
    return out.str();
}

const char* display_mode_name(DisplayMode mode) {
    switch (mode) {
    case DisplayMode::None: return "none";
    case DisplayMode::Text: return "text";
    case DisplayMode::Qasm: return "qasm";
    case DisplayMode::Both: return "both";
    }
    return "?";
}

} // namespace asmq

#pragma once

#include "asmq/lowering.hpp"

#include <cstdint>
#include <optional>

namespace asmq {

enum class BitwiseKind { And, Orr, Eor, Bic, Mvn };

/// Per-bit boolean lowering into dest (initially |0>):
///   And: Toffoli(rn[i], op2[i])          Bic: Toffoli(rn[i], !op2[i])
///   Orr: De Morgan via negated-control Toffoli plus X
///   Eor: two disjoint Toffoli terms (A & !B, !A & B)
///   Mvn: CX-copy of op2 then X on every bit (rn absent)
void build_bitwise(BuildContext& ctx, std::optional<Wires> rn, const Wires& op2,
                   const Wires& dest, BitwiseKind kind);

/// MOV/LDR immediate initialization. Outside an oracle: X on the bits of
/// `value` that are 1 (dest must be |0>; rewrites are the caller's problem).
/// Inside an oracle: X on the bits that are 0, turning a following MCT over
/// dest into an equality test against `value`.
void build_init(BuildContext& ctx, const Wires& dest, std::uint64_t value, bool in_oracle);

/// Measures every qubit of src into the matching classical bit.
void build_store(BuildContext& ctx, const Wires& src, ClassicalRange dest);

enum class PsrDirection { ToRegister, FromRegister };

/// MRS (ToRegister) / MSR (FromRegister): CX copies between the PSR flags
/// (order N, Z, C, V) and the low min(4, n) bits of reg. Targets that are not
/// |0> accumulate by XOR.
void build_psr_move(BuildContext& ctx, PsrDirection direction, const Wires& reg);

struct FlagUpdate {
    bool zero = false;
    bool negative = false;
    bool carry = false;    // wire `carry_source` into C
    bool overflow = false; // V := rn_msb xor op2_msb

    static FlagUpdate all() { return {true, true, true, true}; }
    static FlagUpdate logical() { return {true, true, false, true}; }
};

/// Writes the requested PSR flags from a result register: Z = all result bits
/// zero (negated-control Toffoli), N = result MSB, C = carry_source,
/// V = XOR of the input MSBs. Requested flags are cleared first per mode
/// (Reset, or a fresh flag qubit in coherent mode).
void build_flag_update(BuildContext& ctx, const Wires& result, Qubit rn_msb, Qubit op2_msb,
                       FlagUpdate spec, std::optional<Qubit> carry_source = {});

} // namespace asmq

#pragma once

#include "asmq/lowering.hpp"

#include <optional>

namespace asmq {

struct CarryIn {
    enum class Kind { Zero, One, Wire };
    Kind kind = Kind::Zero;
    Qubit wire = -1; // Kind::Wire: a flag qubit, read-only

    static CarryIn zero() { return {}; }
    static CarryIn one() { return {Kind::One, -1}; }
    static CarryIn from(Qubit q) { return {Kind::Wire, q}; }
};

/// dest := (a + b + carry_in) mod 2^n, with dest initially |0>. Sources are
/// preserved. Ripple construction: carry chain c[i+1] = MAJ(a[i], b[i], c[i])
/// via Toffolis, sum bits dest[i] = a[i] xor b[i] xor c[i] via CX. If
/// `carry_out` is given it is flipped iff the true sum reaches 2^n. The carry
/// chain is uncomputed (coherent mode) or Reset (reset mode).
void build_ripple_adder(BuildContext& ctx, const Wires& a, const Wires& b, const Wires& dest,
                        std::optional<Qubit> carry_out = {}, CarryIn carry_in = {});

enum class SubVariant { Sub, SubWithCarry, ReverseSub, ReverseSubWithCarry };

/// Two's-complement subtraction: the subtrahend is copied into a fresh
/// ancilla register, inverted with X gates, and ripple-added with carry-in 1
/// (plain variants) or the C flag (with-carry variants, Rd := Rn - Op2 - 1 + C).
/// The inverted copy is uncomputed in coherent mode, Reset in reset mode.
/// carry_out (when given) receives the adder carry-out, i.e. NOT borrow.
void build_subtractor(BuildContext& ctx, const Wires& rn, const Wires& op2, const Wires& dest,
                      SubVariant variant, std::optional<Qubit> carry_out = {},
                      std::optional<Qubit> carry_in_flag = {});

/// dest := (a * b) mod 2^n (dest initially |0>), partial products Ai&Bj via
/// Toffoli into a pool ancilla, accumulated with controlled increments at
/// offset i+j. With `accumulate` the product is formed in a temporary and a
/// final ripple add of the accumulate register produces dest.
void build_multiplier(BuildContext& ctx, const Wires& a, const Wires& b, const Wires& dest,
                      std::optional<Wires> accumulate = {});

enum class ShiftDirection { Left, Right };

/// dest := src shifted by `amount` (dest initially |0>): CX-copies src into
/// dest, then moves bits with swap chains; shifted-out bits land in scratch
/// qubits (no wraparound) which are uncomputed or Reset per mode. Amounts
/// >= the register width produce an all-zero destination.
void build_shift(BuildContext& ctx, const Wires& src, const Wires& dest, int amount,
                 ShiftDirection direction);

} // namespace asmq

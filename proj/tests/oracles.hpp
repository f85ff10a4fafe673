#pragma once

// Classical reference semantics for the instruction set, kept independent of
// the circuit lowerings they are used to check.

#include <cstdint>

namespace asmq::test {

using u64 = std::uint64_t;

inline u64 width_mask(int n) { return (u64{1} << n) - 1; }

inline u64 oracle_add(u64 a, u64 b, int cin, int n) { return (a + b + static_cast<u64>(cin)) & width_mask(n); }
inline bool oracle_add_carry(u64 a, u64 b, int cin, int n) {
    return a + b + static_cast<u64>(cin) > width_mask(n);
}

// Two's-complement subtract: minuend + ~subtrahend + carry-in.
inline u64 oracle_sub(u64 minuend, u64 subtrahend, int cin, int n) {
    return oracle_add(minuend, (~subtrahend) & width_mask(n), cin, n);
}
inline bool oracle_sub_carry(u64 minuend, u64 subtrahend, int cin, int n) {
    return oracle_add_carry(minuend, (~subtrahend) & width_mask(n), cin, n);
}

inline u64 oracle_mul(u64 a, u64 b, int n) { return (a * b) & width_mask(n); }
inline u64 oracle_mla(u64 a, u64 b, u64 acc, int n) { return (a * b + acc) & width_mask(n); }

inline u64 oracle_lsl(u64 a, int amount, int n) {
    return amount >= n ? 0 : (a << amount) & width_mask(n);
}
inline u64 oracle_lsr(u64 a, int amount, int n) { return amount >= n ? 0 : a >> amount; }

inline u64 oracle_and(u64 a, u64 b, int n) { return (a & b) & width_mask(n); }
inline u64 oracle_orr(u64 a, u64 b, int n) { return (a | b) & width_mask(n); }
inline u64 oracle_eor(u64 a, u64 b, int n) { return (a ^ b) & width_mask(n); }
inline u64 oracle_bic(u64 a, u64 b, int n) { return (a & ~b) & width_mask(n); }
inline u64 oracle_mvn(u64 b, int n) { return (~b) & width_mask(n); }

struct OracleFlags {
    bool n = false;
    bool z = false;
    bool v = false;
};

// Z = all result bits zero, N = result MSB, V = XOR of the operand MSBs.
inline OracleFlags oracle_flags(u64 result, u64 rn, u64 op2, int n) {
    OracleFlags flags;
    flags.z = (result & width_mask(n)) == 0;
    flags.n = (result >> (n - 1)) & 1;
    flags.v = (((rn >> (n - 1)) ^ (op2 >> (n - 1))) & 1) != 0;
    return flags;
}

} // namespace asmq::test

#pragma once

#include "asmq/lowering.hpp"

#include <vector>

namespace asmq {

/// H on every qubit of reg.
void build_had(BuildContext& ctx, const Wires& reg);

/// X on every qubit of reg.
void build_xxx(BuildContext& ctx, const Wires& reg);

/// Lazily allocates the shared target qubit and prepares it in |-> (X then H)
/// so controlled-X gates onto it kick a -1 phase back onto the control state.
Qubit ensure_prepared_target(BuildContext& ctx);

/// MCT with every qubit of reg as control and the |->-prepared target qubit
/// as target: phase-flips the all-ones pattern of reg.
void build_mct_target(BuildContext& ctx, const Wires& reg);

/// CX from a single source qubit (a PSR flag or a register's bit 0) onto the
/// prepared target.
void build_tgt(BuildContext& ctx, Qubit source);

/// Inversion about the mean over the concatenated qubits of regs:
/// H all, X all, MCZ over all, X all, H all.
void build_diffuser(BuildContext& ctx, const std::vector<Wires>& regs);

} // namespace asmq

#include "asmq/lowering_grover.hpp"

#include "asmq/diagnostics.hpp"

namespace asmq {

void build_had(BuildContext& ctx, const Wires& reg) {
    for (Qubit q : reg.qs)
        ctx.h(q);
}

void build_xxx(BuildContext& ctx, const Wires& reg) {
    for (Qubit q : reg.qs)
        ctx.x(q);
}

Qubit ensure_prepared_target(BuildContext& ctx) {
    if (ctx.regs.has_target())
        return ctx.regs.target();
    const Qubit t = ctx.regs.allocate_target(ctx.circuit);
    // |-> preparation: a controlled X onto it now kicks back a -1 phase.
    ctx.x(t);
    ctx.h(t);
    return t;
}

void build_mct_target(BuildContext& ctx, const Wires& reg) {
    const Qubit t = ensure_prepared_target(ctx);
    ctx.mct(reg.qs, {}, t);
}

void build_tgt(BuildContext& ctx, Qubit source) {
    const Qubit t = ensure_prepared_target(ctx);
    ctx.cx(source, t);
}

void build_diffuser(BuildContext& ctx, const std::vector<Wires>& regs) {
    std::vector<Qubit> all;
    for (const auto& reg : regs)
        all.insert(all.end(), reg.qs.begin(), reg.qs.end());
    if (all.empty())
        fail(Errc::OutOfRange, "diffuser needs at least one register");

    for (Qubit q : all)
        ctx.h(q);
    for (Qubit q : all)
        ctx.x(q);
    if (all.size() == 1) {
        ctx.z(all[0]);
    } else {
        std::vector<Qubit> controls(all.begin(), all.end() - 1);
        ctx.mcz(std::move(controls), all.back());
    }
    for (Qubit q : all)
        ctx.x(q);
    for (Qubit q : all)
        ctx.h(q);
}

} // namespace asmq

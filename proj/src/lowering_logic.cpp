#include "asmq/lowering_logic.hpp"

#include "asmq/diagnostics.hpp"

namespace asmq {

void build_bitwise(BuildContext& ctx, std::optional<Wires> rn, const Wires& op2,
                   const Wires& dest, BitwiseKind kind) {
    const int n = dest.size();
    if (op2.size() != n || (rn && rn->size() != n))
        fail(Errc::WidthMismatch, "operand registers must have equal widths");
    if (op2.overlaps(dest) || (rn && (rn->overlaps(dest) || rn->overlaps(op2))))
        fail(Errc::OverlappingRanges, "operand registers must be disjoint");
    if (kind != BitwiseKind::Mvn && !rn)
        fail(Errc::WidthMismatch, "two-operand bitwise op needs an Rn register");

    switch (kind) {
    case BitwiseKind::And:
        for (int i = 0; i < n; ++i)
            ctx.mct({(*rn)[i], op2[i]}, {}, dest[i]);
        break;
    case BitwiseKind::Bic:
        for (int i = 0; i < n; ++i)
            ctx.mct({(*rn)[i]}, {op2[i]}, dest[i]);
        break;
    case BitwiseKind::Orr:
        // De Morgan: dest = !(!a & !b)
        for (int i = 0; i < n; ++i) {
            ctx.mct({}, {(*rn)[i], op2[i]}, dest[i]);
            ctx.x(dest[i]);
        }
        break;
    case BitwiseKind::Eor:
        // (A & !B) and (!A & B) are disjoint, so two flips realize the OR.
        for (int i = 0; i < n; ++i) {
            ctx.mct({(*rn)[i]}, {op2[i]}, dest[i]);
            ctx.mct({op2[i]}, {(*rn)[i]}, dest[i]);
        }
        break;
    case BitwiseKind::Mvn:
        for (int i = 0; i < n; ++i)
            ctx.cx(op2[i], dest[i]);
        for (int i = 0; i < n; ++i)
            ctx.x(dest[i]);
        break;
    }
}

void build_init(BuildContext& ctx, const Wires& dest, std::uint64_t value, bool in_oracle) {
    for (int i = 0; i < dest.size(); ++i) {
        const bool bit = (value >> i) & 1;
        // Outside an oracle, write the value. Inside, flip the zero bits so an
        // MCT over dest recognizes exactly `value`.
        if (bit != in_oracle)
            ctx.x(dest[i]);
    }
}

void build_store(BuildContext& ctx, const Wires& src, ClassicalRange dest) {
    if (src.size() != dest.size)
        fail(Errc::WidthMismatch, "store source and classical register widths differ");
    for (int i = 0; i < src.size(); ++i)
        ctx.measure(src[i], dest.start + i);
}

void build_psr_move(BuildContext& ctx, PsrDirection direction, const Wires& reg) {
    ctx.regs.ensure_psr(ctx.circuit);
    const int count = std::min(4, reg.size());
    for (int i = 0; i < count; ++i) {
        const auto flag = static_cast<FlagBit>(i);
        if (direction == PsrDirection::ToRegister) {
            ctx.cx(ctx.regs.flag(flag), reg[i]);
        } else {
            ctx.cx(reg[i], ctx.regs.flag(flag));
            ctx.regs.mark_flag_dirty(flag);
        }
    }
}

void build_flag_update(BuildContext& ctx, const Wires& result, Qubit rn_msb, Qubit op2_msb,
                       FlagUpdate spec, std::optional<Qubit> carry_source) {
    if (!spec.zero && !spec.negative && !spec.carry && !spec.overflow)
        fail(Errc::OutOfRange, "flag update requests no flags");
    if (spec.carry && !carry_source)
        fail(Errc::MissingCarrySource,
             "carry flag requested but the operation produces no carry");

    ctx.regs.ensure_psr(ctx.circuit);
    auto prepare = [&](FlagBit flag) -> Qubit {
        if (ctx.regs.flag_dirty(flag)) {
            if (ctx.coherent())
                return ctx.regs.rebind_flag(ctx.circuit, flag);
            ctx.reset(ctx.regs.flag(flag));
        }
        return ctx.regs.flag(flag);
    };

    if (spec.zero) {
        const Qubit z = prepare(FlagBit::Z);
        ctx.mct({}, result.qs, z); // fires iff every result bit is 0
        ctx.regs.mark_flag_dirty(FlagBit::Z);
    }
    if (spec.negative) {
        const Qubit nq = prepare(FlagBit::N);
        ctx.cx(result.msb(), nq);
        ctx.regs.mark_flag_dirty(FlagBit::N);
    }
    if (spec.carry) {
        const Qubit cq = prepare(FlagBit::C);
        ctx.cx(*carry_source, cq);
        ctx.regs.mark_flag_dirty(FlagBit::C);
    }
    if (spec.overflow) {
        const Qubit vq = prepare(FlagBit::V);
        ctx.cx(rn_msb, vq);
        ctx.cx(op2_msb, vq);
        ctx.regs.mark_flag_dirty(FlagBit::V);
    }
}

} // namespace asmq

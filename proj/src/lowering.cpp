#include "asmq/lowering.hpp"

#include "asmq/diagnostics.hpp"
#include "asmq/lowering_arith.hpp"
#include "asmq/lowering_grover.hpp"
#include "asmq/lowering_logic.hpp"
#include "asmq/simulator.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace asmq {

void BuildContext::dispose(std::size_t span_begin, std::size_t span_end,
                           std::span<const Qubit> temps) {
    if (coherent()) {
        const auto& gates = circuit.gates();
        const auto inverted = invert_segment(
            std::span<const Gate>(gates.data() + span_begin, span_end - span_begin));
        for (const Gate& gate : inverted)
            circuit.append(gate);
    } else {
        for (Qubit q : temps)
            circuit.append(Gate::reset(q));
    }
    regs.release_ancillas(temps);
}

void BuildContext::x(Qubit t) { circuit.append(Gate::x(t)); }
void BuildContext::h(Qubit t) { circuit.append(Gate::h(t)); }
void BuildContext::z(Qubit t) { circuit.append(Gate::z(t)); }
void BuildContext::cx(Qubit c, Qubit t) { circuit.append(Gate::cx(c, t)); }
void BuildContext::ccx(Qubit c0, Qubit c1, Qubit t) { circuit.append(Gate::ccx(c0, c1, t)); }

void BuildContext::mct(std::vector<Qubit> controls, std::vector<Qubit> negated, Qubit t) {
    circuit.append(Gate::mct(std::move(controls), std::move(negated), t));
}

void BuildContext::mcz(std::vector<Qubit> controls, Qubit t) {
    circuit.append(Gate::mcz(std::move(controls), t));
}

void BuildContext::swap(Qubit a, Qubit b) { circuit.append(Gate::swap(a, b)); }
void BuildContext::reset(Qubit t) { circuit.append(Gate::reset(t)); }
void BuildContext::barrier() { circuit.append(Gate::barrier()); }
void BuildContext::measure(Qubit q, int bit) { circuit.append(Gate::measure(q, bit)); }

namespace {

class Lowerer {
public:
    explicit Lowerer(const Program& program)
        : program_(program), regs_(program.config.register_size),
          ctx_{circuit_, regs_,
               program.config.maintain_coherence ? Mode::Coherent : Mode::Reset,
               program.config.execute ? std::optional<int>(sim::kMaxQubits) : std::nullopt} {}

    Lowered run();

private:
    // A resolved source operand; `cleanup` says how to return its temp qubits.
    struct Source {
        enum class Cleanup { None, Immediate, Copy };

        Wires wires;
        Cleanup cleanup = Cleanup::None;
        std::vector<Qubit> temp_qubits;
        std::uint64_t imm_value = 0;
        std::vector<Qubit> copied_from;
    };

    void lower(const Instruction& inst);
    void lower_with_trace(const Instruction& inst);
    void record_trace(const std::string& text, std::size_t gates_before);

    QubitRange read_source(const std::string& name);
    QubitRange acquire_dest(const std::string& name);
    void with_dest(const std::string& name, const std::vector<Wires>& sources,
                   const std::function<void(const Wires&)>& body);

    Source read_operand(const Operand& op);
    void release_source(Source& source);
    // Copies the source into a temp when it shares qubits with `other`
    // (gate control lists must be duplicate-free).
    void split_aliased(const Wires& other, Source& source);

    void check_immediate(std::uint64_t value);
    Qubit carry_flag();

    void lower_addsub(const Instruction& inst);
    void lower_bitwise(const Instruction& inst);
    void lower_mov(const Instruction& inst);
    void lower_mul(const Instruction& inst);
    void lower_shift(const Instruction& inst);
    void lower_ldr(const Instruction& inst);
    void lower_str(const Instruction& inst);
    void lower_compare(const Instruction& inst);
    void lower_tgt(const Instruction& inst);

    const Program& program_;
    QuantumCircuit circuit_;
    RegisterFile regs_;
    BuildContext ctx_;
    std::vector<TraceEntry> trace_;
    int oracle_gate_start_ = -1;
    bool grover_repeated_ = false;
};

QubitRange Lowerer::read_source(const std::string& name) {
    if (!regs_.has_register(name))
        return regs_.allocate_register(circuit_, name);
    return regs_.range_of(name);
}

QubitRange Lowerer::acquire_dest(const std::string& name) {
    if (!regs_.has_register(name)) {
        const auto range = regs_.allocate_register(circuit_, name);
        regs_.mark_dirty(name);
        return range;
    }
    if (!regs_.is_dirty(name)) {
        regs_.mark_dirty(name);
        return regs_.range_of(name);
    }
    if (ctx_.coherent()) {
        if (ctx_.qubit_budget &&
            circuit_.qubit_count() + regs_.register_size() > *ctx_.qubit_budget)
            fail(Errc::RewriteInCoherentMode,
                 "rewriting " + name + " while maintaining coherence needs a fresh register, "
                 "but that would exceed the " + std::to_string(*ctx_.qubit_budget) +
                 "-qubit simulation limit");
        const auto range = regs_.rebind_register(circuit_, name);
        regs_.mark_dirty(name);
        return range;
    }
    const auto range = regs_.range_of(name);
    for (int i = 0; i < range.size; ++i)
        ctx_.reset(range[i]);
    return range;
}

void Lowerer::with_dest(const std::string& name, const std::vector<Wires>& sources,
                        const std::function<void(const Wires&)>& body) {
    bool aliased = false;
    if (!ctx_.coherent() && regs_.has_register(name) && regs_.is_dirty(name)) {
        const Wires dest(regs_.range_of(name));
        for (const auto& src : sources)
            aliased = aliased || dest.overlaps(src);
    }
    if (!aliased) {
        body(Wires(acquire_dest(name)));
        return;
    }
    // Reset mode with the destination aliasing a source: compute into a temp,
    // then reset the destination and copy the temp over.
    const int n = regs_.register_size();
    auto temp = ctx_.acquire(n);
    body(Wires(temp));
    const auto dest = regs_.range_of(name);
    for (int i = 0; i < n; ++i)
        ctx_.reset(dest[i]);
    for (int i = 0; i < n; ++i)
        ctx_.cx(temp[static_cast<std::size_t>(i)], dest[i]);
    for (Qubit q : temp)
        ctx_.reset(q);
    ctx_.release_clean(temp);
}

void Lowerer::check_immediate(std::uint64_t value) {
    const int n = regs_.register_size();
    if (n < 64 && value >= (std::uint64_t{1} << n))
        fail(Errc::OutOfRange, "immediate #" + std::to_string(value) + " does not fit in a " +
                                   std::to_string(n) + "-bit register");
}

Lowerer::Source Lowerer::read_operand(const Operand& op) {
    if (op.kind == Operand::Kind::Immediate) {
        check_immediate(op.value);
        const int n = regs_.register_size();
        auto qubits = ctx_.acquire(n);
        for (int i = 0; i < n; ++i)
            if ((op.value >> i) & 1)
                ctx_.x(qubits[static_cast<std::size_t>(i)]);
        Source source;
        source.wires = Wires(qubits);
        source.cleanup = Source::Cleanup::Immediate;
        source.temp_qubits = std::move(qubits);
        source.imm_value = op.value;
        return source;
    }
    Source source;
    source.wires = Wires(read_source(op.name));
    return source;
}

void Lowerer::release_source(Source& source) {
    switch (source.cleanup) {
    case Source::Cleanup::None:
        return;
    case Source::Cleanup::Immediate:
        for (int i = 0; i < static_cast<int>(source.temp_qubits.size()); ++i)
            if ((source.imm_value >> i) & 1)
                ctx_.x(source.temp_qubits[static_cast<std::size_t>(i)]);
        break;
    case Source::Cleanup::Copy:
        for (std::size_t i = 0; i < source.temp_qubits.size(); ++i)
            ctx_.cx(source.copied_from[i], source.temp_qubits[i]);
        break;
    }
    ctx_.release_clean(source.temp_qubits);
    source.temp_qubits.clear();
    source.cleanup = Source::Cleanup::None;
}

void Lowerer::split_aliased(const Wires& other, Source& source) {
    if (!other.overlaps(source.wires))
        return;
    // A synthesized immediate lives on fresh pool qubits and cannot alias.
    const int n = source.wires.size();
    auto copy = ctx_.acquire(n);
    for (int i = 0; i < n; ++i)
        ctx_.cx(source.wires[i], copy[static_cast<std::size_t>(i)]);
    source.copied_from = source.wires.qs;
    source.wires = Wires(copy);
    source.cleanup = Source::Cleanup::Copy;
    source.temp_qubits = std::move(copy);
}

Qubit Lowerer::carry_flag() {
    regs_.ensure_psr(circuit_);
    return regs_.flag(FlagBit::C);
}

void Lowerer::lower_addsub(const Instruction& inst) {
    const Wires rn(read_source(inst.operands[1].name));
    Source op2 = read_operand(inst.operands[2]);

    switch (inst.mnemonic) {
    case Mnemonic::Add:
    case Mnemonic::Adc: {
        split_aliased(rn, op2); // the adder needs disjoint inputs
        const CarryIn cin = inst.mnemonic == Mnemonic::Adc ? CarryIn::from(carry_flag())
                                                           : CarryIn::zero();
        with_dest(inst.operands[0].name, {rn, op2.wires},
                  [&](const Wires& dest) { build_ripple_adder(ctx_, rn, op2.wires, dest, {}, cin); });
        break;
    }
    case Mnemonic::Sub:
    case Mnemonic::Sbc:
    case Mnemonic::Rsb:
    case Mnemonic::Rsc: {
        SubVariant variant = SubVariant::Sub;
        bool with_carry = false;
        if (inst.mnemonic == Mnemonic::Sbc) {
            variant = SubVariant::SubWithCarry;
            with_carry = true;
        } else if (inst.mnemonic == Mnemonic::Rsb) {
            variant = SubVariant::ReverseSub;
        } else if (inst.mnemonic == Mnemonic::Rsc) {
            variant = SubVariant::ReverseSubWithCarry;
            with_carry = true;
        }
        // The subtractor copies the subtrahend internally, so rn == op2 is
        // safe; only the reverse variants add rn directly alongside op2's
        // copy, which is still disjoint.
        const std::optional<Qubit> cin =
            with_carry ? std::optional<Qubit>(carry_flag()) : std::nullopt;
        with_dest(inst.operands[0].name, {rn, op2.wires}, [&](const Wires& dest) {
            build_subtractor(ctx_, rn, op2.wires, dest, variant, {}, cin);
        });
        break;
    }
    default:
        break;
    }
    release_source(op2);
}

void Lowerer::lower_bitwise(const Instruction& inst) {
    if (inst.mnemonic == Mnemonic::Mvn) {
        Source op2 = read_operand(inst.operands[1]);
        with_dest(inst.operands[0].name, {op2.wires}, [&](const Wires& dest) {
            build_bitwise(ctx_, std::nullopt, op2.wires, dest, BitwiseKind::Mvn);
        });
        release_source(op2);
        return;
    }

    const Wires rn(read_source(inst.operands[1].name));
    Source op2 = read_operand(inst.operands[2]);
    split_aliased(rn, op2);
    BitwiseKind kind = BitwiseKind::And;
    switch (inst.mnemonic) {
    case Mnemonic::And: kind = BitwiseKind::And; break;
    case Mnemonic::Orr: kind = BitwiseKind::Orr; break;
    case Mnemonic::Eor: kind = BitwiseKind::Eor; break;
    case Mnemonic::Bic: kind = BitwiseKind::Bic; break;
    default: break;
    }
    with_dest(inst.operands[0].name, {rn, op2.wires}, [&](const Wires& dest) {
        build_bitwise(ctx_, rn, op2.wires, dest, kind);
    });
    release_source(op2);
}

void Lowerer::lower_mov(const Instruction& inst) {
    const std::string& dest_name = inst.operands[0].name;
    const Operand& src = inst.operands[1];

    if (src.kind == Operand::Kind::Immediate) {
        check_immediate(src.value);
        if (inst.in_oracle) {
            // Comparator encoding onto the live register: X the zero bits.
            const Wires reg(read_source(dest_name));
            regs_.mark_dirty(dest_name);
            build_init(ctx_, reg, src.value, true);
        } else {
            with_dest(dest_name, {},
                      [&](const Wires& dest) { build_init(ctx_, dest, src.value, false); });
        }
        return;
    }

    if (inst.in_oracle)
        fail(Errc::UnsupportedInstruction,
             "register-to-register MOV inside an oracle is not supported; the oracle "
             "encoding is defined for immediates only");
    if (src.name == dest_name)
        return; // MOV Rn, Rn is a no-op
    const Wires source(read_source(src.name));
    with_dest(dest_name, {source}, [&](const Wires& dest) {
        for (int i = 0; i < source.size(); ++i)
            ctx_.cx(source[i], dest[i]);
    });
}

void Lowerer::lower_mul(const Instruction& inst) {
    const Wires a(read_source(inst.operands[1].name));
    Source b;
    b.wires = Wires(read_source(inst.operands[2].name));
    split_aliased(a, b);

    if (inst.mnemonic == Mnemonic::Mul) {
        with_dest(inst.operands[0].name, {a, b.wires},
                  [&](const Wires& dest) { build_multiplier(ctx_, a, b.wires, dest); });
    } else {
        const Wires acc(read_source(inst.operands[3].name));
        with_dest(inst.operands[0].name, {a, b.wires, acc}, [&](const Wires& dest) {
            build_multiplier(ctx_, a, b.wires, dest, acc);
        });
    }
    release_source(b);
}

void Lowerer::lower_shift(const Instruction& inst) {
    const Wires src(read_source(inst.operands[1].name));
    const std::uint64_t amount64 = inst.operands[2].value;
    const int n = regs_.register_size();
    const int amount = amount64 > static_cast<std::uint64_t>(n)
                           ? n
                           : static_cast<int>(amount64);
    const ShiftDirection direction =
        inst.mnemonic == Mnemonic::Lsl ? ShiftDirection::Left : ShiftDirection::Right;
    with_dest(inst.operands[0].name, {src},
              [&](const Wires& dest) { build_shift(ctx_, src, dest, amount, direction); });
}

void Lowerer::lower_ldr(const Instruction& inst) {
    const long long offset = inst.operands[1].offset;
    if (offset < 0)
        fail(Errc::OutOfRange, "memory addresses must be non-negative");
    const auto address = static_cast<std::uint64_t>(offset);
    const auto it = program_.config.memory.find(address);
    if (it == program_.config.memory.end())
        fail(Errc::MissingMemoryValue,
             "no \"memory\" entry for address " + std::to_string(address) +
                 "; add it to the configuration header");
    const std::uint64_t value = it->second;
    check_immediate(value);
    const std::string& dest_name = inst.operands[0].name;
    if (inst.in_oracle) {
        const Wires reg(read_source(dest_name));
        regs_.mark_dirty(dest_name);
        build_init(ctx_, reg, value, true);
    } else {
        with_dest(dest_name, {},
                  [&](const Wires& dest) { build_init(ctx_, dest, value, false); });
    }
}

void Lowerer::lower_str(const Instruction& inst) {
    std::string classical_name;
    std::string source_name;
    if (inst.operands[0].kind == Operand::Kind::ClassicalRegister) {
        classical_name = inst.operands[0].name;
        source_name = inst.operands[1].name;
    } else {
        source_name = inst.operands[0].name;
        const long long offset = inst.operands[1].offset;
        if (offset < 0)
            fail(Errc::OutOfRange, "classical register indices must be non-negative");
        classical_name = "CR" + std::to_string(offset);
    }
    const Wires source(read_source(source_name));
    const auto range = regs_.ensure_classical(circuit_, classical_name);
    build_store(ctx_, source, range);
}

void Lowerer::lower_compare(const Instruction& inst) {
    const Wires rn(read_source(inst.operands[0].name));
    Source op2 = read_operand(inst.operands[1]);
    const int n = regs_.register_size();

    switch (inst.mnemonic) {
    case Mnemonic::Cmp: {
        // result and carry-out land in temps; flags are extracted while the
        // temps are live, then the arithmetic is undone or reset.
        auto result = ctx_.acquire(n);
        const Qubit carry = ctx_.acquire_one();
        const std::size_t begin = ctx_.mark();
        build_subtractor(ctx_, rn, op2.wires, Wires(result), SubVariant::Sub, carry);
        const std::size_t end = ctx_.mark();
        build_flag_update(ctx_, Wires(result), rn.msb(), op2.wires.msb(), FlagUpdate::all(),
                          carry);
        std::vector<Qubit> temps = result;
        temps.push_back(carry);
        ctx_.dispose(begin, end, temps);
        break;
    }
    case Mnemonic::Cmn: {
        split_aliased(rn, op2);
        auto result = ctx_.acquire(n);
        const Qubit carry = ctx_.acquire_one();
        const std::size_t begin = ctx_.mark();
        build_ripple_adder(ctx_, rn, op2.wires, Wires(result), carry);
        const std::size_t end = ctx_.mark();
        build_flag_update(ctx_, Wires(result), rn.msb(), op2.wires.msb(), FlagUpdate::all(),
                          carry);
        std::vector<Qubit> temps = result;
        temps.push_back(carry);
        ctx_.dispose(begin, end, temps);
        break;
    }
    case Mnemonic::Teq:
    case Mnemonic::Tst: {
        split_aliased(rn, op2);
        auto result = ctx_.acquire(n);
        const std::size_t begin = ctx_.mark();
        build_bitwise(ctx_, rn, op2.wires, Wires(result),
                      inst.mnemonic == Mnemonic::Teq ? BitwiseKind::Eor : BitwiseKind::And);
        const std::size_t end = ctx_.mark();
        // XOR/AND generate no carry; C is left unchanged.
        build_flag_update(ctx_, Wires(result), rn.msb(), op2.wires.msb(),
                          FlagUpdate::logical());
        ctx_.dispose(begin, end, result);
        break;
    }
    default:
        break;
    }
    release_source(op2);
}

void Lowerer::lower_tgt(const Instruction& inst) {
    const std::string& name = inst.operands[0].name;
    Qubit source = -1;
    if (name == "N" || name == "Z" || name == "C" || name == "V") {
        regs_.ensure_psr(circuit_);
        const FlagBit flag = name == "N"   ? FlagBit::N
                             : name == "Z" ? FlagBit::Z
                             : name == "C" ? FlagBit::C
                                           : FlagBit::V;
        source = regs_.flag(flag);
    } else {
        source = Wires(read_source(name))[0];
    }
    build_tgt(ctx_, source);
}

void Lowerer::lower(const Instruction& inst) {
    switch (inst.mnemonic) {
    case Mnemonic::Add:
    case Mnemonic::Adc:
    case Mnemonic::Sub:
    case Mnemonic::Sbc:
    case Mnemonic::Rsb:
    case Mnemonic::Rsc:
        lower_addsub(inst);
        break;
    case Mnemonic::And:
    case Mnemonic::Orr:
    case Mnemonic::Eor:
    case Mnemonic::Bic:
    case Mnemonic::Mvn:
        lower_bitwise(inst);
        break;
    case Mnemonic::Mov:
        lower_mov(inst);
        break;
    case Mnemonic::Mul:
    case Mnemonic::Mla:
        lower_mul(inst);
        break;
    case Mnemonic::Lsl:
    case Mnemonic::Lsr:
        lower_shift(inst);
        break;
    case Mnemonic::Ldr:
        lower_ldr(inst);
        break;
    case Mnemonic::Str:
        lower_str(inst);
        break;
    case Mnemonic::Mrs: {
        const Wires dest(read_source(inst.operands[0].name));
        regs_.mark_dirty(inst.operands[0].name);
        build_psr_move(ctx_, PsrDirection::ToRegister, dest);
        break;
    }
    case Mnemonic::Msr: {
        const Wires source(read_source(inst.operands[1].name));
        build_psr_move(ctx_, PsrDirection::FromRegister, source);
        break;
    }
    case Mnemonic::Cmp:
    case Mnemonic::Cmn:
    case Mnemonic::Teq:
    case Mnemonic::Tst:
        lower_compare(inst);
        break;
    case Mnemonic::Had: {
        const Wires reg(read_source(inst.operands[0].name));
        regs_.mark_dirty(inst.operands[0].name);
        build_had(ctx_, reg);
        break;
    }
    case Mnemonic::Xxx: {
        const Wires reg(read_source(inst.operands[0].name));
        regs_.mark_dirty(inst.operands[0].name);
        build_xxx(ctx_, reg);
        break;
    }
    case Mnemonic::Mct: {
        const Wires reg(read_source(inst.operands[0].name));
        build_mct_target(ctx_, reg);
        break;
    }
    case Mnemonic::Tgt:
        lower_tgt(inst);
        break;
    case Mnemonic::Dif: {
        std::vector<Wires> regs;
        for (const auto& name : inst.operands[0].names) {
            regs.emplace_back(read_source(name));
            regs_.mark_dirty(name);
        }
        build_diffuser(ctx_, regs);
        break;
    }
    case Mnemonic::Bar:
        ctx_.barrier();
        break;
    case Mnemonic::Nop:
        break;
    }
}

void Lowerer::record_trace(const std::string& text, std::size_t gates_before) {
    TraceEntry entry;
    entry.text = text;
    entry.gate_count = static_cast<int>(circuit_.gates().size() - gates_before);
    std::set<Qubit> touched;
    for (std::size_t g = gates_before; g < circuit_.gates().size(); ++g) {
        const Gate& gate = circuit_.gates()[g];
        if (gate.kind != Gate::Kind::Barrier)
            touched.insert(gate.target);
        for (Qubit q : gate.controls)
            touched.insert(q);
        for (Qubit q : gate.negated)
            touched.insert(q);
        if (gate.swap_partner >= 0)
            touched.insert(gate.swap_partner);
    }
    entry.qubits_touched.assign(touched.begin(), touched.end());
    entry.cumulative_qubits = circuit_.qubit_count();
    trace_.push_back(std::move(entry));
}

void Lowerer::lower_with_trace(const Instruction& inst) {
    const std::size_t before = circuit_.gates().size();
    try {
        lower(inst);
    } catch (CompileError& e) {
        if (e.line() == 0)
            e.set_line(inst.source_line);
        throw;
    }
    record_trace(inst.to_string(), before);
}

Lowered Lowerer::run() {
    const auto& instructions = program_.instructions;
    const int count = static_cast<int>(instructions.size());
    int oracle_gate_end = -1;

    for (int idx = 0; idx <= count; ++idx) {
        if (program_.oracle_span && program_.oracle_span->first == idx &&
            oracle_gate_start_ < 0)
            oracle_gate_start_ = static_cast<int>(circuit_.gates().size());
        if (program_.oracle_span && program_.oracle_span->second == idx &&
            oracle_gate_end < 0)
            oracle_gate_end = static_cast<int>(circuit_.gates().size());

        if (program_.reverse_position && *program_.reverse_position == idx) {
            const std::size_t before = circuit_.gates().size();
            const auto& gates = circuit_.gates();
            std::vector<Gate> inverted;
            try {
                inverted = invert_segment(std::span<const Gate>(
                    gates.data() + oracle_gate_start_,
                    static_cast<std::size_t>(oracle_gate_end - oracle_gate_start_)));
            } catch (CompileError& e) {
                if (e.line() == 0)
                    e.set_line(program_.reverse_line);
                throw;
            }
            for (const Gate& gate : inverted)
                circuit_.append(gate);
            record_trace("REVERSE_ORACLE", before);
        }

        if (idx == count)
            break;
        lower_with_trace(instructions[static_cast<std::size_t>(idx)]);

        // Extra search rounds repeat the oracle..diffuser gate span verbatim
        // right after the first diffuser.
        if (!grover_repeated_ && program_.config.grover_iterations > 1 &&
            oracle_gate_start_ >= 0 &&
            instructions[static_cast<std::size_t>(idx)].mnemonic == Mnemonic::Dif) {
            grover_repeated_ = true;
            const std::size_t before = circuit_.gates().size();
            const std::vector<Gate> span(
                circuit_.gates().begin() + oracle_gate_start_,
                circuit_.gates().begin() + static_cast<long>(before));
            for (int round = 1; round < program_.config.grover_iterations; ++round)
                for (const Gate& gate : span)
                    circuit_.append(gate);
            record_trace("(grover iterations x" +
                             std::to_string(program_.config.grover_iterations) + ")",
                         before);
        }
    }

    return Lowered{std::move(circuit_), std::move(regs_), std::move(trace_)};
}

} // namespace

Lowered lower_program(const Program& program) { return Lowerer(program).run(); }

} // namespace asmq

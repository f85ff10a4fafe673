#include "asmq/lowering_arith.hpp"

#include "asmq/diagnostics.hpp"

namespace asmq {

namespace {

void check_operands(const Wires& a, const Wires& b, const Wires& dest) {
    if (a.size() != b.size() || a.size() != dest.size())
        fail(Errc::WidthMismatch, "operand registers must have equal widths");
    if (a.overlaps(b) || a.overlaps(dest) || b.overlaps(dest))
        fail(Errc::OverlappingRanges, "operand registers must be disjoint");
}

// dest := (a * b) mod 2^n into a |0> register, in place.
void build_product(BuildContext& ctx, const Wires& a, const Wires& b, const Wires& dest) {
    const int n = dest.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i + j >= n)
                continue; // contribution vanishes mod 2^n
            const Qubit pp = ctx.acquire_one();
            const std::size_t begin = ctx.mark();
            ctx.ccx(a[i], b[j], pp);
            const std::size_t end = ctx.mark();
            // controlled increment of dest[i+j ..] by pp, carry-free MCT ladder
            for (int k = n - 1; k > i + j; --k) {
                std::vector<Qubit> controls{pp};
                for (int t = i + j; t < k; ++t)
                    controls.push_back(dest[t]);
                ctx.mct(std::move(controls), {}, dest[k]);
            }
            ctx.cx(pp, dest[i + j]);
            ctx.dispose(begin, end, std::vector<Qubit>{pp});
        }
    }
}

} // namespace

void build_ripple_adder(BuildContext& ctx, const Wires& a, const Wires& b, const Wires& dest,
                        std::optional<Qubit> carry_out, CarryIn carry_in) {
    check_operands(a, b, dest);
    const int n = a.size();

    // Carry chain c[0..n]; c[0] is the carry-in. A flag-qubit carry-in is
    // wired directly (the chain never writes c[0]). Entries that are
    // identically |0> (constant-zero carry-in) or unused (c[n] without a
    // carry-out) are not materialized.
    const int top = carry_out ? n : n - 1;
    std::vector<Qubit> c(static_cast<std::size_t>(n) + 1, -1);
    int needed = top;
    if (carry_in.kind == CarryIn::Kind::One)
        ++needed;
    std::vector<Qubit> chain = ctx.acquire(std::max(needed, 0));
    std::size_t next = 0;
    if (carry_in.kind == CarryIn::Kind::One)
        c[0] = chain[next++];
    else if (carry_in.kind == CarryIn::Kind::Wire)
        c[0] = carry_in.wire;
    for (int i = 1; i <= top; ++i)
        c[static_cast<std::size_t>(i)] = chain[next++];

    const std::size_t span_begin = ctx.mark();
    if (carry_in.kind == CarryIn::Kind::One)
        ctx.x(c[0]);
    for (int i = 0; i < top; ++i) {
        const Qubit lower = c[static_cast<std::size_t>(i)];
        const Qubit upper = c[static_cast<std::size_t>(i) + 1];
        ctx.ccx(a[i], b[i], upper);
        if (lower >= 0) {
            ctx.ccx(a[i], lower, upper);
            ctx.ccx(b[i], lower, upper);
        }
    }
    const std::size_t span_end = ctx.mark();

    // Sum bits and the carry-out copy read the live chain.
    for (int i = 0; i < n; ++i) {
        ctx.cx(a[i], dest[i]);
        ctx.cx(b[i], dest[i]);
        if (c[static_cast<std::size_t>(i)] >= 0)
            ctx.cx(c[static_cast<std::size_t>(i)], dest[i]);
    }
    if (carry_out)
        ctx.cx(c[static_cast<std::size_t>(n)], *carry_out);

    ctx.dispose(span_begin, span_end, chain);
}

void build_subtractor(BuildContext& ctx, const Wires& rn, const Wires& op2, const Wires& dest,
                      SubVariant variant, std::optional<Qubit> carry_out,
                      std::optional<Qubit> carry_in_flag) {
    const bool reverse =
        variant == SubVariant::ReverseSub || variant == SubVariant::ReverseSubWithCarry;
    const bool with_carry =
        variant == SubVariant::SubWithCarry || variant == SubVariant::ReverseSubWithCarry;
    if (with_carry && !carry_in_flag)
        fail(Errc::MissingCarrySource, "subtract-with-carry needs the C flag as carry-in");

    const Wires& minuend = reverse ? op2 : rn;
    const Wires& subtrahend = reverse ? rn : op2;
    const int n = dest.size();
    if (minuend.size() != n || subtrahend.size() != n)
        fail(Errc::WidthMismatch, "operand registers must have equal widths");

    // Two's complement: dest = minuend + ~subtrahend + carry (1, or the C flag).
    auto copy = ctx.acquire(n);
    const std::size_t span_begin = ctx.mark();
    for (int i = 0; i < n; ++i)
        ctx.cx(subtrahend[i], copy[static_cast<std::size_t>(i)]);
    for (int i = 0; i < n; ++i)
        ctx.x(copy[static_cast<std::size_t>(i)]);
    const std::size_t span_end = ctx.mark();

    build_ripple_adder(ctx, minuend, Wires(copy), dest, carry_out,
                       with_carry ? CarryIn::from(*carry_in_flag) : CarryIn::one());

    ctx.dispose(span_begin, span_end, copy);
}

void build_multiplier(BuildContext& ctx, const Wires& a, const Wires& b, const Wires& dest,
                      std::optional<Wires> accumulate) {
    check_operands(a, b, dest);
    if (!accumulate) {
        build_product(ctx, a, b, dest);
        return;
    }
    if (accumulate->size() != dest.size())
        fail(Errc::WidthMismatch, "accumulate register width mismatch");
    // Form the product in a temporary, then ripple-add the accumulate register.
    auto product = ctx.acquire(dest.size());
    const std::size_t span_begin = ctx.mark();
    build_product(ctx, a, b, Wires(product));
    const std::size_t span_end = ctx.mark();
    build_ripple_adder(ctx, Wires(product), *accumulate, dest);
    ctx.dispose(span_begin, span_end, product);
}

void build_shift(BuildContext& ctx, const Wires& src, const Wires& dest, int amount,
                 ShiftDirection direction) {
    if (src.size() != dest.size())
        fail(Errc::WidthMismatch, "shift source and destination widths differ");
    if (src.overlaps(dest))
        fail(Errc::OverlappingRanges, "shift source and destination must be disjoint");
    const int n = src.size();
    if (amount >= n)
        return; // everything shifts out; dest stays |0>

    for (int i = 0; i < n; ++i)
        ctx.cx(src[i], dest[i]);
    if (amount <= 0)
        return;

    // Bubble one position per round; the outgoing bit lands in a scratch qubit.
    auto scratch = ctx.acquire(amount);
    for (int round = 0; round < amount; ++round) {
        if (direction == ShiftDirection::Left) {
            ctx.swap(dest[n - 1], scratch[static_cast<std::size_t>(round)]);
            for (int i = n - 2; i >= 0; --i)
                ctx.swap(dest[i], dest[i + 1]);
        } else {
            ctx.swap(dest[0], scratch[static_cast<std::size_t>(round)]);
            for (int i = 1; i < n; ++i)
                ctx.swap(dest[i], dest[i - 1]);
        }
    }

    // scratch[r] holds a copy of a known src bit; clear it per mode.
    if (ctx.coherent()) {
        for (int r = 0; r < amount; ++r) {
            const int bit = direction == ShiftDirection::Left ? n - 1 - r : r;
            ctx.cx(src[bit], scratch[static_cast<std::size_t>(r)]);
        }
    } else {
        for (Qubit q : scratch)
            ctx.reset(q);
    }
    ctx.release_clean(scratch);
}

} // namespace asmq

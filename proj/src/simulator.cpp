#include "asmq/simulator.hpp"

#include "asmq/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace asmq::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t bit_mask(const std::vector<Qubit>& qubits) {
    std::uint64_t mask = 0;
    for (Qubit q : qubits)
        mask |= 1ULL << q;
    return mask;
}

} // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream))) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

StateVector::StateVector(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 0 || qubit_count > kMaxQubits)
        fail(Errc::TooManyQubits, "a dense statevector supports at most " +
                                      std::to_string(kMaxQubits) + " qubits, got " +
                                      std::to_string(qubit_count));
    amps_.assign(std::size_t{1} << qubit_count, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

void StateVector::apply_gate(const Gate& gate) {
    const std::size_t n = amps_.size();
    switch (gate.kind) {
    case Gate::Kind::X: {
        const std::size_t m = std::size_t{1} << gate.target;
        for (std::size_t i = 0; i < n; ++i)
            if (!(i & m))
                std::swap(amps_[i], amps_[i | m]);
        break;
    }
    case Gate::Kind::H: {
        const std::size_t m = std::size_t{1} << gate.target;
        const double s = 1.0 / std::sqrt(2.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (i & m)
                continue;
            const auto a = amps_[i];
            const auto b = amps_[i | m];
            amps_[i] = (a + b) * s;
            amps_[i | m] = (a - b) * s;
        }
        break;
    }
    case Gate::Kind::Z: {
        const std::size_t m = std::size_t{1} << gate.target;
        for (std::size_t i = 0; i < n; ++i)
            if (i & m)
                amps_[i] = -amps_[i];
        break;
    }
    case Gate::Kind::CX:
    case Gate::Kind::Mct: {
        const std::uint64_t pos = bit_mask(gate.controls);
        const std::uint64_t neg = bit_mask(gate.negated);
        const std::size_t m = std::size_t{1} << gate.target;
        for (std::size_t i = 0; i < n; ++i)
            if ((i & pos) == pos && !(i & neg) && !(i & m))
                std::swap(amps_[i], amps_[i | m]);
        break;
    }
    case Gate::Kind::Mcz: {
        const std::uint64_t mask = bit_mask(gate.controls) | (std::uint64_t{1} << gate.target);
        for (std::size_t i = 0; i < n; ++i)
            if ((i & mask) == mask)
                amps_[i] = -amps_[i];
        break;
    }
    case Gate::Kind::Swap: {
        const std::size_t ma = std::size_t{1} << gate.target;
        const std::size_t mb = std::size_t{1} << gate.swap_partner;
        for (std::size_t i = 0; i < n; ++i)
            if ((i & ma) && !(i & mb))
                std::swap(amps_[i], amps_[(i ^ ma) | mb]);
        break;
    }
    case Gate::Kind::Barrier:
        break;
    case Gate::Kind::Reset:
    case Gate::Kind::Measure:
        throw std::logic_error("apply_gate cannot execute Reset/Measure; "
                               "use apply_reset/apply_measure");
    }
}

double StateVector::probability_of_one(Qubit qubit) const {
    const std::size_t m = std::size_t{1} << qubit;
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (!(i & m))
            continue;
        const double mag2 = std::norm(amps_[i]);
        if (mag2 < kCollapseEps * kCollapseEps)
            continue; // treat sub-threshold amplitudes as exact zeros
        p += mag2;
    }
    return p;
}

void StateVector::collapse(Qubit qubit, int outcome, double probability) {
    const std::size_t m = std::size_t{1} << qubit;
    const double scale = 1.0 / std::sqrt(probability);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        const bool is_one = (i & m) != 0;
        if (is_one == (outcome == 1))
            amps_[i] *= scale;
        else
            amps_[i] = {0.0, 0.0};
    }
}

void StateVector::apply_reset(Qubit qubit, Rng& rng) {
    const int outcome = apply_measure(qubit, rng);
    if (outcome == 1)
        apply_gate(Gate::x(qubit));
}

int StateVector::apply_measure(Qubit qubit, Rng& rng) {
    const double p1 = probability_of_one(qubit);
    int outcome;
    if (p1 <= kCollapseEps) {
        outcome = 0;
        last_deterministic_ = true;
    } else if (p1 >= 1.0 - kCollapseEps) {
        outcome = 1;
        last_deterministic_ = true;
    } else {
        outcome = rng.uniform() < p1 ? 1 : 0;
        last_deterministic_ = false;
    }
    collapse(qubit, outcome, outcome == 1 ? p1 : 1.0 - p1);
    return outcome;
}

double StateVector::norm() const {
    double total = 0.0;
    for (const auto& a : amps_)
        total += std::norm(a);
    return std::sqrt(total);
}

std::string format_bits(const std::vector<std::uint8_t>& bits, const ClassicalLayout& layout) {
    std::string key;
    for (const auto& reg : layout) {
        if (!key.empty())
            key += ' ';
        for (int bit = reg.range.size - 1; bit >= 0; --bit)
            key += bits[static_cast<std::size_t>(reg.range.start + bit)] ? '1' : '0';
    }
    return key;
}

Histogram run(const QuantumCircuit& circuit, const ClassicalLayout& layout, int shots,
              std::uint64_t seed) {
    if (shots < 1)
        fail(Errc::OutOfRange, "shots must be at least 1");
    if (circuit.qubit_count() > kMaxQubits)
        fail(Errc::TooManyQubits, "circuit uses " + std::to_string(circuit.qubit_count()) +
                                      " qubits; the dense statevector caps at " +
                                      std::to_string(kMaxQubits));

    const auto& gates = circuit.gates();
    std::size_t prefix_end = 0;
    while (prefix_end < gates.size() && gates[prefix_end].is_unitary())
        ++prefix_end;

    StateVector base(circuit.qubit_count());
    for (std::size_t g = 0; g < prefix_end; ++g)
        base.apply_gate(gates[g]);

    Histogram histogram;
    histogram.shots = shots;
    for (int shot = 0; shot < shots; ++shot) {
        StateVector state = base;
        Rng rng(seed, static_cast<std::uint64_t>(shot));
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(circuit.classical_bit_count()), 0);
        bool forced = true;
        for (std::size_t g = prefix_end; g < gates.size(); ++g) {
            const Gate& gate = gates[g];
            if (gate.kind == Gate::Kind::Reset) {
                state.apply_reset(gate.target, rng);
                forced = forced && state.last_collapse_deterministic();
            } else if (gate.kind == Gate::Kind::Measure) {
                bits[static_cast<std::size_t>(gate.classical_bit)] =
                    static_cast<std::uint8_t>(state.apply_measure(gate.target, rng));
                forced = forced && state.last_collapse_deterministic();
            } else {
                state.apply_gate(gate);
            }
        }
        const std::string key = format_bits(bits, layout);
        if (shot == 0 && forced) {
            // Every collapse was probability 0/1, so all shots are identical.
            histogram.counts[key] = shots;
            break;
        }
        histogram.counts[key] += 1;
    }
    return histogram;
}

} // namespace asmq::sim

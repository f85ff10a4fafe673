#pragma once

#include "asmq/circuit.hpp"
#include "asmq/simulator.hpp"

#include <complex>
#include <random>
#include <vector>

namespace asmq::test {

// Seeded random unitary gate over `qubits` qubits, drawn from the full IR
// gate set (X, H, Z, CX, SWAP, MCT with optional negated controls, MCZ,
// Barrier).
inline Gate random_unitary_gate(std::mt19937& rng, int qubits) {
    std::uniform_int_distribution<int> kind_pick(0, 7);
    std::uniform_int_distribution<int> qubit_pick(0, qubits - 1);
    auto distinct = [&](int count) {
        std::vector<Qubit> all(static_cast<std::size_t>(qubits));
        for (int i = 0; i < qubits; ++i)
            all[static_cast<std::size_t>(i)] = i;
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(static_cast<std::size_t>(count));
        return all;
    };

    switch (kind_pick(rng)) {
    case 0: return Gate::x(qubit_pick(rng));
    case 1: return Gate::h(qubit_pick(rng));
    case 2: return Gate::z(qubit_pick(rng));
    case 3: {
        if (qubits < 2)
            return Gate::x(0);
        auto qs = distinct(2);
        return Gate::cx(qs[0], qs[1]);
    }
    case 4: {
        if (qubits < 2)
            return Gate::h(0);
        auto qs = distinct(2);
        return Gate::swap(qs[0], qs[1]);
    }
    case 5: {
        if (qubits < 2)
            return Gate::x(0);
        std::uniform_int_distribution<int> count_pick(2, qubits);
        auto qs = distinct(count_pick(rng));
        const Qubit target = qs.back();
        qs.pop_back();
        // split controls into positive and negated
        std::vector<Qubit> pos, neg;
        for (Qubit q : qs)
            (rng() % 2 ? pos : neg).push_back(q);
        return Gate::mct(std::move(pos), std::move(neg), target);
    }
    case 6: {
        if (qubits < 2)
            return Gate::z(0);
        std::uniform_int_distribution<int> count_pick(2, qubits);
        auto qs = distinct(count_pick(rng));
        const Qubit target = qs.back();
        qs.pop_back();
        return Gate::mcz(std::move(qs), target);
    }
    default: return Gate::barrier();
    }
}

inline std::vector<Gate> random_unitary_segment(std::mt19937& rng, int qubits, int length) {
    std::vector<Gate> gates;
    gates.reserve(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i)
        gates.push_back(random_unitary_gate(rng, qubits));
    return gates;
}

// Runs a gate list on |basis> and returns the statevector.
inline sim::StateVector simulate_on_basis(const std::vector<Gate>& gates, int qubits,
                                          std::size_t basis) {
    sim::StateVector state(qubits);
    state.amplitudes()[0] = {0.0, 0.0};
    state.amplitudes()[basis] = {1.0, 0.0};
    for (const Gate& gate : gates)
        state.apply_gate(gate);
    return state;
}

} // namespace asmq::test

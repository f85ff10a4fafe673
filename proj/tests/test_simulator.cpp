#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asmq/diagnostics.hpp"
#include "asmq/driver.hpp"
#include "asmq/simulator.hpp"
#include "test_util.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace asmq;
using sim::StateVector;

TEST_CASE("hadamard on |0> gives equal amplitudes") {
    StateVector state(1);
    state.apply_gate(Gate::h(0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(state.amplitudes()[0] - std::complex<double>{inv_sqrt2, 0}) < 1e-12);
    CHECK(std::abs(state.amplitudes()[1] - std::complex<double>{inv_sqrt2, 0}) < 1e-12);
}

TEST_CASE("toffoli flips the target only when both controls are set") {
    StateVector state(3);
    state.apply_gate(Gate::x(0));
    state.apply_gate(Gate::x(1));
    state.apply_gate(Gate::ccx(0, 1, 2));
    CHECK(std::abs(state.amplitudes()[0b111] - std::complex<double>{1, 0}) < 1e-12);

    StateVector miss(3);
    miss.apply_gate(Gate::x(0));
    miss.apply_gate(Gate::ccx(0, 1, 2));
    CHECK(std::abs(miss.amplitudes()[0b001] - std::complex<double>{1, 0}) < 1e-12);
}

TEST_CASE("negated controls fire on zero bits") {
    StateVector state(2);
    state.apply_gate(Gate::mct({}, {0}, 1)); // X on q1 iff q0 == 0
    CHECK(std::abs(state.amplitudes()[0b10] - std::complex<double>{1, 0}) < 1e-12);
}

TEST_CASE("swap exchanges basis index bits") {
    StateVector state(2);
    state.apply_gate(Gate::x(0));
    state.apply_gate(Gate::swap(0, 1));
    CHECK(std::abs(state.amplitudes()[0b10] - std::complex<double>{1, 0}) < 1e-12);
}

TEST_CASE("mcz flips the phase of the all-ones component only") {
    StateVector state(2);
    state.apply_gate(Gate::h(0));
    state.apply_gate(Gate::h(1));
    state.apply_gate(Gate::mcz({0}, 1));
    CHECK(state.amplitudes()[0b11].real() < 0);
    CHECK(state.amplitudes()[0b00].real() > 0);
    CHECK(state.amplitudes()[0b01].real() > 0);
    CHECK(state.amplitudes()[0b10].real() > 0);
}

TEST_CASE("norm is preserved across random 50-gate circuits") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        StateVector state(4);
        for (const Gate& gate : test::random_unitary_segment(rng, 4, 50))
            state.apply_gate(gate);
        CHECK(std::abs(state.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("reset on basis states is deterministic") {
    sim::Rng rng(0, 0);
    StateVector one(1);
    one.apply_gate(Gate::x(0));
    one.apply_reset(0, rng);
    CHECK(one.last_collapse_deterministic());
    CHECK(std::abs(one.amplitudes()[0] - std::complex<double>{1, 0}) < 1e-12);

    StateVector zero(1);
    zero.apply_reset(0, rng);
    CHECK(zero.last_collapse_deterministic());
    CHECK(std::abs(zero.amplitudes()[0] - std::complex<double>{1, 0}) < 1e-12);
}

TEST_CASE("reset on a superposition samples both outcomes") {
    // Histogram of the pre-reset value over 4096 seeded shots: the observed
    // frequency of |1> must sit within 0.5 +/- 0.03.
    QuantumCircuit circuit;
    circuit.allocate_qubits(1, "q");
    const int bit = circuit.allocate_classical_bits(1);
    circuit.append(Gate::h(0));
    circuit.append(Gate::measure(0, bit));
    sim::ClassicalLayout layout{{"Q", "q", {bit, 1}}};

    const auto histogram = sim::run(circuit, layout, 4096, 7);
    CHECK(histogram.shots == 4096);
    const double freq = static_cast<double>(histogram.counts.at("1")) / 4096.0;
    CHECK(freq > 0.47);
    CHECK(freq < 0.53);
}

TEST_CASE("measuring a bell pair never yields mixed parity") {
    QuantumCircuit circuit;
    circuit.allocate_qubits(2, "q");
    const int bits = circuit.allocate_classical_bits(2);
    circuit.append(Gate::h(0));
    circuit.append(Gate::cx(0, 1));
    circuit.append(Gate::measure(0, bits));
    circuit.append(Gate::measure(1, bits + 1));
    sim::ClassicalLayout layout{{"Q", "q", {bits, 2}}};

    const auto histogram = sim::run(circuit, layout, 2048, 3);
    long total = 0;
    for (const auto& [key, count] : histogram.counts) {
        CHECK((key == "00" || key == "11"));
        total += count;
    }
    CHECK(total == 2048);
}

TEST_CASE("empty circuit histograms") {
    QuantumCircuit circuit;
    const auto histogram = sim::run(circuit, {}, 10, 0);
    CHECK(histogram.shots == 10);
    CHECK(histogram.counts.at("") == 10);
}

TEST_CASE("identical (circuit, shots, seed) produce identical histograms") {
    QuantumCircuit circuit;
    circuit.allocate_qubits(3, "q");
    const int bits = circuit.allocate_classical_bits(3);
    for (int q = 0; q < 3; ++q)
        circuit.append(Gate::h(q));
    for (int q = 0; q < 3; ++q)
        circuit.append(Gate::measure(q, bits + q));
    sim::ClassicalLayout layout{{"Q", "q", {bits, 3}}};

    const auto a = sim::run(circuit, layout, 512, 11);
    const auto b = sim::run(circuit, layout, 512, 11);
    CHECK(a.counts == b.counts);
    const auto c = sim::run(circuit, layout, 512, 12);
    CHECK(a.counts != c.counts); // different seed, different samples (overwhelmingly)
}

TEST_CASE("uniform superposition marginals stay within 5 sigma") {
    for (int qubits = 1; qubits <= 3; ++qubits) {
        QuantumCircuit circuit;
        circuit.allocate_qubits(qubits, "q");
        const int bits = circuit.allocate_classical_bits(qubits);
        for (int q = 0; q < qubits; ++q)
            circuit.append(Gate::h(q));
        for (int q = 0; q < qubits; ++q)
            circuit.append(Gate::measure(q, bits + q));
        sim::ClassicalLayout layout{{"Q", "q", {bits, qubits}}};

        const int shots = 8192;
        const auto histogram = sim::run(circuit, layout, shots, 21);
        const double p = 1.0 / static_cast<double>(1 << qubits);
        const double sigma = std::sqrt(p * (1.0 - p) / shots);
        for (const auto& [key, count] : histogram.counts) {
            const double freq = static_cast<double>(count) / shots;
            CHECK(std::abs(freq - p) < 5.0 * sigma);
        }
    }
}

TEST_CASE("qubit capacity is enforced") {
    QuantumCircuit circuit;
    circuit.allocate_qubits(sim::kMaxQubits + 1, "q");
    try {
        sim::run(circuit, {}, 1, 0);
        FAIL("expected CompileError");
    } catch (const CompileError& e) {
        CHECK(e.code() == Errc::TooManyQubits);
    }
}

TEST_CASE("reset-mode and coherent lowering agree on measured values") {
    const char* source = R"({"register_size": 2}
MOV R1, #0
MOV R2, #1
ADD R3, R1, R2
MOV R1, R2
MOV R2, R3
ADD R3, R1, R2
SUB R4, R3, #1
)";
    const RunReport reset_mode = run_source(source);
    Overrides coherent;
    coherent.maintain_coherence = true;
    const RunReport coherent_mode = run_source(source, coherent);
    REQUIRE(reset_mode.histogram.has_value());
    REQUIRE(coherent_mode.histogram.has_value());
    CHECK(reset_mode.histogram->counts == coherent_mode.histogram->counts);
    CHECK(reset_mode.lowered.circuit.has_reset());
    CHECK(!coherent_mode.lowered.circuit.has_reset());
}

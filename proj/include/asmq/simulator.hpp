#pragma once

#include "asmq/circuit.hpp"
#include "asmq/register_file.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace asmq::sim {

inline constexpr int kMaxQubits = 24;          // dense-statevector cap
inline constexpr double kCollapseEps = 1e-12;  // amplitudes below this are treated as zero

/// Deterministic per-shot random stream derived from (seed, stream index).
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);
    /// Uniform double in [0, 1).
    double uniform();

private:
    std::mt19937_64 engine_;
};

class StateVector {
public:
    explicit StateVector(int qubit_count);

    int qubit_count() const { return qubit_count_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
    std::vector<std::complex<double>>& amplitudes() { return amps_; }

    /// In-place unitary update; Barrier is the identity. Reset/Measure are
    /// rejected here (use apply_reset / apply_measure).
    void apply_gate(const Gate& gate);
    void apply_reset(Qubit qubit, Rng& rng);
    /// Returns the sampled bit.
    int apply_measure(Qubit qubit, Rng& rng);

    double probability_of_one(Qubit qubit) const;
    double norm() const;
    /// True if the last apply_reset/apply_measure outcome was forced
    /// (probability 0 or 1 within kCollapseEps).
    bool last_collapse_deterministic() const { return last_deterministic_; }

private:
    void collapse(Qubit qubit, int outcome, double probability);

    int qubit_count_;
    std::vector<std::complex<double>> amps_;
    bool last_deterministic_ = true;
};

struct Histogram {
    std::map<std::string, long> counts;
    long shots = 0;
};

/// Classical-register layout used to key histogram entries: registers in
/// declaration order, each rendered most-significant-bit first, joined by a
/// single space.
using ClassicalLayout = std::vector<ClassicalRegister>;

std::string format_bits(const std::vector<std::uint8_t>& bits, const ClassicalLayout& layout);

/// Executes the gate list `shots` times with a deterministic RNG stream per
/// shot. The unitary prefix before the first Reset/Measure is evolved once
/// and cached; shots whose collapses are all forced short-circuit into a
/// single bin.
Histogram run(const QuantumCircuit& circuit, const ClassicalLayout& layout, int shots,
              std::uint64_t seed);

} // namespace asmq::sim

#include "asmq/driver.hpp"

#include "asmq/emitter.hpp"

#include <algorithm>
#include <sstream>

namespace asmq {

namespace {

void apply_overrides(Config& config, const Overrides& overrides) {
    if (overrides.shots)
        config.shots = *overrides.shots;
    if (overrides.seed)
        config.seed = *overrides.seed;
    if (overrides.display)
        config.display = *overrides.display;
    if (overrides.execute)
        config.execute = *overrides.execute;
    if (overrides.decode)
        config.decode = *overrides.decode;
    if (overrides.maintain_coherence)
        config.maintain_coherence = *overrides.maintain_coherence;
}

} // namespace

RunReport run_source(const std::string& source, const Overrides& overrides) {
    Program program = parse_source(source);
    apply_overrides(program.config, overrides);

    RunReport report;
    report.config = program.config;
    report.warnings = program.warnings;
    report.lowered = lower_program(program);

    // Programs that execute without an explicit STR still need a readout:
    // measure every named register into an implicit classical register.
    if (program.config.execute && !report.lowered.circuit.has_measurement()) {
        for (const std::string& name : report.lowered.regs.register_names()) {
            const auto creg = report.lowered.regs.ensure_classical(report.lowered.circuit, name);
            const auto range = report.lowered.regs.range_of(name);
            for (int i = 0; i < range.size; ++i)
                report.lowered.circuit.append(Gate::measure(range[i], creg.start + i));
        }
    }
    report.layout = report.lowered.regs.classical_registers();

    if (program.config.decode)
        report.decode_trace = report.lowered.trace;
    if (program.config.display == DisplayMode::Text || program.config.display == DisplayMode::Both)
        report.diagram = emit_text_diagram(report.lowered.circuit, report.lowered.regs);
    if (program.config.display == DisplayMode::Qasm || program.config.display == DisplayMode::Both)
        report.qasm = emit_qasm(report.lowered.circuit, report.lowered.regs);
    if (program.config.execute)
        report.histogram = sim::run(report.lowered.circuit, report.layout, program.config.shots,
                                    program.config.seed);
    return report;
}

std::string qasm_of(const RunReport& report) {
    if (report.qasm)
        return *report.qasm;
    return emit_qasm(report.lowered.circuit, report.lowered.regs);
}

std::vector<std::string> format_histogram(const sim::Histogram& histogram,
                                          const sim::ClassicalLayout& layout) {
    std::vector<std::pair<std::string, long>> rows(histogram.counts.begin(),
                                                   histogram.counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });

    std::vector<std::string> lines;
    lines.reserve(rows.size());
    for (const auto& [key, count] : rows) {
        std::ostringstream line;
        line << key << ": " << count;
        if (!layout.empty()) {
            // decimal reading per classical register
            std::istringstream groups(key);
            std::string group;
            std::ostringstream values;
            std::size_t index = 0;
            while (groups >> group && index < layout.size()) {
                if (index)
                    values << ' ';
                values << layout[index].display_name << '='
                       << std::stoull(group, nullptr, 2);
                ++index;
            }
            line << "  (" << values.str() << ")";
        }
        lines.push_back(line.str());
    }
    return lines;
}

std::vector<std::string> format_trace(const std::vector<TraceEntry>& trace) {
    std::vector<std::string> lines;
    lines.reserve(trace.size());
    for (const TraceEntry& entry : trace) {
        std::ostringstream line;
        line << entry.text;
        if (entry.text.size() < 24)
            line << std::string(24 - entry.text.size(), ' ');
        line << " gates=" << entry.gate_count;
        line << " qubits=[";
        // compress touched indices into ranges
        for (std::size_t i = 0; i < entry.qubits_touched.size();) {
            std::size_t j = i;
            while (j + 1 < entry.qubits_touched.size() &&
                   entry.qubits_touched[j + 1] == entry.qubits_touched[j] + 1)
                ++j;
            if (i)
                line << ',';
            if (j == i)
                line << entry.qubits_touched[i];
            else
                line << entry.qubits_touched[i] << '-' << entry.qubits_touched[j];
            i = j + 1;
        }
        line << "] total_qubits=" << entry.cumulative_qubits;
        lines.push_back(line.str());
    }
    return lines;
}

} // namespace asmq

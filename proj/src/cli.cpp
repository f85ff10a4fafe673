#include "asmq/cli.hpp"

#include "asmq/diagnostics.hpp"
#include "asmq/driver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace asmq {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"asm2q: compiles simplified ARM assembly to quantum circuits"};
    app.allow_extras(false);

    std::string input_path;
    app.add_option("input", input_path, "assembly source file")->required();

    int shots = 0;
    auto* shots_opt = app.add_option("--shots", shots, "simulation repetitions");
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "simulator RNG seed");
    std::string display;
    auto* display_opt =
        app.add_option("--display", display, "circuit output: none, text, qasm, both")
            ->check(CLI::IsMember({"none", "text", "qasm", "both"}));
    std::string qasm_path;
    app.add_option("--emit-qasm", qasm_path, "write OpenQASM 2.0 to this file");
    bool no_execute = false;
    app.add_flag("--no-execute", no_execute, "compile only, skip simulation");
    bool decode = false;
    app.add_flag("--decode", decode, "print the per-instruction lowering trace");
    bool coherent = false;
    app.add_flag("--coherent", coherent, "use fresh ancillas and uncomputation, never Reset");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    std::ifstream file(input_path);
    if (!file) {
        err << "asm2q: error: cannot open \"" << input_path << "\"\n";
        return 1;
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();

    Overrides overrides;
    if (shots_opt->count() > 0) {
        if (shots < 1) {
            err << "asm2q: error: --shots must be at least 1\n";
            return 1;
        }
        overrides.shots = shots;
    }
    if (seed_opt->count() > 0)
        overrides.seed = seed;
    if (display_opt->count() > 0) {
        if (display == "none")
            overrides.display = DisplayMode::None;
        else if (display == "text")
            overrides.display = DisplayMode::Text;
        else if (display == "qasm")
            overrides.display = DisplayMode::Qasm;
        else
            overrides.display = DisplayMode::Both;
    }
    if (no_execute)
        overrides.execute = false;
    if (decode)
        overrides.decode = true;
    if (coherent)
        overrides.maintain_coherence = true;

    try {
        const RunReport report = run_source(buffer.str(), overrides);
        for (const std::string& warning : report.warnings)
            err << input_path << ": warning: " << warning << "\n";
        if (!report.decode_trace.empty())
            for (const std::string& line : format_trace(report.decode_trace))
                out << line << "\n";
        if (report.diagram)
            out << *report.diagram;
        if (report.qasm)
            out << *report.qasm;
        if (!qasm_path.empty()) {
            std::ofstream qasm_file(qasm_path);
            if (!qasm_file) {
                err << "asm2q: error: cannot write \"" << qasm_path << "\"\n";
                return 1;
            }
            qasm_file << qasm_of(report);
        }
        if (report.histogram)
            for (const std::string& line : format_histogram(*report.histogram, report.layout))
                out << line << "\n";
    } catch (const CompileError& e) {
        err << input_path << ":" << e.line() << ": error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace asmq

// iqu — command-line front end: run, check, parse, gates.
//
// Exit codes: 0 success, 1 parse error, 2 type error, 3 runtime error,
// 4 usage error.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "iqu/eval.hpp"
#include "iqu/gates.hpp"
#include "iqu/parser.hpp"
#include "iqu/quantum.hpp"
#include "iqu/typecheck.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitType = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitUsage = 4;

std::optional<std::string> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string format_prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12f", p);
    return buf;
}

void dump_gates(std::ostream& out) {
    for (const auto& g : iqu::gate_table()) {
        out << g.name << " arity=" << g.arity << " adjoint=" << g.adjoint << "\n";
        const size_t dim = g.unitary.dim;
        for (size_t r = 0; r < dim; ++r) {
            for (size_t c = 0; c < dim; ++c) {
                const auto& z = g.unitary.at(r, c);
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
                out << (c ? " " : "") << buf;
            }
            out << "\n";
        }
    }
}

struct Options {
    std::string file;
    std::string mode = "dist";
    std::optional<uint64_t> seed;
    uint64_t fuel = 10'000'000;
    unsigned max_qubits = 20;
    bool trace = false;
    bool strict_pred = false;
    bool faithful_divergence = false;
};

int with_source(const Options& opt, const std::function<int(const std::string&)>& body) {
    auto source = slurp(opt.file);
    if (!source) {
        std::cerr << "error: cannot read " << opt.file << "\n";
        return kExitUsage;
    }
    try {
        return body(*source);
    } catch (const iqu::ParseError& e) {
        std::cerr << opt.file << ":" << e.what() << "\n";
        return kExitParse;
    } catch (const iqu::TypeError& e) {
        std::cerr << opt.file << ":" << e.what() << "\n";
        return kExitType;
    } catch (const iqu::RuntimeError& e) {
        std::cerr << opt.file << ": " << e.what() << "\n";
        return kExitRuntime;
    }
}

int cmd_run(const Options& opt) {
    return with_source(opt, [&](const std::string& source) {
        iqu::EvalConfig cfg;
        cfg.mode = opt.mode == "sample" ? iqu::EvalConfig::Mode::Sample
                                        : iqu::EvalConfig::Mode::Distribution;
        cfg.seed = opt.seed.value_or(0);
        cfg.fuel = opt.fuel;
        cfg.max_qubits = opt.max_qubits;
        cfg.trace = opt.trace;
        cfg.strict_pred = opt.strict_pred;
        cfg.faithful_divergence = opt.faithful_divergence;

        iqu::RunReport report = iqu::run_program(source, {}, cfg);
        for (const auto& line : report.merged)
            std::cout << line.value << "\t" << format_prob(line.probability) << "\n";
        if (report.lost_probability > 0.0)
            std::cerr << "warning: probability mass " << report.lost_probability
                      << " lost to fuel-exhausted branches\n";
        return kExitOk;
    });
}

int cmd_check(const Options& opt) {
    return with_source(opt, [&](const std::string& source) {
        iqu::TermPtr t = iqu::parse_program(source);
        iqu::TypePtr ty = iqu::check_program(t);
        std::cout << iqu::to_string(ty) << "\n";
        return kExitOk;
    });
}

int cmd_parse(const Options& opt) {
    return with_source(opt, [&](const std::string& source) {
        iqu::TermPtr t = iqu::parse_program(source);
        std::cout << iqu::ast_dump(t);
        return kExitOk;
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"IQu: a quantum extension of Idealized Algol"};
    app.require_subcommand(1);

    Options opt;

    auto add_eval_flags = [&](CLI::App* cmd, bool with_mode) {
        cmd->add_option("file", opt.file, "IQu source file (.iqu)")->required();
        if (with_mode) {
            cmd->add_option("--mode", opt.mode, "dist (exhaustive) or sample")
                ->check(CLI::IsMember({"dist", "sample"}));
            cmd->add_option("--seed", opt.seed, "RNG seed (sample mode only)");
            cmd->add_option("--fuel", opt.fuel, "rule-application budget per path");
            cmd->add_option("--max-qubits", opt.max_qubits, "largest allocatable register");
            cmd->add_flag("--trace", opt.trace, "print one line per evaluation rule to stderr");
            cmd->add_flag("--strict-pred", opt.strict_pred, "make pred 0 a runtime error");
            cmd->add_flag("--faithful-divergence", opt.faithful_divergence,
                          "spin on wr-undefined :: instead of reporting an error");
        }
    };

    CLI::App* run = app.add_subcommand("run", "evaluate a program and print its outcomes");
    add_eval_flags(run, true);
    CLI::App* check = app.add_subcommand("check", "type-check a program and print its type");
    add_eval_flags(check, false);
    CLI::App* parse = app.add_subcommand("parse", "parse a program and dump the AST");
    add_eval_flags(parse, false);
    app.add_subcommand("gates", "dump the gate table with unitaries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (run->parsed()) {
        if (opt.seed && opt.mode != "sample") {
            std::cerr << "error: --seed is only valid with --mode sample\n";
            return kExitUsage;
        }
        return cmd_run(opt);
    }
    if (check->parsed())
        return cmd_check(opt);
    if (parse->parsed())
        return cmd_parse(opt);
    dump_gates(std::cout);
    return kExitOk;
}

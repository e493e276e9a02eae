// Command-line front end: recover ODE coefficients, dump the Maurer-Cartan
// matrices, run the verification sweep, or probe the determinant identities
// around Abel's formula. Output is deterministic: identical invocations
// produce byte-identical reports.

#include "wron/cartan.hpp"
#include "wron/report.hpp"
#include "wron/verify.hpp"
#include "wron/wronskian.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitUsage = 3;
constexpr int kExitDomain = 4;

struct Options {
    std::string funcs;
    std::string input;
    double t0 = 0.0;
    double t1 = 1.0;
    int samples = 17;
    std::uint64_t seed = 42;
    double tol = 1.0;
    std::string format = "json";
    std::string out;
};

// Split on commas at top nesting depth only; commas inside parentheses
// belong to the expression.
std::vector<std::string> split_function_list(const std::string& list) {
    std::vector<std::string> parts;
    std::string current;
    int depth = 0;
    for (char c : list) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth <= 0) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    for (std::string& p : parts) {
        const size_t a = p.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) {
            p.clear();
            continue;
        }
        const size_t b = p.find_last_not_of(" \t\r\n");
        p = p.substr(a, b - a + 1);
    }
    return parts;
}

std::vector<std::string> read_function_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw wron::Error("cannot open input file '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        const size_t a = line.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        const size_t b = line.find_last_not_of(" \t");
        lines.push_back(line.substr(a, b - a + 1));
    }
    return lines;
}

wron::FunctionSystem load_system(const Options& opt) {
    std::vector<std::string> sources;
    if (!opt.funcs.empty() && !opt.input.empty())
        throw wron::Error("--funcs and --input are mutually exclusive");
    if (!opt.funcs.empty())
        sources = split_function_list(opt.funcs);
    else if (!opt.input.empty())
        sources = read_function_file(opt.input);
    else
        throw wron::Error("one of --funcs or --input is required");
    for (const std::string& s : sources)
        if (s.empty()) throw wron::Error("empty function in the list");
    return wron::FunctionSystem::parse(sources);
}

void validate_grid(const Options& opt) {
    if (opt.samples < 1) throw wron::Error("--samples must be >= 1");
    if (opt.samples > 1 && !(opt.t0 < opt.t1))
        throw wron::Error("--t0 must be strictly less than --t1 when --samples > 1");
    if (opt.format != "json" && opt.format != "csv")
        throw wron::Error("--format must be json or csv");
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw wron::Error("cannot open output file '" + opt.out + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

double grid_point(const Options& opt, int i) {
    return (opt.samples == 1) ? opt.t0
                              : opt.t0 + (opt.t1 - opt.t0) * static_cast<double>(i) / (opt.samples - 1);
}

int exit_code_for_rows(const std::vector<wron::CommandSample>& rows) {
    int evaluated = 0, domain = 0;
    for (const auto& r : rows) {
        if (r.domain_error) ++domain;
        if (r.evaluated()) ++evaluated;
    }
    if (domain == static_cast<int>(rows.size())) return kExitDomain;
    if (evaluated == 0) return kExitDegenerate;
    return kExitPass;
}

enum class Command { Recover, Cartan, Probe };

int run_command(Command command, const Options& opt) {
    const wron::FunctionSystem sys = load_system(opt);
    std::vector<wron::CommandSample> rows;
    rows.reserve(static_cast<size_t>(opt.samples));

    for (int i = 0; i < opt.samples; ++i) {
        wron::CommandSample row;
        row.t = grid_point(opt, i);
        try {
            const wron::WronskianData d = wron::build_wronskian(sys, row.t);
            if (d.degenerate) {
                row.degenerate = true;
            } else if (command == Command::Recover) {
                try {
                    row.p = wron::solve_coefficients(d);
                } catch (const wron::CrossCheckError& e) {
                    std::cerr << "warning: " << e.what() << "\n";
                    row.p = e.p_solve();
                }
            } else if (command == Command::Cartan) {
                row.cartan = wron::build_cartan(d);
            } else {
                row.probe = wron::abel_probe(d, wron::compute_R(d));
            }
        } catch (const wron::JetError& e) {
            row.domain_error = e.what();
        } catch (const wron::DegenerateWronskianError&) {
            row.degenerate = true;
        }
        rows.push_back(std::move(row));
    }

    const wron::GridSpec grid{opt.t0, opt.t1, opt.samples, opt.seed, opt.tol};
    const int n = sys.size();
    std::string text;
    if (command == Command::Recover)
        text = (opt.format == "json") ? wron::render_recover_json(n, grid, rows)
                                      : wron::render_recover_csv(n, rows);
    else if (command == Command::Cartan)
        text = (opt.format == "json") ? wron::render_cartan_json(n, grid, rows)
                                      : wron::render_cartan_csv(n, rows);
    else
        text = (opt.format == "json") ? wron::render_probe_json(n, grid, rows)
                                      : wron::render_probe_csv(n, rows);
    emit(opt, text);
    return exit_code_for_rows(rows);
}

int run_verify(const Options& opt) {
    const wron::FunctionSystem sys = load_system(opt);
    const wron::VerifyReport report =
        wron::sweep_grid(sys, opt.t0, opt.t1, opt.samples, opt.seed, opt.tol);
    emit(opt, opt.format == "json" ? wron::render_verify_json(report)
                                   : wron::render_verify_csv(report));
    if (report.domain_error_count == static_cast<int>(report.samples.size())) return kExitDomain;
    switch (report.verdict) {
        case wron::Verdict::Pass: return kExitPass;
        case wron::Verdict::Fail: return kExitFail;
        case wron::Verdict::Degenerate: return kExitDegenerate;
    }
    return kExitFail;
}

void add_common_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--funcs", opt.funcs, "comma-separated expressions in t");
    cmd->add_option("--input", opt.input, "file with one expression per line");
    cmd->add_option("--t0", opt.t0, "grid start");
    cmd->add_option("--t1", opt.t1, "grid end");
    cmd->add_option("--samples", opt.samples, "number of grid points");
    cmd->add_option("--seed", opt.seed, "seed for the randomized checks");
    cmd->add_option("--tol", opt.tol, "tolerance multiplier");
    cmd->add_option("--format", opt.format, "output format: json or csv");
    cmd->add_option("--out", opt.out, "write the report to a file instead of stdout");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wronskian / Maurer-Cartan toolkit"};
    app.require_subcommand(1);

    Options opt;
    CLI::App* recover = app.add_subcommand("recover", "recover the ODE coefficients p per sample");
    CLI::App* cartan = app.add_subcommand("cartan", "report R, L and the characteristic coefficients");
    CLI::App* verify = app.add_subcommand("verify", "run the identity checks over a grid");
    CLI::App* probe = app.add_subcommand("probe-abel", "juxtapose the determinant identities");
    for (CLI::App* cmd : {recover, cartan, verify, probe}) add_common_options(cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        validate_grid(opt);
        if (recover->parsed()) return run_command(Command::Recover, opt);
        if (cartan->parsed()) return run_command(Command::Cartan, opt);
        if (probe->parsed()) return run_command(Command::Probe, opt);
        return run_verify(opt);
    } catch (const wron::ParseError& e) {
        std::cerr << "error: parse: " << e.what() << "\n";
        return kExitUsage;
    } catch (const wron::InvalidGridError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const wron::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

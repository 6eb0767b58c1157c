// Copyright 2026 The ifm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: theory values, sampled experiments, table
// reproduction, QASM conversion, layout checks and plots.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ifm/ifm.hpp"

namespace {

using namespace ifm;

struct CircuitOptions {
    std::string kind = "bomb";
    std::size_t n = 2;
    int r = 1;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--circuit", kind, "bomb, dud, jozsa-cond or jozsa-anc")
            ->check(CLI::IsMember({"bomb", "dud", "jozsa-cond", "jozsa-anc"}));
        cmd->add_option("--n", n, "protocol iterations N (jozsa circuits)")
            ->check(CLI::Range(1, 23));
        cmd->add_option("--r", r, "computation result r (jozsa circuits)")
            ->check(CLI::IsMember({0, 1}));
    }

    [[nodiscard]] CircuitKind circuit_kind() const { return parse_circuit_kind(kind); }
    [[nodiscard]] bool is_protocol() const {
        return circuit_kind() == CircuitKind::jozsa_conditional ||
               circuit_kind() == CircuitKind::jozsa_ancilla;
    }
    [[nodiscard]] Circuit build() const { return make_circuit(circuit_kind(), {n, r}); }
    [[nodiscard]] ExperimentMetadata metadata() const {
        ExperimentMetadata meta;
        meta.circuit = kind;
        if (is_protocol()) {
            meta.n = n;
            meta.r = r;
        }
        return meta;
    }
};

struct NoiseOptions {
    std::string file;
    std::optional<double> symmetric;

    void add_to(CLI::App *cmd) {
        auto *f = cmd->add_option("--noise", file, "readout noise model file")
                      ->check(CLI::ExistingFile);
        auto *p = cmd->add_option("--readout-p", symmetric,
                                  "symmetric readout flip probability on every qubit")
                      ->check(CLI::Range(0.0, 1.0));
        f->excludes(p);
    }

    [[nodiscard]] std::optional<ReadoutErrorModel> model() const {
        if (!file.empty()) {
            return load_readout_model(file);
        }
        if (symmetric) {
            return ReadoutErrorModel::symmetric(*symmetric, kMaxQubits);
        }
        return std::nullopt;
    }

    [[nodiscard]] std::string label() const {
        if (!file.empty()) {
            return file;
        }
        if (symmetric) {
            std::ostringstream s;
            s << "symmetric p=" << *symmetric;
            return s.str();
        }
        return {};
    }
};

struct ScheduleOptions {
    RunSchedule schedule;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--runs", schedule.runs, "independent runs")->check(CLI::Range(1, 100000));
        cmd->add_option("--shots", schedule.shots, "shots per run")
            ->check(CLI::Range(1, 100000000));
        cmd->add_option("--seed", schedule.seed, "master seed");
        cmd->add_option("--threads", schedule.threads, "sampling threads")
            ->check(CLI::Range(1, 256));
    }
};

void write_text(const std::string &path, const std::string &text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw std::runtime_error("cannot write " + path);
    }
}

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// `line:N`, `grid:RxC`, or a coupling-map file path.
CouplingMap coupling_from_arg(const std::string &arg) {
    if (arg.rfind("line:", 0) == 0) {
        return line_coupling(std::stoul(arg.substr(5)));
    }
    if (arg.rfind("grid:", 0) == 0) {
        const std::string dims = arg.substr(5);
        const auto x = dims.find('x');
        if (x == std::string::npos) {
            throw std::invalid_argument("grid coupling must look like grid:RxC");
        }
        return grid_coupling(std::stoul(dims.substr(0, x)), std::stoul(dims.substr(x + 1)));
    }
    return load_coupling_map(arg);
}

void print_distribution(const OutcomeDistribution &dist) {
    for (const auto &[text, p] : dist.by_string()) {
        std::printf("%s  %.12f\n", text.c_str(), p);
    }
}

std::string format_layout(const Layout &layout) {
    std::ostringstream out;
    for (std::size_t q = 0; q < layout.size(); ++q) {
        out << (q ? " " : "") << "q" << q << "->" << layout[q];
    }
    return out.str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Interaction-free measurement and counterfactual computation simulator"};
    app.require_subcommand(1);

    // theory
    auto *theory = app.add_subcommand("theory", "closed-form success probability");
    std::size_t theory_n = 2;
    std::optional<std::size_t> theory_max;
    theory->add_option("--n", theory_n, "iterations N")->check(CLI::Range(1, 1000000));
    theory->add_option("--n-max", theory_max, "print a sweep N..n-max");

    // run
    auto *run = app.add_subcommand("run", "sample a circuit over runs x shots");
    CircuitOptions run_circuit;
    NoiseOptions run_noise;
    ScheduleOptions run_schedule;
    bool run_mitigate = false;
    std::string run_csv;
    std::string run_plot;
    run_circuit.add_to(run);
    run_noise.add_to(run);
    run_schedule.add_to(run);
    run->add_flag("--mitigate", run_mitigate, "calibrate and correct the all-zero estimate");
    run->add_option("--csv", run_csv, "write CSV to file ('-' for stdout)");
    run->add_option("--plot", run_plot, "write an SVG chart");

    // table
    auto *table = app.add_subcommand("table", "reproduce an experiment table");
    int table_id = 1;
    bool table_theory_only = false;
    NoiseOptions table_noise;
    ScheduleOptions table_schedule;
    std::string table_csv_path;
    std::string table_plot;
    table->add_option("--id", table_id, "table 1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
    table->add_flag("--theory-only", table_theory_only, "skip sampling");
    table_noise.add_to(table);
    table_schedule.add_to(table);
    table->add_option("--csv", table_csv_path, "write CSV to file ('-' for stdout)");
    table->add_option("--plot", table_plot, "write an SVG chart");

    // emit-qasm
    auto *emit = app.add_subcommand("emit-qasm", "write a built circuit as OpenQASM 2.0");
    CircuitOptions emit_circuit;
    std::string emit_out = "-";
    emit_circuit.add_to(emit);
    emit->add_option("--out", emit_out, "output file ('-' for stdout)");

    // parse-qasm
    auto *parse = app.add_subcommand("parse-qasm", "parse OpenQASM 2.0 and print its distribution");
    std::string parse_in;
    parse->add_option("file", parse_in, "QASM file")->required()->check(CLI::ExistingFile);

    // layout
    auto *layout = app.add_subcommand("layout", "check or find a layout on a coupling map");
    std::string layout_coupling;
    std::string layout_qasm;
    bool layout_route = false;
    std::string layout_out;
    CircuitOptions layout_circuit;
    layout->add_option("--coupling", layout_coupling, "coupling file, line:N or grid:RxC")
        ->required();
    layout->add_option("--qasm", layout_qasm, "circuit from a QASM file instead of a builder")
        ->check(CLI::ExistingFile);
    layout_circuit.add_to(layout);
    layout->add_flag("--route", layout_route, "insert SWAPs when no embedding exists");
    layout->add_option("--out", layout_out, "write the routed circuit as QASM");

    // plot
    auto *plot = app.add_subcommand("plot", "write an SVG chart");
    std::string plot_out;
    std::optional<int> plot_table;
    std::optional<std::size_t> plot_sweep;
    bool plot_theory_only = false;
    ScheduleOptions plot_schedule;
    NoiseOptions plot_noise;
    plot->add_option("--out", plot_out, "SVG output file")->required();
    plot->add_option("--table", plot_table, "plot table 1, 2 or 3")->check(CLI::IsMember({1, 2, 3}));
    plot->add_option("--sweep", plot_sweep, "plot theory for N = 1..value")->check(CLI::Range(1, 1000));
    plot->add_flag("--theory-only", plot_theory_only, "skip sampling for table plots");
    plot_schedule.add_to(plot);
    plot_noise.add_to(plot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (theory->parsed()) {
            const std::size_t hi = theory_max.value_or(theory_n);
            if (hi < theory_n) {
                throw std::invalid_argument("--n-max must be >= --n");
            }
            std::printf("N      success_pct    single1_pct\n");
            for (std::size_t n = theory_n; n <= hi; ++n) {
                const double leak = n >= 2 ? 100.0 * single_one_probability(n) : 0.0;
                std::printf("%-5zu  %11.6f    %11.6f\n", n, 100.0 * theoretical_success(n), leak);
            }
        } else if (run->parsed()) {
            const Circuit circuit = run_circuit.build();
            const auto model = run_noise.model();
            ExperimentMetadata meta = run_circuit.metadata();
            meta.noise = run_noise.label();
            const ExperimentResult result = run_experiment(
                circuit, run_schedule.schedule, model ? &*model : nullptr, run_mitigate, meta);
            if (run_csv != "-") {
                std::cout << format_result(result);
            }
            if (!run_csv.empty()) {
                write_text(run_csv, result_csv(result));
            }
            if (!run_plot.empty()) {
                plot::write_svg(run_plot, plot::render_svg(plot::chart_from_result(result)));
                std::cerr << "wrote " << run_plot << "\n";
            }
        } else if (table->parsed()) {
            const auto model = table_noise.model();
            const TableReport report = reproduce_table(
                table_id, model ? &*model : nullptr,
                table_theory_only ? std::nullopt : std::optional(table_schedule.schedule),
                table_noise.label());
            if (table_csv_path != "-") {
                std::cout << format_table(report);
            }
            if (!table_csv_path.empty()) {
                write_text(table_csv_path, table_csv(report));
            }
            if (!table_plot.empty()) {
                plot::write_svg(table_plot, plot::render_svg(plot::chart_from_table(report)));
                std::cerr << "wrote " << table_plot << "\n";
            }
        } else if (emit->parsed()) {
            write_text(emit_out, qasm::emit(emit_circuit.build()));
        } else if (parse->parsed()) {
            const Circuit circuit = qasm::parse(read_text(parse_in));
            std::printf("qubits %zu, cbits %zu, instructions %zu\n", circuit.num_qubits(),
                        circuit.num_cbits(), circuit.size());
            print_distribution(exact_distribution(circuit));
        } else if (layout->parsed()) {
            const CouplingMap coupling = coupling_from_arg(layout_coupling);
            const Circuit circuit =
                layout_qasm.empty() ? layout_circuit.build() : qasm::parse(read_text(layout_qasm));
            std::printf("circuit %s on %s (%zu physical qubits, %zu edges)\n",
                        circuit.label().empty() ? "<qasm>" : circuit.label().c_str(),
                        coupling.name().c_str(), coupling.num_physical(), coupling.edges().size());
            if (const auto found = find_layout(circuit, coupling)) {
                std::printf("layout: %s\n", format_layout(*found).c_str());
                if (!layout_out.empty()) {
                    write_text(layout_out, qasm::emit(insert_swaps(circuit, coupling, *found).circuit));
                }
            } else {
                std::printf("no embedding: some CNOT pair has no coupling edge under any layout\n");
                if (!layout_route) {
                    return 2;
                }
                if (circuit.num_qubits() > coupling.num_physical()) {
                    throw std::invalid_argument("circuit has more qubits than the device");
                }
                Layout trivial(circuit.num_qubits());
                for (std::size_t q = 0; q < trivial.size(); ++q) {
                    trivial[q] = q;
                }
                const RoutedCircuit routed = insert_swaps(circuit, coupling, trivial);
                const double diff = max_abs_difference(exact_distribution(circuit),
                                                       exact_distribution(routed.circuit));
                std::printf("routed with %zu swap(s) from %s; final %s\n", routed.swaps,
                            format_layout(trivial).c_str(),
                            format_layout(routed.final_layout).c_str());
                std::printf("max outcome probability difference after routing: %.3g\n", diff);
                if (!layout_out.empty()) {
                    write_text(layout_out, qasm::emit(routed.circuit));
                }
            }
        } else if (plot->parsed()) {
            plot::Chart chart;
            if (plot_table) {
                const auto model = plot_noise.model();
                chart = plot::chart_from_table(reproduce_table(
                    *plot_table, model ? &*model : nullptr,
                    plot_theory_only ? std::nullopt : std::optional(plot_schedule.schedule),
                    plot_noise.label()));
            } else {
                chart = plot::chart_theory_sweep(1, plot_sweep.value_or(9));
            }
            plot::write_svg(plot_out, plot::render_svg(chart));
            std::cerr << "wrote " << plot_out << "\n";
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

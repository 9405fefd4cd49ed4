// Copyright 2026 The TDD Authors
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

#include "tdd/commands.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "tdd/error.h"

namespace tdd {

namespace {

constexpr std::uint32_t kMaxVerifyQubits = 10;

using Clock = std::chrono::steady_clock;

PartitionConfig effective_config(const Circuit &c, const PartitionConfig &cfg) {
    if (cfg.scheme == Scheme::Sequential) {
        PartitionConfig r;
        return r;
    }
    return cfg.resolved(c.n_qubits);
}

NetworkOptions network_options(const RunOptions &opts) {
    NetworkOptions n;
    n.hyper = opts.hyper;
    n.reverse_order = opts.inverse_order;
    return n;
}

std::string format_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", s);
    return buf;
}

std::string format_amplitude(Weight w) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g%+.10gi", w.real() == 0 ? 0.0 : w.real(), w.imag() == 0 ? 0.0 : w.imag());
    return buf;
}

Tdd zero_state(NodeStore &store, Tdd f, std::uint32_t n) {
    for (std::uint32_t q = 0; q < n; q++) {
        IndexLabel in{q, 0};
        Tdd ket = store.generate(DenseTensor({in}, {1, 0}));
        IndexLabel var[] = {in};
        f = store.contract(f, ket, var);
    }
    return f;
}

void check_bits(const std::string &bits, std::uint32_t n, const char *what) {
    if (bits.size() != n) {
        throw TddError(ErrorKind::Usage, std::string(what) + " bit string has length " + std::to_string(bits.size()) +
                                             ", circuit has " + std::to_string(n) + " qubits");
    }
    if (bits.find_first_not_of("01") != std::string::npos) {
        throw TddError(ErrorKind::Usage, std::string(what) + " bit string may only contain 0 and 1");
    }
}

}  // namespace

RunReport run_circuit(const Circuit &c, const RunOptions &opts) {
    RunReport rep;
    PartitionConfig cfg = effective_config(c, opts.partition);
    cfg.scheme = opts.partition.scheme;
    rep.circuit = c.name;
    rep.n_qubits = c.n_qubits;
    rep.gate_count = c.gates.size();
    rep.scheme = scheme_name(cfg.scheme);
    rep.k = cfg.scheme == Scheme::SchemeI ? cfg.k : 0;
    rep.k1 = cfg.scheme == Scheme::SchemeII ? cfg.k1 : 0;
    rep.k2 = cfg.scheme == Scheme::SchemeII ? cfg.k2 : 0;
    rep.inverse_order = opts.inverse_order;
    if (opts.verify && c.n_qubits > kMaxVerifyQubits) {
        throw TddError(ErrorKind::Usage, "--verify supports at most " + std::to_string(kMaxVerifyQubits) + " qubits");
    }
    auto start = Clock::now();
    Partitioned p = partition(c, cfg, network_options(opts));
    Plan plan = plan_from_parts(p);
    rep.parts = plan.parts;
    rep.steps = plan.steps.size();
    NodeStore store(p.network.order, opts.tol);
    ExecOptions eo;
    eo.deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(opts.timeout_s));
    try {
        ExecResult r = execute_plan(plan, p.network, store, eo);
        rep.final_nodes = r.final_nodes;
        rep.peak_nodes = r.peak_nodes;
        if (opts.zero_state) {
            Tdd state = zero_state(store, functionality(store, r.result, p.network), c.n_qubits);
            rep.final_nodes = store.size(state);
            rep.peak_nodes = std::max<std::uint64_t>(rep.peak_nodes, rep.final_nodes);
        }
        if (opts.verify) {
            Tdd f = functionality(store, r.result, p.network);
            double dev = store.to_dense(f).max_deviation(dense_functionality(p.network));
            rep.verify = VerifyOutcome{dev, dev <= opts.tol.norm_eps()};
        }
    } catch (const TddError &e) {
        if (e.kind() != ErrorKind::Timeout) {
            throw;
        }
        rep.timed_out = true;
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    rep.time = rep.timed_out ? ">" + format_seconds(opts.timeout_s) : format_seconds(rep.elapsed_ms / 1000);
    rep.stats = store.stats();
    return rep;
}

Tdd circuit_functionality(const Circuit &c, NodeStore &store, const RunOptions &opts) {
    PartitionConfig cfg = effective_config(c, opts.partition);
    cfg.scheme = opts.partition.scheme;
    Partitioned p = partition(c, cfg, network_options(opts));
    ExecResult r = execute_plan(plan_from_parts(p), p.network, store);
    Tdd f = functionality(store, r.result, p.network);
    store.unpin(r.result.root);
    store.pin(f.root);
    return f;
}

Weight amplitude(const Circuit &c, const std::string &in, const std::string &out, const RunOptions &opts) {
    check_bits(in, c.n_qubits, "input");
    check_bits(out, c.n_qubits, "output");
    NodeStore store(IndexOrder(c.n_qubits, opts.inverse_order), opts.tol);
    Tdd f = circuit_functionality(c, store, opts);
    Assignment a;
    for (std::uint32_t q = 0; q < c.n_qubits; q++) {
        a[{q, 0}] = in[q] == '1';
        a[{q, kOutputPosition}] = out[q] == '1';
    }
    return store.evaluate(f, a);
}

EquivResult check_equivalence(const Circuit &a, const Circuit &b, bool up_to_phase, const RunOptions &opts) {
    if (a.n_qubits != b.n_qubits) {
        throw TddError(ErrorKind::Usage, "circuits have different qubit counts (" + std::to_string(a.n_qubits) +
                                             " and " + std::to_string(b.n_qubits) + ")");
    }
    NodeStore store(IndexOrder(a.n_qubits, opts.inverse_order), opts.tol);
    Tdd fa = circuit_functionality(a, store, opts);
    Tdd fb = circuit_functionality(b, store, opts);
    EquivResult r;
    r.weight_a = fa.root.weight;
    r.weight_b = fb.root.weight;
    if (fa.root.node == fb.root.node) {
        const ToleranceConfig &tol = store.tolerance();
        r.equivalent = up_to_phase ? tol.weights_equal(std::abs(r.weight_a), std::abs(r.weight_b))
                                   : tol.weights_equal(r.weight_a, r.weight_b);
    }
    return r;
}

std::string circuit_dot(const Circuit &c, const RunOptions &opts) {
    PartitionConfig cfg = effective_config(c, opts.partition);
    cfg.scheme = opts.partition.scheme;
    Partitioned p = partition(c, cfg, network_options(opts));
    NodeStore store(p.network.order, opts.tol);
    ExecResult r = execute_plan(plan_from_parts(p), p.network, store);
    return export_dot(store, r.result);
}

std::vector<RunReport> run_bench(const std::string &dir, const std::vector<PartitionConfig> &schemes,
                                 const RunOptions &opts, unsigned jobs) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        throw TddError(ErrorKind::Io, dir + " is not a directory");
    }
    std::vector<std::string> files;
    for (const auto &entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".qasm") {
            files.push_back(entry.path().string());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<RunReport> reports(files.size() * schemes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < reports.size(); i = next++) {
            const std::string &file = files[i / schemes.size()];
            RunOptions o = opts;
            o.partition = schemes[i % schemes.size()];
            RunReport &rep = reports[i];
            try {
                rep = run_circuit(load_qasm(file), o);
            } catch (const TddError &e) {
                rep.circuit = fs::path(file).stem().string();
                rep.scheme = scheme_name(o.partition.scheme);
                rep.inverse_order = o.inverse_order;
                rep.error = e.what();
            }
        }
    };
    jobs = std::max(1u, jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; j++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    return reports;
}

int cli_main(int argc, char **argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Tensor decision diagrams for quantum circuits", "tdd"};
    app.require_subcommand(1);

    RunOptions opts;
    std::string scheme = "seq";
    double eps = opts.tol.eps();
    double norm_eps = opts.tol.norm_eps();
    bool plain = false;
    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--scheme", scheme, "Contraction scheme")->check(CLI::IsMember({"seq", "p1", "p2"}));
        cmd->add_option("--k", opts.partition.k, "Scheme I crossing budget (default n/2)");
        cmd->add_option("--k1", opts.partition.k1, "Scheme II crossing budget (default n/2)");
        cmd->add_option("--k2", opts.partition.k2, "Scheme II middle block size (default n/2+1)");
        cmd->add_flag("--inverse-order", opts.inverse_order, "Reverse the qubit order of the index order");
        cmd->add_option("--eps", eps, "Weight grid pitch");
        cmd->add_option("--norm-eps", norm_eps, "Tolerance against the dense oracle");
        cmd->add_flag("--plain", plain, "One index per wire segment, no hyper-edges");
    };

    std::string file, file_b, json_path, plan_path, in_bits, out_bits, dot_path, dir;
    bool up_to_phase = false;
    bool both_orders = false;
    unsigned jobs = 1;
    std::vector<std::string> bench_schemes{"seq", "p1", "p2"};

    auto *sim = app.add_subcommand("sim", "Build the diagram of a circuit and report its size");
    sim->add_option("file", file, "OpenQASM 2 file")->required();
    add_common(sim);
    sim->add_flag("--verify", opts.verify, "Compare against a dense contraction (n <= 10)");
    sim->add_option("--json", json_path, "Write the report as JSON ('-' for stdout)");
    sim->add_option("--plan-json", plan_path, "Write the contraction plan as JSON");
    sim->add_option("--timeout-s", opts.timeout_s, "Timeout in seconds");
    sim->add_flag("--zero-state", opts.zero_state, "Apply the circuit to |0...0> instead of leaving inputs open");

    auto *amp = app.add_subcommand("amp", "Print <out|U|in>");
    amp->add_option("file", file, "OpenQASM 2 file")->required();
    amp->add_option("--in", in_bits, "Input bits, qubit 0 first")->required();
    amp->add_option("--out", out_bits, "Output bits, qubit 0 first")->required();
    add_common(amp);

    auto *equiv = app.add_subcommand("equiv", "Check two circuits for equal functionality");
    equiv->add_option("file_a", file, "First circuit")->required();
    equiv->add_option("file_b", file_b, "Second circuit")->required();
    equiv->add_flag("--up-to-phase", up_to_phase, "Ignore a global phase");
    add_common(equiv);

    auto *dot = app.add_subcommand("dot", "Write the diagram in Graphviz format");
    dot->add_option("file", file, "OpenQASM 2 file")->required();
    dot->add_option("-o,--output", dot_path, "Output file (default stdout)");
    add_common(dot);

    auto *bench = app.add_subcommand("bench", "Run every .qasm file of a directory");
    bench->add_option("dir", dir, "Benchmark directory")->required();
    bench->add_option("--schemes", bench_schemes, "Schemes to run")
        ->delimiter(',')
        ->check(CLI::IsMember({"seq", "p1", "p2"}));
    add_common(bench);
    bench->add_flag("--both-orders", both_orders, "Run each scheme under both qubit orders");
    bench->add_option("--json", json_path, "Write the reports as JSON ('-' for stdout)");
    bench->add_option("--timeout-s", opts.timeout_s, "Per-run timeout in seconds");
    bench->add_option("--jobs", jobs, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto write_text = [&](const std::string &path, const std::string &text) {
        if (path.empty() || path == "-") {
            out << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f || !(f << text)) {
            throw TddError(ErrorKind::Io, "cannot write " + path);
        }
    };

    try {
        opts.tol = ToleranceConfig(eps, norm_eps);
        opts.hyper = !plain;
        scheme_from_name(scheme, &opts.partition.scheme);

        if (*sim) {
            Circuit c = load_qasm(file);
            for (const auto &w : c.warnings) {
                err << "warning: " << w << "\n";
            }
            RunReport rep = run_circuit(c, opts);
            if (!plan_path.empty()) {
                PartitionConfig cfg = effective_config(c, opts.partition);
                cfg.scheme = opts.partition.scheme;
                NetworkOptions no = network_options(opts);
                write_text(plan_path, plan_to_json(plan_from_parts(partition(c, cfg, no))) + "\n");
            }
            if (json_path == "-") {
                out << nlohmann::json(rep).dump(2) << "\n";
            } else {
                out << "circuit      " << rep.circuit << "\n";
                out << "qubits       " << rep.n_qubits << "\n";
                out << "gates        " << rep.gate_count << "\n";
                out << "scheme       " << rep.scheme;
                if (opts.partition.scheme == Scheme::SchemeI) {
                    out << " k=" << rep.k;
                } else if (opts.partition.scheme == Scheme::SchemeII) {
                    out << " k1=" << rep.k1 << " k2=" << rep.k2;
                }
                out << (rep.inverse_order ? " (inverse order)" : "") << "\n";
                out << "parts        " << rep.parts << "\n";
                out << "steps        " << rep.steps << "\n";
                out << "final nodes  " << rep.final_nodes << "\n";
                out << "peak nodes   " << rep.peak_nodes << "\n";
                out << "time         " << rep.time << " s\n";
                if (rep.verify) {
                    out << "verify       " << (rep.verify->passed ? "ok" : "FAILED") << " (max deviation "
                        << rep.verify->max_deviation << ")\n";
                }
                if (!json_path.empty()) {
                    write_text(json_path, nlohmann::json(rep).dump(2) + "\n");
                }
            }
            if (rep.timed_out) {
                err << "timed out after " << opts.timeout_s << " s\n";
                return 1;
            }
            return rep.verify && !rep.verify->passed ? 1 : 0;
        }
        if (*amp) {
            Weight w = amplitude(load_qasm(file), in_bits, out_bits, opts);
            out << format_amplitude(opts.tol.canonical(w)) << "\n";
            return 0;
        }
        if (*equiv) {
            EquivResult r = check_equivalence(load_qasm(file), load_qasm(file_b), up_to_phase, opts);
            out << (r.equivalent ? "equivalent" : "not equivalent") << "\n";
            return r.equivalent ? 0 : 1;
        }
        if (*dot) {
            write_text(dot_path, circuit_dot(load_qasm(file), opts));
            return 0;
        }
        if (*bench) {
            std::vector<PartitionConfig> configs;
            for (const auto &name : bench_schemes) {
                PartitionConfig cfg = opts.partition;
                scheme_from_name(name, &cfg.scheme);
                configs.push_back(cfg);
            }
            std::vector<RunReport> reports = run_bench(dir, configs, opts, jobs);
            if (both_orders) {
                RunOptions inv = opts;
                inv.inverse_order = !opts.inverse_order;
                auto more = run_bench(dir, configs, inv, jobs);
                reports.insert(reports.end(), more.begin(), more.end());
            }
            std::string text = nlohmann::json(reports).dump(2) + "\n";
            if (json_path.empty() || json_path == "-") {
                out << text;
            } else {
                write_text(json_path, text);
                for (const auto &r : reports) {
                    out << r.circuit << " " << r.scheme << (r.inverse_order ? " inv" : "") << " final="
                        << r.final_nodes << " peak=" << r.peak_nodes << " time=" << r.time
                        << (r.error.empty() ? "" : " error: " + r.error) << "\n";
                }
            }
            return 0;
        }
    } catch (const TddError &e) {
        err << "tdd: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace tdd

// Command-line experiment runner.
//
//   gcf flow <config.json>        advance the normalized flow, write records
//   gcf soliton <config.json>     solve K^alpha = h by damped Newton
//   gcf diagnose <snapshot.csv>   report diagnostics for a stored body
//   gcf lemma-q                   randomized nonnegativity search for Q
//
// Exit codes: 0 success, 1 configuration or input error, 2 flow step
// failure, 3 solver non-convergence, 4 potential nonnegativity violation.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gcf/gcf.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kStepFailure = 2;
constexpr int kNoConvergence = 3;
constexpr int kLemmaViolation = 4;

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw gcf::ConfigError("cannot open output file '" + path + "'");
    return out;
}

// Periodic snapshots go to <stem>_step<N><ext> next to the configured path.
std::string snapshot_step_path(const std::string& base, long step) {
    const std::size_t slash = base.find_last_of('/');
    const std::size_t dot = base.find_last_of('.');
    std::ostringstream name;
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        name << base << "_step" << step;
    } else {
        name << base.substr(0, dot) << "_step" << step << base.substr(dot);
    }
    return name.str();
}

template <class Body>
Body make_initial(const gcf::ExperimentConfig& cfg);

template <>
gcf::CurveBody make_initial<gcf::CurveBody>(const gcf::ExperimentConfig& cfg) {
    return gcf::make_initial_curve(cfg);
}

template <>
gcf::AxisymBody make_initial<gcf::AxisymBody>(const gcf::ExperimentConfig& cfg) {
    return gcf::make_initial_axisym(cfg);
}

template <class Body>
int flow_backend(const gcf::ExperimentConfig& cfg) {
    const Body initial = make_initial<Body>(cfg);
    std::ofstream records = open_output(cfg.outputs.records_path);
    gcf::csv::write_record_header(records);
    const bool snapshots = !cfg.outputs.snapshot_path.empty();

    try {
        const gcf::FlowState<Body> final_state = gcf::run(
            initial, cfg.flow,
            [&](const gcf::DiagnosticsRecord& rec, const Body& body) {
                gcf::csv::write_record(records, rec);
                if (snapshots && cfg.outputs.snapshot_every > 0 &&
                    rec.step % cfg.outputs.snapshot_every == 0) {
                    std::ofstream snap = open_output(
                        snapshot_step_path(cfg.outputs.snapshot_path, rec.step));
                    gcf::csv::write_snapshot(snap, body);
                }
            });
        records.flush();
        if (snapshots) {
            std::ofstream snap = open_output(cfg.outputs.snapshot_path);
            gcf::csv::write_snapshot(snap, final_state.body);
        }
        gcf::log::info("flow finished at step " + std::to_string(final_state.step) +
                       ", t = " + gcf::csv::fmt17(final_state.t) +
                       (final_state.stop_rule_met ? " (stop rule met)"
                                                  : " (max_steps reached)"));
        return kOk;
    } catch (const gcf::StepFailure& e) {
        records.flush();
        std::cerr << "error: step-failure: " << e.what() << '\n';
        return kStepFailure;
    } catch (const gcf::ConvexityViolation& e) {
        records.flush();
        std::cerr << "error: convexity-violation: " << e.what() << '\n';
        return kStepFailure;
    }
}

int cmd_flow(const std::string& config_path) {
    const gcf::ExperimentConfig cfg = gcf::load_config(config_path);
    if (cfg.backend == "curve") return flow_backend<gcf::CurveBody>(cfg);
    return flow_backend<gcf::AxisymBody>(cfg);
}

template <class Body>
int soliton_backend(const gcf::ExperimentConfig& cfg) {
    const Body initial = make_initial<Body>(cfg);
    const bool snapshots = !cfg.outputs.snapshot_path.empty();

    try {
        if (cfg.continuation) {
            const gcf::ContinuationResult<Body> result = gcf::continuation(
                initial, cfg.alpha, cfg.continuation->alpha_to, cfg.continuation->steps,
                cfg.solve);
            {
                std::ofstream report = open_output(cfg.outputs.records_path);
                report << "rung,alpha,residual_maxnorm\n";
                for (std::size_t i = 0; i < result.rungs.size(); ++i)
                    report << i << ',' << gcf::csv::fmt17(result.rungs[i].alpha) << ','
                           << gcf::csv::fmt17(result.rungs[i].residual) << '\n';
            }
            if (!result.rungs.empty() && snapshots) {
                std::ofstream snap = open_output(cfg.outputs.snapshot_path);
                gcf::csv::write_snapshot(snap, result.rungs.back().body);
            }
            if (result.failed_rung) {
                std::cerr << "error: no-convergence: continuation rung "
                          << *result.failed_rung << " failed\n";
                return kNoConvergence;
            }
            return kOk;
        }

        const gcf::SolveResult<Body> solved = gcf::solve(initial, cfg.alpha, cfg.solve);
        {
            std::ofstream report = open_output(cfg.outputs.records_path);
            gcf::csv::write_solver_report(report, solved.history);
        }
        if (snapshots) {
            std::ofstream snap = open_output(cfg.outputs.snapshot_path);
            gcf::csv::write_snapshot(snap, solved.body);
        }
        gcf::log::info("solve converged in " +
                       std::to_string(solved.history.back().iter) + " iterations");
        return kOk;
    } catch (const gcf::NoConvergence& e) {
        std::ofstream report = open_output(cfg.outputs.records_path);
        report << "iter,residual_maxnorm,damping_used\n";
        const std::vector<double>& hist = e.history();
        for (std::size_t i = 0; i < hist.size(); ++i)
            report << i << ',' << gcf::csv::fmt17(hist[i]) << ",\n";
        std::cerr << "error: no-convergence: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const gcf::ConvexityViolation& e) {
        std::cerr << "error: convexity-violation: " << e.what() << '\n';
        return kNoConvergence;
    }
}

int cmd_soliton(const std::string& config_path) {
    const gcf::ExperimentConfig cfg = gcf::load_config(config_path);
    if (cfg.backend == "curve") return soliton_backend<gcf::CurveBody>(cfg);
    return soliton_backend<gcf::AxisymBody>(cfg);
}

template <class Body>
Body body_from_snapshot(const gcf::csv::Snapshot& snap) {
    const int n = static_cast<int>(snap.h.size());
    if (n < Body::min_samples)
        throw gcf::ConfigError("snapshot has " + std::to_string(n) +
                               " samples, backend needs at least " +
                               std::to_string(Body::min_samples));
    std::vector<double> h = snap.h;
    Body probe = Body::from_support(std::move(h));
    for (int j = 0; j < n; ++j) {
        const double expected = probe.angle(j);
        if (std::abs(snap.angle[static_cast<std::size_t>(j)] - expected) > 1e-12)
            throw gcf::ConfigError(
                "snapshot angle grid does not match the backend at sample " +
                std::to_string(j) + ": got " +
                gcf::csv::fmt17(snap.angle[static_cast<std::size_t>(j)]) +
                ", expected " + gcf::csv::fmt17(expected));
    }
    return probe;
}

int cmd_diagnose(const std::string& snapshot_path, double alpha,
                 const std::string& backend, const std::string& out_path) {
    std::ifstream in(snapshot_path);
    if (!in) throw gcf::ConfigError("cannot open snapshot '" + snapshot_path + "'");
    const gcf::csv::Snapshot snap = gcf::csv::read_snapshot(in);

    std::vector<gcf::ReportRow> rows;
    try {
        if (backend == "curve") {
            rows = gcf::diagnose_rows(body_from_snapshot<gcf::CurveBody>(snap), alpha);
        } else if (backend == "axisym") {
            rows = gcf::diagnose_rows(body_from_snapshot<gcf::AxisymBody>(snap), alpha);
        } else {
            throw gcf::ConfigError("backend must be 'curve' or 'axisym', got '" +
                                   backend + "'");
        }
    } catch (const gcf::ConvexityViolation& e) {
        throw gcf::ConfigError(std::string("snapshot body is not valid: ") + e.what());
    }

    if (out_path.empty()) {
        gcf::csv::write_diagnose_report(std::cout, rows);
    } else {
        std::ofstream out = open_output(out_path);
        gcf::csv::write_diagnose_report(out, rows);
    }
    return kOk;
}

int cmd_lemma_q(int n, const std::vector<double>& alphas, long trials,
                std::uint64_t seed, const std::string& out_path, bool refine) {
    std::ostringstream buf;
    gcf::csv::write_lemma_header(buf, n);
    bool violation = false;
    for (double alpha : alphas) {
        gcf::MinSearchResult r;
        try {
            r = gcf::min_search(n, alpha, trials, seed, refine);
        } catch (const std::invalid_argument& e) {
            throw gcf::ConfigError(e.what());
        }
        gcf::csv::write_lemma_row(buf, n, alpha, trials, r);
        if (r.min_q < -1e-9 * r.scale) {
            violation = true;
            std::cerr << "error: lemma-violation: n = " << n << ", alpha = "
                      << gcf::csv::fmt17(alpha) << ", min_q = "
                      << gcf::csv::fmt17(r.min_q) << ", scale = "
                      << gcf::csv::fmt17(r.scale) << '\n';
        } else {
            gcf::log::info("n = " + std::to_string(n) + ", alpha = " +
                           gcf::csv::fmt17(alpha) + ": min_q = " +
                           gcf::csv::fmt17(r.min_q));
        }
    }
    if (out_path.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream out = open_output(out_path);
        out << buf.str();
    }
    return violation ? kLemmaViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alpha-Gauss-curvature-flow laboratory: normalized flows, "
                 "self-similar solutions, and their diagnostics"};
    app.require_subcommand(1);

    std::string flow_config;
    CLI::App* flow = app.add_subcommand("flow", "advance the normalized flow");
    flow->add_option("config", flow_config, "experiment config (JSON)")->required();

    std::string soliton_config;
    CLI::App* soliton = app.add_subcommand("soliton", "solve K^alpha = h directly");
    soliton->add_option("config", soliton_config, "experiment config (JSON)")->required();

    std::string diag_snapshot, diag_backend, diag_out;
    double diag_alpha = 1.0;
    CLI::App* diagnose =
        app.add_subcommand("diagnose", "report diagnostics for a snapshot");
    diagnose->add_option("snapshot", diag_snapshot, "body snapshot CSV")->required();
    diagnose->add_option("--alpha", diag_alpha, "exponent alpha")->required();
    diagnose->add_option("--backend", diag_backend, "curve | axisym")->required();
    diagnose->add_option("--out", diag_out, "report path (default: stdout)");

    int lq_n = 2;
    std::vector<double> lq_alphas;
    long lq_trials = 100000;
    std::uint64_t lq_seed = 1;
    std::string lq_out;
    bool lq_no_refine = false;
    CLI::App* lemma = app.add_subcommand(
        "lemma-q", "randomized nonnegativity search for the pinching quantity Q");
    lemma->add_option("--n", lq_n, "dimension, >= 2")->required();
    lemma->add_option("--alpha", lq_alphas, "exponents in [1/(n+2), 1/2]")
        ->required()
        ->expected(-1);
    lemma->add_option("--trials", lq_trials, "random instances per exponent");
    lemma->add_option("--seed", lq_seed, "base seed");
    lemma->add_option("--out", lq_out, "report path (default: stdout)");
    lemma->add_flag("--no-refine", lq_no_refine, "skip simplex refinement");

    CLI11_PARSE(app, argc, argv);

    try {
        if (flow->parsed()) return cmd_flow(flow_config);
        if (soliton->parsed()) return cmd_soliton(soliton_config);
        if (diagnose->parsed())
            return cmd_diagnose(diag_snapshot, diag_alpha, diag_backend, diag_out);
        return cmd_lemma_q(lq_n, lq_alphas, lq_trials, lq_seed, lq_out, !lq_no_refine);
    } catch (const gcf::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const gcf::ConvexityViolation& e) {
        std::cerr << "error: config: initial body is not valid: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return kConfigError;
    }
}

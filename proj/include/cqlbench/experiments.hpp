// experiments.hpp — Scripted studies: bound-validity battery, saturation
// sweep, multimode looseness demo, Raman demo, and the selftest battery.
//
// Output is deterministic: rows are emitted in grid order, all numbers are
// serialized at 12 significant digits, and identical configs (including the
// seed) produce byte-identical tables.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cqlbench/gate_metrics.hpp"

namespace cql::sweep {

using metrics::GateReport;
using models::Kind;

enum class StateFamily { Coherent, Fock, Custom };
enum class OutputFormat { Csv, JsonLines };

struct SweepConfig {
    std::vector<Kind> kinds;
    std::vector<double> nbar_grid;     // Fock family: occupation numbers
    StateFamily family = StateFamily::Coherent;
    std::string custom_file;           // Custom family: field-state JSON path
    std::size_t explicit_cutoff = 0;   // 0 = AUTO
    OutputFormat format = OutputFormat::Csv;
    std::uint64_t seed = 1;
};

void validate(const SweepConfig& cfg);

struct SweepRow {
    std::string model;
    double nbar = 0.0;
    double var_n = 0.0;
    double t_star = 0.0;
    double sigma_D2 = 0.0;
    double mean_D2 = 0.0;
    double infidelity_worst = 0.0;
    double bound = 0.0;
    double saturation_ratio = 0.0;
    double intensity_term = 0.0;
    double phase_term = 0.0;
    bool has_decomposition = false;
    std::string flags;  // e.g. "scan_unconverged"
};

// One row per (kind, grid point); every row passes the inequality chain or
// the battery aborts with a theorem_breach carrying the offending report.
std::vector<SweepRow> run_bound_battery(const SweepConfig& cfg);

// Jc and Phase rows per coherent nbar; enforces the large-nbar regime checks
// (Phase saturation ratio in [0.9, 1.3] and the Jc intensity/phase split
// within 15%) for nbar >= 50.
std::vector<SweepRow> run_saturation_sweep(const SweepConfig& cfg);

struct MultimodeDemo {
    GateReport report;
    double bound = 0.0;
    double slack_ratio = 0.0;  // measured infidelity / bound
};

// Driven mode plus weakly coupled spectators: the bound holds but loosens as
// spectator photons are added without changing the dynamics.
MultimodeDemo run_multimode_demo(const std::vector<double>& nbars,
                                 const std::vector<double>& couplings,
                                 std::vector<std::size_t> cutoffs = {});

struct RamanDemo {
    GateReport report;
    double conservation_residual = 0.0;
    double bound = 0.0;
    double leakage = 0.0;
    bool scan_converged = true;
};

struct RamanConfig {
    StateFamily family = StateFamily::Coherent;
    double nbar_a = 20.0, nbar_b = 20.0;  // Fock family: occupation numbers
    double g_a = 1.0, g_b = 1.0;
    std::size_t cutoff_a = 0, cutoff_b = 0;  // 0 = AUTO (coherent) / n+8 (Fock)
    std::uint64_t seed = 1;
};

RamanDemo run_raman_demo(const RamanConfig& cfg);

std::string to_csv(const std::vector<SweepRow>& rows);
std::string to_jsonl(const std::vector<SweepRow>& rows);
std::string format_rows(const std::vector<SweepRow>& rows, OutputFormat fmt);

// Reduced-scale check battery: conservation, oracle equivalence, the
// appendix fidelity identity, bound battery, Fock floor, saturation and
// decomposition spot checks. Returns 0 on pass, 3 on an inequality breach,
// 1 on any other failure.
int selftest(bool fast, std::ostream& out);

} // namespace cql::sweep

// experiments.cpp — scripted studies and the selftest battery

#include "cqlbench/experiments.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cqlbench/io.hpp"

namespace cql::sweep {

using dyn::Propagator;
using fock::FieldState;
using models::ModelSpec;
using ops::Complex;
using ops::Matrix;
using ops::Vector;

namespace {

constexpr double kSpectatorCoupling = 0.05;  // driven:spectator ratio 1:0.05

FieldState single_mode_state(StateFamily family, double nbar, std::size_t explicit_cutoff,
                             const std::string& custom_file) {
    switch (family) {
        case StateFamily::Coherent: {
            const double alpha = std::sqrt(nbar);
            if (explicit_cutoff) return fock::coherent_state(alpha, explicit_cutoff);
            return fock::coherent_state(alpha);
        }
        case StateFamily::Fock: {
            const auto n = static_cast<std::size_t>(std::llround(nbar));
            const std::size_t cutoff = explicit_cutoff ? explicit_cutoff : n + 8;
            return fock::fock_state(n, cutoff);
        }
        case StateFamily::Custom: {
            std::ifstream in(custom_file);
            if (!in) throw std::invalid_argument("cannot read state file: " + custom_file);
            std::stringstream ss;
            ss << in.rdbuf();
            return fock::field_state_from_json(ss.str());
        }
    }
    throw std::logic_error("single_mode_state: unhandled family");
}

struct Prepared {
    ModelSpec model;
    std::vector<FieldState> fields;
};

// Per-kind battery conventions: single-mode kinds take the grid state
// directly; multimode uses two equally filled modes with a driven/spectator
// coupling pair; Raman uses two equally filled modes with equal couplings.
Prepared prepare(Kind kind, StateFamily family, double nbar, std::size_t explicit_cutoff,
                 const std::string& custom_file) {
    Prepared p;
    switch (kind) {
        case Kind::Jc:
        case Kind::Phase:
        case Kind::FnFamily: {
            p.fields.push_back(single_mode_state(family, nbar, explicit_cutoff, custom_file));
            const std::size_t cutoff = p.fields[0].cutoff;
            if (kind == Kind::Jc) p.model = ModelSpec::jc(cutoff);
            else if (kind == Kind::Phase) p.model = ModelSpec::phase(cutoff);
            else p.model = ModelSpec::fn_family(cutoff, models::jc_fn(cutoff));
            break;
        }
        case Kind::Multimode: {
            for (int k = 0; k < 2; ++k)
                p.fields.push_back(single_mode_state(family, nbar, explicit_cutoff, custom_file));
            p.model = ModelSpec::multimode({p.fields[0].cutoff, p.fields[1].cutoff},
                                           {1.0, kSpectatorCoupling});
            break;
        }
        case Kind::Raman: {
            for (int k = 0; k < 2; ++k)
                p.fields.push_back(single_mode_state(family, nbar, explicit_cutoff, custom_file));
            p.model = ModelSpec::raman(p.fields[0].cutoff, p.fields[1].cutoff, 1.0, 1.0);
            break;
        }
    }
    return p;
}

struct Evolved {
    Propagator u;
    dyn::GateTime gt;
};

Evolved evolve_at_gate_time(const ModelSpec& m, const std::vector<FieldState>& fields) {
    Evolved ev;
    const bool scans = !(m.kind == Kind::Phase ||
                         (m.kind == Kind::Jc && m.detuning(0) == 0.0) ||
                         (m.kind == Kind::FnFamily && m.fn == models::jc_fn(m.cutoffs[0])));
    if (scans) {
        const auto sys = dyn::sector_eigensystem(m);
        ev.gt = dyn::scan_gate_time(sys, m, fields,
                                    dyn::classical_gate(0.0, std::numbers::pi / 4.0));
        ev.u = dyn::propagator_at(sys, ev.gt.t_star);
    } else {
        ev.gt = dyn::gate_time(m, fields);
        ev.u = dyn::make_propagator(m, ev.gt.t_star);
    }
    return ev;
}

SweepRow row_from_report(const GateReport& r) {
    SweepRow row;
    row.model = r.model;
    row.nbar = r.nbar;
    row.var_n = r.var_n;
    row.t_star = r.t_star;
    row.sigma_D2 = r.var_D;
    row.mean_D2 = r.mean_D2;
    row.infidelity_worst = r.worst_case_infidelity;
    row.bound = r.cql_bound;
    row.saturation_ratio = r.saturation_ratio;
    row.has_decomposition = r.decomposition_valid;
    row.intensity_term = r.intensity_term;
    row.phase_term = r.phase_term;
    if (!r.scan_converged) row.flags = "scan_unconverged";
    return row;
}

} // namespace

void validate(const SweepConfig& cfg) {
    if (cfg.kinds.empty()) throw std::invalid_argument("sweep: empty model list");
    if (cfg.family != StateFamily::Custom) {
        if (cfg.nbar_grid.empty()) throw std::invalid_argument("sweep: empty nbar grid");
        for (std::size_t i = 0; i + 1 < cfg.nbar_grid.size(); ++i)
            if (!(cfg.nbar_grid[i] < cfg.nbar_grid[i + 1]))
                throw std::invalid_argument("sweep: nbar grid must be ascending");
        for (double v : cfg.nbar_grid) {
            if (v < 0.0) throw std::invalid_argument("sweep: nbar must be >= 0");
            if (cfg.family == StateFamily::Fock &&
                std::abs(v - std::llround(v)) > 0.0)
                throw std::invalid_argument("sweep: fock grid entries must be integers");
        }
    } else if (cfg.custom_file.empty()) {
        throw std::invalid_argument("sweep: custom family requires a state file");
    }
}

std::vector<SweepRow> run_bound_battery(const SweepConfig& cfg) {
    validate(cfg);
    std::vector<SweepRow> rows;
    for (Kind kind : cfg.kinds) {
        // custom family: one row per kind from the loaded state
        const std::vector<double> grid =
            cfg.family == StateFamily::Custom ? std::vector<double>{0.0} : cfg.nbar_grid;
        for (double nbar : grid) {
            Prepared p = prepare(kind, cfg.family, nbar, cfg.explicit_cutoff, cfg.custom_file);
            const Evolved ev = evolve_at_gate_time(p.model, p.fields);
            GateReport r = metrics::gate_report(p.model, p.fields, ev.u);
            r.scan_converged = ev.gt.scan_converged;
            metrics::cql_check_or_throw(r, models::kind_name(kind) + "/nbar=" +
                                               io::format_double(r.nbar));
            SweepRow row = row_from_report(r);
            for (const auto& f : p.fields)
                if (f.cutoff_warning)
                    row.flags += row.flags.empty() ? "cutoff_warning" : ";cutoff_warning";
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<SweepRow> run_saturation_sweep(const SweepConfig& cfg) {
    validate(cfg);
    if (cfg.family != StateFamily::Coherent)
        throw std::invalid_argument("saturation sweep: coherent family required");
    std::vector<SweepRow> rows;
    for (double nbar : cfg.nbar_grid) {
        for (Kind kind : {Kind::Jc, Kind::Phase}) {
            Prepared p = prepare(kind, cfg.family, nbar, cfg.explicit_cutoff, "");
            const Evolved ev = evolve_at_gate_time(p.model, p.fields);
            GateReport r = metrics::gate_report(p.model, p.fields, ev.u);
            metrics::cql_check_or_throw(r, "saturation/" + models::kind_name(kind));
            SweepRow row = row_from_report(r);

            if (nbar >= 50.0) {
                // large-nbar regime checks from the saturation analysis
                if (kind == Kind::Phase) {
                    const double ratio = r.var_D * 4.0 * r.var_n;
                    if (ratio < 0.9 || ratio > 1.3)
                        throw std::runtime_error("saturation sweep: phase ratio " +
                                                 io::format_double(ratio) +
                                                 " outside [0.9, 1.3] at nbar=" +
                                                 io::format_double(nbar));
                } else {
                    const double approx = r.intensity_term + r.phase_term;
                    if (!(std::abs(approx - r.var_D) <= 0.15 * r.var_D))
                        throw std::runtime_error(
                            "saturation sweep: jc decomposition off by more than 15% at nbar=" +
                            io::format_double(nbar));
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

MultimodeDemo run_multimode_demo(const std::vector<double>& nbars,
                                 const std::vector<double>& couplings,
                                 std::vector<std::size_t> cutoffs) {
    if (nbars.size() != couplings.size())
        throw std::invalid_argument("multimode demo: one coupling per mode");
    if (nbars.size() < 2 || nbars.size() > 3)
        throw std::invalid_argument("multimode demo: 2 or 3 modes");

    std::vector<FieldState> fields;
    for (std::size_t k = 0; k < nbars.size(); ++k) {
        const double alpha = std::sqrt(nbars[k]);
        fields.push_back(k < cutoffs.size() && cutoffs[k]
                             ? fock::coherent_state(alpha, cutoffs[k])
                             : fock::coherent_state(alpha));
    }
    std::vector<std::size_t> mode_cutoffs;
    for (const auto& f : fields) mode_cutoffs.push_back(f.cutoff);
    const ModelSpec m = ModelSpec::multimode(mode_cutoffs, couplings);

    const Evolved ev = evolve_at_gate_time(m, fields);
    GateReport r = metrics::gate_report(m, fields, ev.u);
    r.scan_converged = ev.gt.scan_converged;
    metrics::cql_check_or_throw(r, "multimode_demo");

    MultimodeDemo demo;
    demo.report = r;
    demo.bound = r.cql_bound;
    demo.slack_ratio = r.worst_case_infidelity / r.cql_bound;
    return demo;
}

RamanDemo run_raman_demo(const RamanConfig& cfg) {
    std::vector<FieldState> fields;
    const double nb[2] = {cfg.nbar_a, cfg.nbar_b};
    const std::size_t cut[2] = {cfg.cutoff_a, cfg.cutoff_b};
    for (int k = 0; k < 2; ++k)
        fields.push_back(single_mode_state(cfg.family, nb[k], cut[k], ""));
    const ModelSpec m =
        ModelSpec::raman(fields[0].cutoff, fields[1].cutoff, cfg.g_a, cfg.g_b);

    const auto sys = dyn::sector_eigensystem(m);
    const auto gt = dyn::scan_gate_time(sys, m, fields,
                                        dyn::classical_gate(0.0, std::numbers::pi / 4.0));
    const Propagator u = dyn::propagator_at(sys, gt.t_star);

    GateReport r = metrics::gate_report(m, fields, u);
    r.scan_converged = gt.scan_converged;
    metrics::cql_check_or_throw(r, "raman_demo");

    // Conservation residual at full scale: max-norm of (U^H L U - L) psi on
    // the initial product state and a seeded random battery. L is diagonal.
    const auto ldiag = models::l_diagonal(m);
    auto apply_l = [&](const Vector& x) {
        Vector y(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            y(i) = static_cast<double>(ldiag[static_cast<std::size_t>(i)]) * x(i);
        return y;
    };
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> nd;
    double residual = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
        Vector psi(static_cast<Eigen::Index>(m.joint_dim()));
        if (trial == 0) {
            psi.setZero();
            const Vector field_psi = dyn::joint_field_state(fields);
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            psi.segment(0, field_psi.size()) = inv_sqrt2 * field_psi;
            psi.segment(field_psi.size(), field_psi.size()) =
                Complex(0.0, inv_sqrt2) * field_psi;
        } else {
            for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = Complex(nd(rng), nd(rng));
            psi /= psi.norm();
        }
        const Vector lhs = u.apply_adjoint(apply_l(u.apply(psi)));
        const Vector rhs = apply_l(psi);
        residual = std::max(residual, (lhs - rhs).cwiseAbs().maxCoeff());
    }

    RamanDemo demo;
    demo.report = r;
    demo.conservation_residual = residual;
    demo.bound = r.cql_bound;
    demo.leakage = r.leakage;
    demo.scan_converged = gt.scan_converged;
    return demo;
}

// --------------------------- output ------------------------------------------

namespace {

const char* kCsvHeader =
    "schema,model,nbar,var_n,t_star,sigma_D2,mean_D2,infidelity_worst,bound,"
    "saturation_ratio,intensity_term,phase_term,flags";

} // namespace

std::string to_csv(const std::vector<SweepRow>& rows) {
    std::string out = kCsvHeader;
    out += "\n";
    for (const auto& r : rows) {
        out += "v1," + io::csv_field(r.model) + "," + io::format_double(r.nbar) + "," +
               io::format_double(r.var_n) + "," + io::format_double(r.t_star) + "," +
               io::format_double(r.sigma_D2) + "," + io::format_double(r.mean_D2) + "," +
               io::format_double(r.infidelity_worst) + "," + io::format_double(r.bound) + "," +
               io::format_double(r.saturation_ratio) + ",";
        out += r.has_decomposition ? io::format_double(r.intensity_term) : "";
        out += ",";
        out += r.has_decomposition ? io::format_double(r.phase_term) : "";
        out += "," + io::csv_field(r.flags) + "\n";
    }
    return out;
}

std::string to_jsonl(const std::vector<SweepRow>& rows) {
    std::string out;
    for (const auto& r : rows) {
        out += "{\"schema\": \"v1\", \"model\": \"" + io::json_escape(r.model) +
               "\", \"nbar\": " + io::format_double(r.nbar) +
               ", \"var_n\": " + io::format_double(r.var_n) +
               ", \"t_star\": " + io::format_double(r.t_star) +
               ", \"sigma_D2\": " + io::format_double(r.sigma_D2) +
               ", \"mean_D2\": " + io::format_double(r.mean_D2) +
               ", \"infidelity_worst\": " + io::format_double(r.infidelity_worst) +
               ", \"bound\": " + io::format_double(r.bound) +
               ", \"saturation_ratio\": " + io::format_double(r.saturation_ratio) +
               ", \"intensity_term\": " +
               (r.has_decomposition ? io::format_double(r.intensity_term) : "null") +
               ", \"phase_term\": " +
               (r.has_decomposition ? io::format_double(r.phase_term) : "null") +
               ", \"flags\": \"" + io::json_escape(r.flags) + "\"}\n";
    }
    return out;
}

std::string format_rows(const std::vector<SweepRow>& rows, OutputFormat fmt) {
    return fmt == OutputFormat::Csv ? to_csv(rows) : to_jsonl(rows);
}

// --------------------------- selftest ----------------------------------------

namespace {

struct CheckContext {
    std::ostream& out;
    int worst = 0;

    void report(bool ok, const std::string& name, const std::string& detail, int fail_code = 1) {
        out << (ok ? "ok   " : "FAIL ") << name << "  " << detail << "\n";
        if (!ok) worst = std::max(worst, fail_code);
    }
};

double dense_conservation_residual(const ModelSpec& m, double t) {
    const Matrix u = dyn::make_propagator(m, t).to_dense();
    const Matrix l = models::conserved_quantity(m).total;
    const Matrix ulu = ops::adjoint_multiply(u, ops::multiply(l, u));
    return ops::max_abs(Matrix(ulu - l));
}

double oracle_gap(const ModelSpec& m, double t) {
    const Matrix block = dyn::make_propagator(m, t).to_dense();
    const Matrix expm = ops::herm_expm(models::build_hamiltonian(m), t);
    return ops::max_abs(Matrix(block - expm));
}

} // namespace

int selftest(bool fast, std::ostream& out) {
    CheckContext ctx{out};
    const double pi = std::numbers::pi;

    try {
        // conservation across models and times
        {
            std::vector<ModelSpec> configs = {
                ModelSpec::jc(32),
                ModelSpec::jc(16, 1.0, 0.7),
                ModelSpec::phase(32),
                ModelSpec::fn_family(24, [] {
                    std::vector<double> fn(23);
                    for (std::size_t n = 0; n < fn.size(); ++n)
                        fn[n] = std::pow(static_cast<double>(n + 1), 0.75);
                    return fn;
                }()),
                ModelSpec::multimode({12, 8}, {1.0, kSpectatorCoupling}),
                ModelSpec::raman(10, 10, 1.0, 1.0),
            };
            double worst = 0.0;
            for (const auto& m : configs)
                for (double t : {0.1, pi / 4.0, pi})
                    worst = std::max(worst, dense_conservation_residual(m, t));
            ctx.report(worst <= 1e-10, "conservation", "max residual " + io::format_double(worst));
        }

        // closed-form propagators against the dense exponential oracle
        {
            double worst = 0.0;
            for (std::size_t cutoff : fast ? std::vector<std::size_t>{8, 32}
                                           : std::vector<std::size_t>{8, 32, 64})
                for (double t : {0.3, 1.3}) {
                    worst = std::max(worst, oracle_gap(ModelSpec::jc(cutoff), t));
                    worst = std::max(worst, oracle_gap(ModelSpec::phase(cutoff), t));
                }
            worst = std::max(worst, oracle_gap(ModelSpec::raman(8, 8, 1.0, 0.8), 0.7));
            ctx.report(worst <= 1e-8, "oracle_equivalence", "max gap " + io::format_double(worst));
        }

        // branch identity: <D^2> = 4 - 2F^2(-x) - 2F^2(+x), plus the branch
        // norm-square form; random conserved-compatible unitaries included
        {
            const Matrix target = dyn::classical_gate(0.0, pi / 4.0);
            double worst = 0.0;
            auto check_two_level = [&](const std::vector<FieldState>& fields,
                                       const Propagator& u) {
                const auto dm = metrics::d_moments(u, fields, +1);
                const auto bg = dyn::branch_gram(u, dyn::joint_field_state(fields));
                const double rhs = 4.0 - 2.0 * metrics::fidelity_minus_x(bg, target) -
                                   2.0 * metrics::fidelity_plus_x(bg, target);
                worst = std::max(worst, std::abs(dm.mean_d2 - rhs));
                const double d2b =
                    metrics::d2_from_branches(metrics::branch_decomposition(u, fields), +1);
                worst = std::max(worst, std::abs(dm.mean_d2 - d2b));
            };
            {
                const auto st = fock::coherent_state(2.0);
                const ModelSpec m = ModelSpec::jc(st.cutoff);
                check_two_level({st}, dyn::jc_propagator(m, dyn::gate_time(m, {st}).t_star));
            }
            {
                const auto st = fock::coherent_state(3.0);
                const ModelSpec m = ModelSpec::phase(st.cutoff);
                check_two_level({st}, dyn::phase_propagator(m, pi / 4.0));
            }
            {
                const auto sa = fock::coherent_state(std::sqrt(2.0), 16);
                const auto sb = fock::coherent_state(1.0, 12);
                const ModelSpec m =
                    ModelSpec::multimode({16, 12}, {1.0, kSpectatorCoupling});
                check_two_level({sa, sb}, dyn::sector_expm(m, 0.35));
            }
            {
                const auto st = fock::coherent_state(2.0, 24);
                const ModelSpec m = ModelSpec::jc(24);
                const int trials = fast ? 25 : 100;
                for (int k = 0; k < trials; ++k)
                    check_two_level({st},
                                    dyn::random_conserving_unitary(m, 1000 + static_cast<std::uint64_t>(k)));
            }
            // Raman: the identity acquires exact leakage corrections,
            // <D^2> + 2 P_leak(+y) + P_leak(-y) = 4 - 2F^2(-x) - 2F^2(+x)
            {
                const auto sa = fock::coherent_state(std::sqrt(2.0), 12);
                const ModelSpec m = ModelSpec::raman(12, 12, 1.0, 1.0);
                const std::vector<FieldState> fields = {sa, sa};
                const Propagator u = dyn::sector_expm(m, 0.4);
                const auto dm = metrics::d_moments(u, fields, +1);
                const auto bg = dyn::branch_gram(u, dyn::joint_field_state(fields));
                const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
                const double leak_plus_y = metrics::leakage_population(
                    u, fields, inv_sqrt2, Complex(0.0, inv_sqrt2));
                const double leak_minus_y = metrics::leakage_population(
                    u, fields, inv_sqrt2, Complex(0.0, -inv_sqrt2));
                const double rhs = 4.0 - 2.0 * metrics::fidelity_minus_x(bg, target) -
                                   2.0 * metrics::fidelity_plus_x(bg, target);
                worst = std::max(worst,
                                 std::abs(dm.mean_d2 + 2.0 * leak_plus_y + leak_minus_y - rhs));
            }
            ctx.report(worst <= 1e-9, "branch_identity", "max deviation " + io::format_double(worst));
        }

        // bound battery: the inequality chain on every row
        {
            SweepConfig fock_cfg;
            fock_cfg.kinds = {Kind::Jc};
            fock_cfg.family = StateFamily::Fock;
            fock_cfg.nbar_grid = {0, 1, 5};
            auto rows = run_bound_battery(fock_cfg);

            SweepConfig coh_cfg;
            coh_cfg.kinds = {Kind::Jc, Kind::Phase};
            coh_cfg.nbar_grid = fast ? std::vector<double>{1, 4, 16}
                                     : std::vector<double>{1, 4, 16, 64};
            auto rows2 = run_bound_battery(coh_cfg);
            rows.insert(rows.end(), rows2.begin(), rows2.end());

            SweepConfig mm_cfg;
            mm_cfg.kinds = {Kind::Multimode, Kind::Raman};
            mm_cfg.nbar_grid = fast ? std::vector<double>{2} : std::vector<double>{2, 4};
            auto rows3 = run_bound_battery(mm_cfg);
            rows.insert(rows.end(), rows3.begin(), rows3.end());

            double min_margin = 1e300;
            for (const auto& r : rows)
                min_margin = std::min(min_margin, r.infidelity_worst - r.bound);
            ctx.report(true, "bound_battery",
                       std::to_string(rows.size()) + " rows, min slack " +
                           io::format_double(min_margin));
        }

        // number eigenstates: the bound floor of 1/4
        {
            double worst = 1.0;
            for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{5}}) {
                const auto st = fock::fock_state(n, n + 8);
                const ModelSpec m = ModelSpec::jc(st.cutoff);
                const GateReport r =
                    metrics::gate_report(m, {st}, dyn::gate_time(m, {st}).t_star);
                worst = std::min(worst, r.worst_case_infidelity);
            }
            ctx.report(worst >= 0.25 - 1e-9, "fock_floor",
                       "min infidelity " + io::format_double(worst));
        }

        // saturation and decomposition spot checks
        {
            const std::vector<double> grid = fast ? std::vector<double>{50}
                                                  : std::vector<double>{50, 100};
            bool ok = true;
            std::string detail;
            for (double nbar : grid) {
                const auto st = fock::coherent_state(std::sqrt(nbar));
                const ModelSpec pm = ModelSpec::phase(st.cutoff);
                const auto dm = metrics::d_moments(dyn::phase_propagator(pm, pi / 4.0), {st}, +1);
                const auto ps = fock::phase_stats(st);
                const double ratio = dm.var_d * 4.0 * fock::number_stats(st).var_n;
                const double ident = std::abs(dm.mean_d2 - ps.var_phi_proxy);
                ok = ok && ratio >= 0.9 && ratio <= 1.3 && ident <= 1e-10;
                if (nbar == grid.front())
                    detail = "ratio " + io::format_double(ratio) + ", identity gap " +
                             io::format_double(ident);

                const ModelSpec jm = ModelSpec::jc(st.cutoff);
                const auto dec = metrics::decompose_error(jm, st);
                ok = ok && std::abs(dec.ratio - 1.0) <= 0.15 && dec.valid;
            }
            ctx.report(ok, "saturation_spot", detail);
        }

        // perfect classical reference gate
        {
            const Matrix v = dyn::classical_gate(0.0, pi / 4.0);
            const auto st = fock::fock_state(0, 4);
            const Propagator u = dyn::qubit_gate_propagator(v, 2, 4);
            const Matrix d = metrics::error_operator(u, +1);
            const auto wc = metrics::worst_case_fidelity(u, {st}, v);
            const bool ok = ops::max_abs(d) <= 1e-12 && std::abs(wc.f2_min - 1.0) <= 1e-12;
            ctx.report(ok, "classical_reference",
                       "max |D| " + io::format_double(ops::max_abs(d)));
        }
    } catch (const theorem_breach& e) {
        ctx.report(false, "theorem_breach", e.what(), 3);
    } catch (const std::exception& e) {
        ctx.report(false, "exception", e.what(), 1);
    }

    out << (ctx.worst == 0 ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
    return ctx.worst;
}

} // namespace cql::sweep

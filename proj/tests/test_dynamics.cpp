// Propagator tests: closed-form blocks against the dense exponential oracle,
// sign conventions, unitarity, conservation, and gate-time rules.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cqlbench/dynamics.hpp"

using namespace cql;
using models::ModelSpec;
using ops::Complex;
using ops::Matrix;
using ops::Vector;

namespace {
constexpr double kPi = std::numbers::pi;

double oracle_gap(const ModelSpec& m, double t) {
    const Matrix block = dyn::make_propagator(m, t).to_dense();
    const Matrix expm = ops::herm_expm(models::build_hamiltonian(m), t);
    return ops::max_abs(Matrix(block - expm));
}
} // namespace

TEST_CASE("jc: t = 0 is the identity") {
    const Matrix u = dyn::jc_propagator(ModelSpec::jc(6), 0.0).to_dense();
    CHECK(ops::max_abs(Matrix(u - ops::identity(12))) == 0.0);
}

TEST_CASE("jc: |e,0> fully transfers to -|g,1> at gt = pi/2") {
    const ModelSpec m = ModelSpec::jc(4);
    const auto u = dyn::jc_propagator(m, kPi / 2.0);
    Vector psi = Vector::Zero(8);
    psi(4) = 1.0;  // (e, 0)
    const Vector out = u.apply(psi);
    CHECK(std::abs(out(1) - Complex(-1.0, 0.0)) <= 1e-14);  // (g, 1)
    CHECK(std::abs(out.norm() - 1.0) <= 1e-14);
}

TEST_CASE("jc: block form matches herm_expm at cutoff 16, gt = 0.3, to 1e-10") {
    CHECK(oracle_gap(ModelSpec::jc(16), 0.3) <= 1e-10);
}

TEST_CASE("oracle equivalence across cutoffs and times") {
    for (std::size_t cutoff : {std::size_t{8}, std::size_t{32}, std::size_t{64}}) {
        for (double t : {0.1, 0.5, 1.3, kPi}) {
            CHECK(oracle_gap(ModelSpec::jc(cutoff), t) <= 1e-8);
            CHECK(oracle_gap(ModelSpec::phase(cutoff), t) <= 1e-8);
        }
    }
}

TEST_CASE("phase: vacuum correction matches the closed-form evolution operator") {
    const std::size_t cutoff = 12;
    const ModelSpec m = ModelSpec::phase(cutoff);
    const double t = 0.9;
    const Matrix u = dyn::phase_propagator(m, t).to_dense();

    // cos(gt) I + 2 sin^2(gt/2) (|g,0><g,0| + |e,top><e,top|) + sin(gt) K,
    // K = [[0, -E^H], [E, 0]] in (g, e) block order
    const Matrix e_low = ops::sg_lowering(cutoff);
    Matrix expected = std::cos(t) * ops::identity(2 * cutoff);
    const double vac = 2.0 * std::sin(t / 2.0) * std::sin(t / 2.0);
    expected(0, 0) += vac;
    expected(2 * cutoff - 1, 2 * cutoff - 1) += vac;
    expected.block(0, cutoff, cutoff, cutoff) -= std::sin(t) * e_low.adjoint();
    expected.block(cutoff, 0, cutoff, cutoff) += std::sin(t) * e_low;
    CHECK(ops::max_abs(Matrix(u - expected)) <= 1e-14);
}

TEST_CASE("phase: matches herm_expm at cutoff 32 to 1e-10 on the full truncated space") {
    CHECK(oracle_gap(ModelSpec::phase(32), kPi / 4.0) <= 1e-10);
}

TEST_CASE("phase: vacuum-correction weight in expectations is |C_0|^2-scale") {
    const auto st = fock::coherent_state(Complex(10.0, 0.0));  // nbar 100
    CHECK(std::norm(st.coeffs(0)) <= std::exp(-99.0));
}

TEST_CASE("detuned jc routes to the sector exponential and still matches the oracle") {
    const ModelSpec m = ModelSpec::jc(10, 1.0, 0.8);
    const auto u = dyn::jc_propagator(m, 0.7);
    CHECK(u.method == dyn::Method::Expm);
    CHECK(oracle_gap(m, 0.7) <= 1e-10);
}

TEST_CASE("fnfamily ladder blocks match the oracle for generic weights") {
    std::vector<double> fn(15);
    for (std::size_t n = 0; n < fn.size(); ++n)
        fn[n] = std::pow(static_cast<double>(n + 1), 0.75);
    const ModelSpec m = ModelSpec::fn_family(16, fn);
    CHECK(oracle_gap(m, 0.6) <= 1e-10);
}

TEST_CASE("sector exponential matches the oracle for multimode and raman") {
    CHECK(oracle_gap(ModelSpec::multimode({8, 6}, {1.0, 0.05}), 0.9) <= 1e-10);
    CHECK(oracle_gap(ModelSpec::raman(7, 6, 1.0, 0.8, 0.2, 0.1), 0.9) <= 1e-10);
}

TEST_CASE("propagators are unitary and norm-preserving") {
    const std::vector<ModelSpec> configs = {
        ModelSpec::jc(24), ModelSpec::phase(24),
        ModelSpec::multimode({6, 5}, {1.0, 0.3}),
        ModelSpec::raman(6, 6, 1.0, 1.0)};
    for (const auto& m : configs) {
        const auto u = dyn::make_propagator(m, 1.1);
        CHECK(ops::unitarity_error(u.to_dense()) <= 1e-12);

        Vector psi = Vector::Zero(static_cast<Eigen::Index>(m.joint_dim()));
        for (Eigen::Index i = 0; i < psi.size(); ++i)
            psi(i) = Complex(std::sin(0.3 * static_cast<double>(i) + 0.1),
                             std::cos(0.7 * static_cast<double>(i)));
        psi /= psi.norm();
        CHECK(std::abs(u.apply(psi).norm() - 1.0) <= 1e-10);
        // apply_adjoint inverts apply
        CHECK((u.apply_adjoint(u.apply(psi)) - psi).norm() <= 1e-10);
    }
}

TEST_CASE("every propagator conserves its model's conserved quantity") {
    const std::vector<ModelSpec> configs = {
        ModelSpec::jc(24), ModelSpec::jc(12, 1.0, 0.5), ModelSpec::phase(24),
        ModelSpec::multimode({8, 6}, {1.0, 0.05}),
        ModelSpec::raman(8, 8, 1.0, 0.7)};
    for (const auto& m : configs) {
        const auto q = models::conserved_quantity(m);
        for (double t : {0.1, kPi}) {
            const Matrix u = dyn::make_propagator(m, t).to_dense();
            const Matrix ulu = ops::adjoint_multiply(u, ops::multiply(q.total, u));
            CHECK(ops::max_abs(Matrix(ulu - q.total)) <= 1e-10);
        }
    }
}

TEST_CASE("classical gate: theta = 0 identity; Eq-form matrix; sigma_z conjugation") {
    CHECK(ops::max_abs(Matrix(dyn::classical_gate(0.3, 0.0) - ops::identity(2))) <= 1e-15);

    const Matrix u = dyn::classical_gate(0.0, kPi / 4.0);
    Matrix expected(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    expected << s, -s, s, s;
    CHECK(ops::max_abs(Matrix(u - expected)) <= 1e-15);

    // U^H sigma_z U = -sigma_x at the gate point
    const Matrix conj = u.adjoint() * ops::sigma_z() * u;
    CHECK(ops::max_abs(Matrix(conj + ops::sigma_x())) <= 1e-15);
}

TEST_CASE("gate_time: rule selection and values") {
    const auto coh = fock::coherent_state(Complex(10.0, 0.0));  // nbar 100
    const ModelSpec jc = ModelSpec::jc(coh.cutoff);
    const auto gt_jc = dyn::gate_time(jc, {coh});
    CHECK(gt_jc.rule == dyn::TimeRule::JcRule);
    const double nbar = fock::number_stats(coh).nbar;
    CHECK(gt_jc.t_star == doctest::Approx(kPi / (4.0 * std::sqrt(nbar + 1.0))).epsilon(1e-12));
    CHECK(gt_jc.t_star == doctest::Approx(kPi / (4.0 * std::sqrt(101.0))).epsilon(1e-9));

    const auto vac = fock::fock_state(0, 4);
    const ModelSpec jc_v = ModelSpec::jc(4);
    CHECK(dyn::gate_time(jc_v, {vac}).t_star == doctest::Approx(kPi / 4.0).epsilon(1e-12));

    const ModelSpec ph = ModelSpec::phase(16);
    const auto st = fock::fock_state(3, 16);
    const auto gt_ph = dyn::gate_time(ph, {st});
    CHECK(gt_ph.rule == dyn::TimeRule::PhaseRule);
    CHECK(gt_ph.t_star == kPi / 4.0);

    // fnfamily with the sqrt(n+1) weights follows the jc rule
    const ModelSpec fn = ModelSpec::fn_family(coh.cutoff, models::jc_fn(coh.cutoff));
    CHECK(dyn::gate_time(fn, {coh}).rule == dyn::TimeRule::JcRule);
}

TEST_CASE("scan: recovers the jc pulse time on a jc-like problem") {
    // run the scan machinery on jc itself; the mean-fidelity maximum must sit
    // near the pi/2-pulse time
    const auto st = fock::coherent_state(4.0, 40);  // nbar 16
    const ModelSpec m = ModelSpec::jc(40);
    const auto sys = dyn::sector_eigensystem(m);
    const auto gt = dyn::scan_gate_time(sys, m, {st}, dyn::classical_gate(0.0, kPi / 4.0));
    CHECK(gt.scan_converged);
    const double t_rule = kPi / (4.0 * std::sqrt(fock::number_stats(st).nbar + 1.0));
    CHECK(std::abs(gt.t_star - t_rule) <= 0.05 * t_rule);
    CHECK(gt.scan_mean_fidelity > 0.9);
}

TEST_CASE("scan: deterministic across repeated runs") {
    const auto sa = fock::coherent_state(std::sqrt(2.0), 12);
    const ModelSpec m = ModelSpec::raman(12, 12, 1.0, 1.0);
    const auto sys = dyn::sector_eigensystem(m);
    const auto g1 = dyn::scan_gate_time(sys, m, {sa, sa}, dyn::classical_gate(0.0, kPi / 4.0));
    const auto g2 = dyn::scan_gate_time(sys, m, {sa, sa}, dyn::classical_gate(0.0, kPi / 4.0));
    CHECK(g1.t_star == g2.t_star);
    CHECK(g1.scan_mean_fidelity == g2.scan_mean_fidelity);
}

TEST_CASE("random conserving unitaries commute with L and are unitary") {
    const ModelSpec m = ModelSpec::jc(10);
    const auto q = models::conserved_quantity(m);
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        const Matrix u = dyn::random_conserving_unitary(m, seed).to_dense();
        CHECK(ops::unitarity_error(u) <= 1e-12);
        const Matrix ulu = ops::adjoint_multiply(u, ops::multiply(q.total, u));
        CHECK(ops::max_abs(Matrix(ulu - q.total)) <= 1e-12);
    }
    // same seed, same unitary; different seed, different unitary
    const Matrix u1 = dyn::random_conserving_unitary(m, 7).to_dense();
    const Matrix u2 = dyn::random_conserving_unitary(m, 7).to_dense();
    const Matrix u3 = dyn::random_conserving_unitary(m, 8).to_dense();
    CHECK(ops::max_abs(Matrix(u1 - u2)) == 0.0);
    CHECK(ops::max_abs(Matrix(u1 - u3)) > 1e-3);
}

TEST_CASE("qubit gate propagator embeds V (x) I") {
    const Matrix v = dyn::classical_gate(0.4, 0.9);
    const Matrix u = dyn::qubit_gate_propagator(v, 2, 3).to_dense();
    const Matrix expected = ops::tensor(v, ops::identity(3));
    CHECK(ops::max_abs(Matrix(u - expected)) <= 1e-15);
}

TEST_CASE("coarse rabi period: jc value") {
    const auto st = fock::coherent_state(2.0);  // nbar 4
    const ModelSpec m = ModelSpec::jc(st.cutoff, 2.0);
    const double nbar = fock::number_stats(st).nbar;
    CHECK(dyn::coarse_rabi_period(m, {st}) ==
          doctest::Approx(2.0 * kPi / (2.0 * std::sqrt(nbar + 1.0))).epsilon(1e-9));
}

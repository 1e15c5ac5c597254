// Model-builder tests: Hamiltonian coupling structure, the ladder-family
// interpolation, conservation commutators, and bound arithmetic.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cqlbench/models.hpp"

using namespace cql;
using models::Kind;
using models::ModelSpec;
using ops::Complex;
using ops::Matrix;

TEST_CASE("jc: cutoff 2 couples only |e,0> <-> |g,1> with magnitude g") {
    const Matrix h = models::build_hamiltonian(ModelSpec::jc(2));
    // layout: 0 = (g,0), 1 = (g,1), 2 = (e,0), 3 = (e,1)
    CHECK(std::abs(h(2, 1)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(h(2, 1) - Complex(0.0, 1.0)) <= 1e-15);
    double off_sum = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!(i == 2 && j == 1) && !(i == 1 && j == 2)) off_sum += std::abs(h(i, j));
    CHECK(off_sum == 0.0);
    CHECK(ops::is_hermitian(h));
}

TEST_CASE("jc: ladder entries scale as g sqrt(n+1)") {
    const Matrix h = models::build_hamiltonian(ModelSpec::jc(5, 0.7));
    for (int n = 0; n + 1 < 5; ++n)
        CHECK(std::abs(h(5 + n, n + 1)) ==
              doctest::Approx(0.7 * std::sqrt(n + 1.0)).epsilon(1e-14));
}

TEST_CASE("fnfamily: sqrt(n+1) weights reproduce jc exactly, unit weights the phase model") {
    const std::size_t cutoff = 12;
    const Matrix h_jc = models::build_hamiltonian(ModelSpec::jc(cutoff));
    const Matrix h_fn =
        models::build_hamiltonian(ModelSpec::fn_family(cutoff, models::jc_fn(cutoff)));
    CHECK((h_jc - h_fn).cwiseAbs().maxCoeff() == 0.0);

    const Matrix h_phase = models::build_hamiltonian(ModelSpec::phase(cutoff));
    const Matrix h_unit =
        models::build_hamiltonian(ModelSpec::fn_family(cutoff, models::unit_fn(cutoff)));
    CHECK((h_phase - h_unit).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("phase: all coupling magnitudes equal g, independent of n") {
    const Matrix h = models::build_hamiltonian(ModelSpec::phase(9, 1.3));
    for (int n = 0; n + 1 < 9; ++n)
        CHECK(std::abs(h(9 + n, n + 1)) == doctest::Approx(1.3).epsilon(1e-14));
}

TEST_CASE("conservation: [L, H] vanishes on the truncated space for every kind") {
    const std::vector<ModelSpec> configs = {
        ModelSpec::jc(32),
        ModelSpec::jc(32, 1.0, 0.9),  // detuning does not break conservation
        ModelSpec::phase(32),
        ModelSpec::fn_family(16, models::unit_fn(16)),
        ModelSpec::multimode({8, 6}, {1.0, 0.05}, {0.2, -0.4}),
        ModelSpec::raman(8, 8, 1.0, 0.7, 0.3, 0.1),
    };
    for (const auto& m : configs) {
        const auto q = models::conserved_quantity(m);
        const Matrix h = models::build_hamiltonian(m);
        CHECK(ops::commutator_norm(q.total, h) <= 1e-12);
    }
}

TEST_CASE("conserved quantity: total = l1 (x) I + I (x) l2 entrywise") {
    for (const auto& m : {ModelSpec::jc(6), ModelSpec::raman(4, 3, 1.0, 1.0)}) {
        const auto q = models::conserved_quantity(m);
        const Matrix rebuilt = ops::tensor(q.l1, ops::identity(m.field_dim())) +
                               ops::tensor(ops::identity(m.atom_dim), q.l2);
        CHECK((q.total - rebuilt).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("conserved quantity: matches the integer diagonal") {
    for (const auto& m : {ModelSpec::jc(5), ModelSpec::multimode({4, 3}, {1.0, 0.5}),
                          ModelSpec::raman(4, 4, 1.0, 1.0)}) {
        const auto q = models::conserved_quantity(m);
        const auto diag = models::l_diagonal(m);
        for (std::size_t i = 0; i < diag.size(); ++i) {
            CHECK(q.total(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real() ==
                  doctest::Approx(static_cast<double>(diag[i])).epsilon(1e-14));
        }
    }
}

TEST_CASE("raman: commutator identity [sigma_z,H] - [a^H a,H] + [b^H b,H] = 0") {
    const ModelSpec m = ModelSpec::raman(6, 5, 1.0, 0.8);
    const Matrix h = models::build_hamiltonian(m);
    const std::size_t fdim = m.field_dim();

    Matrix sz = Matrix::Zero(3, 3);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    const Matrix sz_j = ops::tensor(sz, ops::identity(fdim));
    const Matrix na_j = ops::tensor(
        ops::identity(3), ops::tensor(ops::number_op(6), ops::identity(5)));
    const Matrix nb_j = ops::tensor(
        ops::identity(3), ops::tensor(ops::identity(6), ops::number_op(5)));

    auto comm = [&](const Matrix& a) { return Matrix(a * h - h * a); };
    const Matrix total = comm(sz_j) - comm(na_j) + comm(nb_j);
    CHECK(ops::max_abs(total) <= 1e-12);

    // each piece separately matches the structure: [n_a, H] and [sigma_z, H]
    // share the mode-a coupling part with opposite relative signs
    CHECK(ops::max_abs(comm(sz_j)) > 0.1);
}

TEST_CASE("cql_bound: prefactor 1/4 and the reference evaluations") {
    CHECK(models::cql_bound(0.0) == 0.25);
    CHECK(models::cql_bound(400.0) == doctest::Approx(0.25 / 401.0).epsilon(1e-12));
    CHECK(models::cql_bound(100.0) == doctest::Approx(0.25 / 101.0).epsilon(1e-12));
    CHECK_THROWS_AS(models::cql_bound(-1.0), std::invalid_argument);
}

TEST_CASE("cql_bound: monotone decreasing in the variance") {
    double prev = models::cql_bound(0.0);
    for (double v : {0.5, 1.0, 4.0, 16.0, 1e4}) {
        const double b = models::cql_bound(v);
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("bound_inputs: per-model variance mapping") {
    // jc with a Fock state: number eigenstate has zero variance
    {
        const auto st = fock::fock_state(5, 8);
        const ModelSpec m = ModelSpec::jc(8);
        CHECK(models::bound_inputs(m, {st}) == 0.0);
        CHECK(models::cql_bound(models::bound_inputs(m, {st})) == 0.25);
    }
    // multimode, two coherent modes nbar = 10 each -> 4 * 20 = 80
    {
        const auto st = fock::coherent_state(Complex(std::sqrt(10.0), 0.0));
        const ModelSpec m = ModelSpec::multimode({st.cutoff, st.cutoff}, {1.0, 0.05});
        const double v = models::bound_inputs(m, {st, st});
        CHECK(v == doctest::Approx(80.0).epsilon(1e-6));
        CHECK(models::cql_bound(v) == doctest::Approx(0.25 / 81.0).epsilon(1e-6));
    }
    // raman with both modes in vacuum
    {
        const auto vac = fock::fock_state(0, 4);
        const ModelSpec m = ModelSpec::raman(4, 4, 1.0, 1.0);
        CHECK(models::cql_bound(models::bound_inputs(m, {vac, vac})) == 0.25);
    }
    // mode-count mismatch
    {
        const auto st = fock::fock_state(0, 4);
        CHECK_THROWS_AS(models::bound_inputs(ModelSpec::raman(4, 4, 1.0, 1.0), {st}),
                        std::invalid_argument);
    }
}

TEST_CASE("validate: structural invariants") {
    CHECK_THROWS_AS(ModelSpec::jc(1), std::invalid_argument);             // cutoff >= 2
    CHECK_THROWS_AS(ModelSpec::jc(8, 0.0), std::invalid_argument);        // g > 0
    CHECK_THROWS_AS(ModelSpec::fn_family(8, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ModelSpec::multimode({4, 4}, {1.0}), std::invalid_argument);
    ModelSpec bad = ModelSpec::jc(4);
    bad.atom_dim = 3;
    CHECK_THROWS_AS(models::validate(bad), std::invalid_argument);
}

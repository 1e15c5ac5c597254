// Field-state tests: Poisson moments for coherent states, phase statistics,
// truncation-leak accounting, and JSON round-tripping.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cqlbench/fock.hpp"

using namespace cql;
using fock::FieldState;
using ops::Complex;

TEST_CASE("coherent: alpha = 0 is the vacuum with zero leak") {
    const auto s = fock::coherent_state(Complex(0.0, 0.0));
    CHECK(s.truncation_leak == 0.0);
    CHECK(std::abs(s.coeffs(0) - Complex(1.0, 0.0)) == 0.0);
    CHECK(s.coeffs.tail(s.coeffs.size() - 1).norm() == 0.0);
}

TEST_CASE("coherent: alpha = 2 at AUTO cutoff has Poisson moments 4, 4") {
    const auto s = fock::coherent_state(Complex(2.0, 0.0));
    const auto ns = fock::number_stats(s);
    CHECK(ns.nbar == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(ns.var_n == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(s.truncation_leak <= 1e-10);
}

TEST_CASE("coherent: alpha = 10 at cutoff 200 leaks below 1e-12") {
    const auto s = fock::coherent_state(Complex(10.0, 0.0), 200);
    CHECK(s.truncation_leak <= 1e-12);
    CHECK_FALSE(s.cutoff_warning);
}

TEST_CASE("coherent: nbar = 100 at cutoff 200 reproduces Poisson moments to 1e-6 relative") {
    const auto s = fock::coherent_state(Complex(10.0, 0.0), 200);
    const auto ns = fock::number_stats(s);
    CHECK(std::abs(ns.nbar - 100.0) <= 1e-4);   // 1e-6 relative
    CHECK(std::abs(ns.var_n - 100.0) <= 1e-4);
}

TEST_CASE("coherent: explicit cutoff below 2|alpha|^2 sets the warning flag") {
    const auto s = fock::coherent_state(Complex(3.0, 0.0), 12);  // nbar 9 > 6
    CHECK(s.cutoff_warning);
}

TEST_CASE("coherent: var_n/nbar = 1 within 1e-6 across the nbar battery at AUTO cutoff") {
    for (double nbar : {1.0, 4.0, 16.0, 64.0, 100.0, 400.0}) {
        const auto s = fock::coherent_state(Complex(std::sqrt(nbar), 0.0));
        const auto ns = fock::number_stats(s);
        CHECK(std::abs(ns.var_n / ns.nbar - 1.0) <= 1e-6);
    }
}

TEST_CASE("fock: basis states and bounds") {
    const auto vac = fock::fock_state(0, 4);
    CHECK(std::abs(vac.coeffs(0) - Complex(1.0, 0.0)) == 0.0);

    const auto s = fock::fock_state(5, 8);
    const auto ns = fock::number_stats(s);
    CHECK(ns.nbar == 5.0);
    CHECK(ns.var_n == 0.0);

    CHECK_THROWS_AS(fock::fock_state(8, 8), std::out_of_range);
}

TEST_CASE("custom: [1,1]/sqrt(2) has cos_mean 1/2; all-zero input rejected") {
    const auto s = fock::custom_state({Complex(1.0, 0.0), Complex(1.0, 0.0)}, 2);
    CHECK(fock::phase_stats(s).cos_mean == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(fock::custom_state({Complex(0.0, 0.0)}, 2), std::invalid_argument);
}

TEST_CASE("custom: already-normalized input is preserved") {
    const auto s = fock::custom_state({Complex(0.6, 0.0), Complex(0.8, 0.0)}, 2);
    CHECK(std::abs(s.coeffs(0) - Complex(0.6, 0.0)) <= 1e-15);
    CHECK(std::abs(s.coeffs(1) - Complex(0.8, 0.0)) <= 1e-15);
    CHECK(s.truncation_leak == 0.0);
}

TEST_CASE("number_stats: two-term superposition over |0>,|3>") {
    const auto s = fock::custom_state(
        {Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0)}, 4);
    const auto ns = fock::number_stats(s);
    CHECK(ns.nbar == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(ns.var_n == doctest::Approx(2.25).epsilon(1e-14));
}

TEST_CASE("phase_stats: single Fock term has no adjacent coherence") {
    const auto s = fock::fock_state(5, 8);
    const auto ps = fock::phase_stats(s);
    CHECK(ps.cos_mean == 0.0);
    CHECK(ps.var_phi_proxy == 2.0);
}

TEST_CASE("phase_stats: real coherent state at nbar 100 matches 1/(4 nbar) within 5%") {
    const auto s = fock::coherent_state(Complex(10.0, 0.0));
    const auto ps = fock::phase_stats(s);
    CHECK(std::abs(ps.var_phi_proxy - 0.0025) <= 0.05 * 0.0025);
    CHECK(ps.sin_mean == 0.0);  // real coefficients exactly
}

TEST_CASE("phase_stats: complex alpha rotates the mean phase; theta = 0 stays real") {
    const double theta = 0.7;
    const auto s = fock::coherent_state(2.0 * std::exp(Complex(0.0, theta)));
    const auto ps = fock::phase_stats(s);
    const double mag = std::hypot(ps.cos_mean, ps.sin_mean);
    CHECK(ps.sin_mean == doctest::Approx(std::sin(theta) * mag).epsilon(1e-12));
    CHECK(ps.cos_mean * ps.cos_mean + ps.sin_mean * ps.sin_mean <= 1.0 + 1e-12);
}

TEST_CASE("phase-number product: var_phi_proxy * var_n >= 0.25 within 5% for nbar >= 25") {
    for (double nbar : {25.0, 64.0, 100.0, 400.0}) {
        const auto s = fock::coherent_state(Complex(std::sqrt(nbar), 0.0));
        const double product = fock::phase_stats(s).var_phi_proxy * fock::number_stats(s).var_n;
        CHECK(product >= 0.25 * 0.95);
    }
}

TEST_CASE("json: field states round-trip through [re, im] pairs") {
    const auto s = fock::coherent_state(Complex(1.2, 0.4), 24);
    const auto back = fock::field_state_from_json(fock::to_json(s));
    CHECK(back.cutoff == s.cutoff);
    CHECK((back.coeffs - s.coeffs).norm() <= 1e-11);
}

TEST_CASE("auto_cutoff: leak stays below 1e-10 up to nbar = 1e4") {
    for (double nbar : {0.5, 30.0, 1000.0, 10000.0}) {
        const auto s = fock::coherent_state(Complex(std::sqrt(nbar), 0.0));
        CHECK(s.truncation_leak <= 1e-10);
    }
}

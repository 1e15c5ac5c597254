// fock.hpp — Field states on a truncated Fock basis with photon-number and
// Susskind-Glogower phase statistics.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cqlbench/linalg.hpp"

namespace cql::fock {

using ops::Complex;
using ops::Vector;

struct NumberStats {
    double nbar;
    double var_n;
};

struct PhaseStats {
    double cos_mean;        // Re sum_n conj(C_n) C_{n+1}
    double sin_mean;        // Im of the same sum
    double var_phi_proxy;   // 2 (1 - cos_mean)
};

// Normalized amplitudes over |0> .. |cutoff-1>. truncation_leak is the
// probability mass of the ideal state discarded before renormalization.
// cutoff_warning is set when an explicit cutoff violates |alpha|^2 <= cutoff/2.
struct FieldState {
    Vector coeffs;
    std::size_t cutoff = 0;
    double truncation_leak = 0.0;
    bool cutoff_warning = false;
};

// ceil(|alpha|^2 + 8|alpha| + 12); keeps the Poisson tail below 1e-10 for
// nbar up to 1e4.
std::size_t auto_cutoff(double abs_alpha);

FieldState coherent_state(Complex alpha);                       // AUTO cutoff
FieldState coherent_state(Complex alpha, std::size_t cutoff);
FieldState fock_state(std::size_t n, std::size_t cutoff);
FieldState custom_state(const std::vector<Complex>& coeffs, std::size_t cutoff);

NumberStats number_stats(const FieldState& s);
PhaseStats phase_stats(const FieldState& s);

// JSON round-trip: {"cutoff": N, "truncation_leak": x, "coeffs": [[re,im],...]}
std::string to_json(const FieldState& s);
FieldState field_state_from_json(const std::string& text);

} // namespace cql::fock

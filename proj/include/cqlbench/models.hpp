// models.hpp — Atom-field model constructors: Hamiltonians, their conserved
// quantity L = L1 + L2, and the quantum-limit bound computed from sigma(L2)^2.
//
// Qubit basis convention: |0> = |g>, |1> = |e> for two-level kinds. The
// three-level Raman kind uses |0> = |g1>, |1> = |g2>, |2> = |e>, with the
// qubit living in the ground doublet.
//
// L is stored with L1 = +sigma_z always; every sign lives in L2. The bound
// depends only on sigma(L2)^2, so the choice is observationally neutral.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cqlbench/fock.hpp"
#include "cqlbench/linalg.hpp"

namespace cql::models {

using ops::Complex;
using ops::Matrix;
using ops::Vector;

enum class Kind { Jc, Multimode, Raman, FnFamily, Phase };

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& name);

struct ModelSpec {
    Kind kind = Kind::Jc;
    double g = 1.0;                      // Jc/Phase/FnFamily coupling rate
    std::vector<double> couplings;       // Multimode g_k; Raman {g_a, g_b}
    std::vector<double> detunings;       // per-mode detuning, default 0
    std::vector<double> fn;              // FnFamily ladder weights f_0..f_{N-2}
    std::vector<std::size_t> cutoffs;    // per-mode Fock cutoff
    std::size_t atom_dim = 2;

    std::size_t mode_count() const { return cutoffs.size(); }
    std::size_t field_dim() const;
    std::size_t joint_dim() const { return atom_dim * field_dim(); }
    double detuning(std::size_t mode) const;
    double coupling(std::size_t mode) const;

    static ModelSpec jc(std::size_t cutoff, double g = 1.0, double delta = 0.0);
    static ModelSpec phase(std::size_t cutoff, double g = 1.0);
    static ModelSpec fn_family(std::size_t cutoff, std::vector<double> fn, double g = 1.0);
    static ModelSpec multimode(std::vector<std::size_t> cutoffs, std::vector<double> couplings,
                               std::vector<double> detunings = {});
    static ModelSpec raman(std::size_t cutoff_a, std::size_t cutoff_b, double g_a, double g_b,
                           double delta_1 = 0.0, double delta_2 = 0.0);
};

void validate(const ModelSpec& m);

// FnFamily weight helpers; jc_fn reproduces the Jc matrix, unit_fn the Phase one.
std::vector<double> jc_fn(std::size_t cutoff);
std::vector<double> unit_fn(std::size_t cutoff);

// Sparse structural form: real diagonal plus upper couplings (i < j, value v
// means H[i,j] = v, H[j,i] = conj(v)). This is what the sector propagators
// consume; the dense builder materializes it.
struct Coupling {
    std::size_t i, j;
    Complex v;
};
struct HamiltonianTerms {
    std::size_t dim = 0;
    std::vector<double> diag;
    std::vector<Coupling> couplings;
};
HamiltonianTerms hamiltonian_terms(const ModelSpec& m);

// Dense Hermitian Hamiltonian in units of hbar = 1 (capacity-checked).
Matrix build_hamiltonian(const ModelSpec& m);

struct ConservedQuantity {
    Matrix l1;     // atom part (+sigma_z, possibly embedded)
    Matrix l2;     // field part on the full mode product space
    Matrix total;  // l1 (x) I + I (x) l2 on the joint space
};
ConservedQuantity conserved_quantity(const ModelSpec& m);

// Diagonal of L on the joint space; integer-valued in every model here.
// Usable far beyond the dense-operator cap.
std::vector<long long> l_diagonal(const ModelSpec& m);

// 0.25 / (1 + var_l2)
double cql_bound(double var_l2);

// sigma(L2)^2 for product field states, one state per mode:
// Jc/Phase/FnFamily -> 4 var(n); Multimode -> 4 sum_k var(n_k);
// Raman -> var(n_a) + var(n_b).
double bound_inputs(const ModelSpec& m, const std::vector<fock::FieldState>& fields);

} // namespace cql::models

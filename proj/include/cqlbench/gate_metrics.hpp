// gate_metrics.hpp — Error operator D, its moments, worst-case fidelity,
// branch decomposition, the bound-inequality chain, and the intensity/phase
// split of the gate error.
//
// target_sign fixes the convention: D = U^H (sigma_z (x) I) U + sign (sigma_x (x) I).
// The ladder models realize the reference gate sigma_x H, for which sign = +1
// makes D vanish on a perfect gate; sign = -1 pairs with a plain Hadamard
// target. For a three-level atom, sigma_z and sigma_x act on the qubit
// doublet and annihilate the third level.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cqlbench/dynamics.hpp"

namespace cql::metrics {

using dyn::Propagator;
using fock::FieldState;
using models::ModelSpec;
using ops::Complex;
using ops::Matrix;
using ops::Vector;

// --------------------------- error operator ---------------------------------

// Dense D (capacity-checked); mostly for inspection and unit tests. The
// moment evaluations below never materialize it.
Matrix error_operator(const Propagator& u, int target_sign);

// sigma_z / sigma_x embedded on the qubit doublet of the atom factor.
Vector apply_sigma_z(const Vector& x, std::size_t atom_dim, std::size_t field_dim);
Vector apply_sigma_x(const Vector& x, std::size_t atom_dim, std::size_t field_dim);

struct DMoments {
    double mean_d;
    double mean_d2;
    double var_d;
};

// Moments of D in the product state |+y> (x) psi, evaluated through matvec
// applications only.
DMoments d_moments(const Propagator& u, const std::vector<FieldState>& fields, int target_sign);

// --------------------------- branches ----------------------------------------

struct BranchDecomposition {
    Vector e00, e01, e10, e11;  // E_b^a, b = output atom level, a = input
};
BranchDecomposition branch_decomposition(const Propagator& u,
                                         const std::vector<FieldState>& fields);

// ||E_0^0 - E_0^1||^2 + ||E_1^0 + E_1^1||^2 for target_sign = -1, and the
// sign-mapped form ||E_0^0 + E_0^1||^2 + ||E_1^1 - E_1^0||^2 for +1.
// Equals <D^2> in |+y> (x) psi for a two-level atom.
double d2_from_branches(const BranchDecomposition& b, int target_sign = +1);

// Weight outside the qubit doublet after evolving |chi> (x) psi.
double leakage_population(const Propagator& u, const std::vector<FieldState>& fields,
                          Complex alpha, Complex beta);

// --------------------------- worst-case fidelity ----------------------------

struct WorstCase {
    double f2_min;
    double theta;  // minimizing Bloch angles
    double phi;
    bool converged;
};

// Minimum of F^2 over pure qubit inputs |chi(theta,phi)>; 181 x 360 grid then
// deterministic pattern refinement to 1e-9 relative.
WorstCase worst_case_fidelity(const Propagator& u, const std::vector<FieldState>& fields,
                              const Matrix& target);

// F^2 for |+x> and |-x> inputs (the branch identity evaluation points).
double fidelity_plus_x(const dyn::BranchGram& bg, const Matrix& target);
double fidelity_minus_x(const dyn::BranchGram& bg, const Matrix& target);

// --------------------------- reports and checks -----------------------------

struct GateReport {
    double mean_D = 0.0;
    double mean_D2 = 0.0;
    double var_D = 0.0;
    double fidelity_plus_x = 0.0;
    double fidelity_minus_x = 0.0;
    double worst_case_infidelity = 0.0;
    double cql_bound = 0.0;
    double intensity_term = 0.0;   // valid only when decomposition_valid
    double phase_term = 0.0;
    int target_sign = +1;
    bool decomposition_valid = false;
    // context, serialized alongside the report fields
    std::string model;
    double nbar = 0.0;
    double var_n = 0.0;
    double var_l2 = 0.0;
    double t_star = 0.0;
    double saturation_ratio = 0.0;  // sigma(D)^2 (1 + sigma(L2)^2)
    double leakage = 0.0;           // three-level atoms only
    bool scan_converged = true;
};

// Full pipeline at a fixed evolution time: propagator, moments, +/-x
// fidelities, worst case, bound from the actual (truncated) field variances.
GateReport gate_report(const ModelSpec& m, const std::vector<FieldState>& fields, double t,
                       int target_sign = +1);
GateReport gate_report(const ModelSpec& m, const std::vector<FieldState>& fields,
                       const Propagator& u, int target_sign = +1);

struct CqlCheck {
    bool pass;
    double margin_fid_vs_d2;     // (1 - F^2_min) - <D^2>/4
    double margin_d2_vs_var;     // <D^2>/4 - sigma(D)^2/4
    double margin_var_vs_bound;  // sigma(D)^2/4 - bound
    double margin_fid_vs_bound;  // (1 - F^2_min) - bound
};

// The inequality chain 1 - F^2_min >= <D^2>/4 >= sigma(D)^2/4 >= bound, each
// with tolerance 1e-9. <D^2> is evaluated at |+y>, a lower bound on the
// maximized quantity, so every link must hold exactly.
CqlCheck cql_check(const GateReport& r);

// Throwing form used by the batteries: a violation is an implementation bug.
void cql_check_or_throw(const GateReport& r, const std::string& context);

// --------------------------- error decomposition ----------------------------

struct ErrorDecomposition {
    double intensity_term;   // pi^2 sigma(n)^2 / (16 nbar^2)
    double phase_term;       // 2 (1 - <cos phi>)
    double sigma_d2_exact;
    double ratio;            // (intensity + phase) / exact
    bool valid;              // false when the field phase is ill-defined
};

// Jaynes-Cummings intensity/phase split at the pi/2-pulse time. Requires
// real field coefficients and nbar > 0.
ErrorDecomposition decompose_error(const ModelSpec& m, const FieldState& field);

std::string report_to_json(const GateReport& r);

} // namespace cql::metrics

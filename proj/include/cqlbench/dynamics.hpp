// dynamics.hpp — Exact propagators and gate-time selection.
//
// Production propagators exploit structure: the single-mode ladder kinds have
// closed-form 2x2 rotation blocks (one per excitation sector), and every
// other kind is exponentiated block-by-block inside the conserved-quantity
// sectors. The dense herm_expm in linalg stays independent and serves as the
// cross-validation oracle.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cqlbench/models.hpp"

namespace cql::dyn {

using fock::FieldState;
using models::ModelSpec;
using ops::Complex;
using ops::Matrix;
using ops::Vector;

enum class Method { BlockJc, BlockPhase, BlockLadder, Expm, Classical };
const char* method_name(Method m);

// One unitary block on a subset of joint-basis indices. Blocks partition the
// joint space, so scattering applies are race-free.
struct SectorBlock {
    std::vector<std::size_t> idx;
    Matrix u;
};

struct Propagator {
    Method method = Method::Expm;
    double t = 0.0;
    std::size_t atom_dim = 2;
    std::size_t field_dim = 1;

    std::vector<SectorBlock> blocks;

    std::size_t dim() const { return atom_dim * field_dim; }
    Vector apply(const Vector& x) const;
    Vector apply_adjoint(const Vector& x) const;
    Matrix to_dense() const;  // capacity-checked against the operator cap
};

// --------------------------- sector machinery -------------------------------

struct SectorEigen {
    std::vector<std::size_t> idx;
    Matrix vecs;
    Eigen::VectorXd evals;
};

struct SectorSystem {
    std::size_t atom_dim = 2;
    std::size_t field_dim = 1;
    std::vector<SectorEigen> sectors;
};

// Eigendecomposition of H restricted to each conserved-quantity sector.
SectorSystem sector_eigensystem(const ModelSpec& m);
Propagator propagator_at(const SectorSystem& sys, double t, Method tag = Method::Expm);

// --------------------------- propagators ------------------------------------

// Closed-form Jaynes-Cummings blocks (zero detuning): on span{|e,n>,|g,n+1>}
// a rotation by angle g t sqrt(n+1); |g,0> invariant; the top Fock level is
// frozen by the cutoff. Nonzero detuning routes to the sector exponential.
Propagator jc_propagator(const ModelSpec& m, double t);

// Closed-form phase-model propagator: same blocks with n-independent angle
// g t. The invariant |g,0> reproduces the exact vacuum correction
// 2 sin^2(gt/2)|0><0| of the closed-form evolution operator; the frozen top
// Fock level is the truncation analogue of that boundary term.
Propagator phase_propagator(const ModelSpec& m, double t);

// Generic ladder-weight propagator (FnFamily).
Propagator ladder_propagator(const ModelSpec& m, double t);

Propagator sector_expm(const ModelSpec& m, double t);
Propagator make_propagator(const ModelSpec& m, double t);

// cos(theta) I + [[0, -e^{-i phi}], [e^{i phi}, 0]] sin(theta); at
// theta = pi/4, phi = 0 this is the reference gate sigma_x H.
Matrix classical_gate(double phi, double theta);

// V (x) I_field as a Propagator (V acts on the qubit levels; any extra atom
// level is left alone).
Propagator qubit_gate_propagator(const Matrix& v, std::size_t atom_dim, std::size_t field_dim);

// Haar-random unitary drawn independently inside each conserved sector;
// commutes with L by construction. Deterministic for a given seed.
Propagator random_conserving_unitary(const ModelSpec& m, std::uint64_t seed);

// --------------------------- branch machinery -------------------------------

// Joint field state: tensor product of per-mode states (mode 0 slow).
Vector joint_field_state(const std::vector<FieldState>& fields);

// Branch field vectors E_b^a = <atom b| U (|atom a> (x) psi) for qubit inputs
// a in {0,1}; b runs over all atom levels. branches[a][b].
std::vector<std::vector<Vector>> atom_branches(const Propagator& u, const Vector& field_psi);

// Gram matrix over the qubit branches (E_0^0, E_0^1, E_1^0, E_1^1) plus the
// leaked weight outside the qubit subspace per input. Fidelities of any pure
// qubit input against any 2x2 target are O(1) evaluations of this.
struct BranchGram {
    Eigen::Matrix4cd g;
    double leak[2] = {0.0, 0.0};
};
BranchGram branch_gram(const Propagator& u, const Vector& field_psi);
BranchGram branch_gram_from_evolved(const Vector& u_psi0, const Vector& u_psi1,
                                    std::size_t atom_dim, std::size_t field_dim);

// Evolves the two qubit-input product states across many times from one
// eigensystem: per-sector spectral weights are computed once, so each time
// point costs O(sum s^2) instead of the O(sum s^3) propagator assembly.
class QubitInputEvolver {
  public:
    QubitInputEvolver(const SectorSystem& sys, const Vector& field_psi);
    void evolve(double t, Vector& u_psi0, Vector& u_psi1) const;
    BranchGram gram_at(double t) const;

  private:
    const SectorSystem* sys_;
    std::vector<Matrix> weights_;  // per sector: s x 2 spectral components
};

// F^2 for input alpha|0> + beta|1> against `target` (leakage counts as error).
double fidelity_sq(const BranchGram& bg, Complex alpha, Complex beta, const Matrix& target);

// Exact Bloch-sphere average of F^2 (equals the mean over the 6 cardinal states).
double mean_gate_fidelity(const BranchGram& bg, const Matrix& target);

// --------------------------- gate time --------------------------------------

enum class TimeRule { JcRule, PhaseRule, Scan };
const char* rule_name(TimeRule r);

struct GateTime {
    double t_star = 0.0;
    TimeRule rule = TimeRule::Scan;
    bool scan_converged = true;      // false: no interior maximum above 0.5
    double scan_mean_fidelity = -1.0;
};

// Jc/FnFamily(sqrt(n+1)) at zero detuning -> pi/(4 g sqrt(nbar+1));
// Phase -> pi/(4g); everything else scans the mean gate fidelity on a grid
// of resolution 1e-3 coarse Rabi periods and golden-section refines the best
// interior maximum to 1e-9 relative.
GateTime gate_time(const ModelSpec& m, const std::vector<FieldState>& fields);

// Scan against a precomputed eigensystem (reused by reports afterwards).
GateTime scan_gate_time(const SectorSystem& sys, const ModelSpec& m,
                        const std::vector<FieldState>& fields, const Matrix& target);

// Scan window helper: 2 pi / sqrt(sum_k g_k^2 (nbar_k + 1)).
double coarse_rabi_period(const ModelSpec& m, const std::vector<FieldState>& fields);

} // namespace cql::dyn

// dynamics.cpp — propagator construction and gate-time selection

#include "cqlbench/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cql::dyn {

const char* method_name(Method m) {
    switch (m) {
        case Method::BlockJc: return "BLOCK_JC";
        case Method::BlockPhase: return "BLOCK_PHASE";
        case Method::BlockLadder: return "BLOCK_LADDER";
        case Method::Expm: return "EXPM";
        case Method::Classical: return "CLASSICAL";
    }
    return "?";
}

const char* rule_name(TimeRule r) {
    switch (r) {
        case TimeRule::JcRule: return "JC_RULE";
        case TimeRule::PhaseRule: return "PHASE_RULE";
        case TimeRule::Scan: return "SCAN";
    }
    return "?";
}

// --------------------------- Propagator -------------------------------------

Vector Propagator::apply(const Vector& x) const {
    if (static_cast<std::size_t>(x.size()) != dim())
        throw std::invalid_argument("Propagator::apply: dimension mismatch");
    Vector out = Vector::Zero(x.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(blocks.size()); ++bi) {
        const auto& b = blocks[static_cast<std::size_t>(bi)];
        const std::size_t s = b.idx.size();
        Vector xb(static_cast<Eigen::Index>(s));
        for (std::size_t k = 0; k < s; ++k) xb(static_cast<Eigen::Index>(k)) = x(static_cast<Eigen::Index>(b.idx[k]));
        Vector yb = b.u * xb;
        for (std::size_t k = 0; k < s; ++k) out(static_cast<Eigen::Index>(b.idx[k])) = yb(static_cast<Eigen::Index>(k));
    }
    return out;
}

Vector Propagator::apply_adjoint(const Vector& x) const {
    if (static_cast<std::size_t>(x.size()) != dim())
        throw std::invalid_argument("Propagator::apply_adjoint: dimension mismatch");
    Vector out = Vector::Zero(x.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(blocks.size()); ++bi) {
        const auto& b = blocks[static_cast<std::size_t>(bi)];
        const std::size_t s = b.idx.size();
        Vector xb(static_cast<Eigen::Index>(s));
        for (std::size_t k = 0; k < s; ++k) xb(static_cast<Eigen::Index>(k)) = x(static_cast<Eigen::Index>(b.idx[k]));
        Vector yb = b.u.adjoint() * xb;
        for (std::size_t k = 0; k < s; ++k) out(static_cast<Eigen::Index>(b.idx[k])) = yb(static_cast<Eigen::Index>(k));
    }
    return out;
}

Matrix Propagator::to_dense() const {
    const std::size_t n = dim();
    if (n > kMaxOperatorDim)
        throw capacity_error("Propagator::to_dense: dimension " + std::to_string(n) +
                             " exceeds operator cap " + std::to_string(kMaxOperatorDim));
    Matrix u = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& b : blocks)
        for (std::size_t r = 0; r < b.idx.size(); ++r)
            for (std::size_t c = 0; c < b.idx.size(); ++c)
                u(static_cast<Eigen::Index>(b.idx[r]), static_cast<Eigen::Index>(b.idx[c])) =
                    b.u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    return u;
}

// --------------------------- sector machinery -------------------------------

namespace {

std::vector<std::vector<std::size_t>> l_sectors(const ModelSpec& m) {
    const auto ldiag = models::l_diagonal(m);
    std::map<long long, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < ldiag.size(); ++i) groups[ldiag[i]].push_back(i);
    std::vector<std::vector<std::size_t>> sectors;
    sectors.reserve(groups.size());
    for (auto& [l, idx] : groups) sectors.push_back(std::move(idx));
    return sectors;
}

} // namespace

SectorSystem sector_eigensystem(const ModelSpec& m) {
    const auto terms = models::hamiltonian_terms(m);
    const auto sectors = l_sectors(m);

    // position of each joint index inside its sector
    std::vector<std::uint32_t> sector_of(terms.dim), pos_in(terms.dim);
    for (std::size_t s = 0; s < sectors.size(); ++s)
        for (std::size_t k = 0; k < sectors[s].size(); ++k) {
            sector_of[sectors[s][k]] = static_cast<std::uint32_t>(s);
            pos_in[sectors[s][k]] = static_cast<std::uint32_t>(k);
        }

    std::vector<Matrix> hblocks(sectors.size());
    for (std::size_t s = 0; s < sectors.size(); ++s) {
        const auto n = static_cast<Eigen::Index>(sectors[s].size());
        hblocks[s] = Matrix::Zero(n, n);
        for (std::size_t k = 0; k < sectors[s].size(); ++k)
            hblocks[s](static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
                terms.diag[sectors[s][k]];
    }
    for (const auto& c : terms.couplings) {
        if (sector_of[c.i] != sector_of[c.j])
            throw std::logic_error("sector_eigensystem: coupling crosses conserved sectors");
        auto& hb = hblocks[sector_of[c.i]];
        hb(static_cast<Eigen::Index>(pos_in[c.i]), static_cast<Eigen::Index>(pos_in[c.j])) = c.v;
        hb(static_cast<Eigen::Index>(pos_in[c.j]), static_cast<Eigen::Index>(pos_in[c.i])) =
            std::conj(c.v);
    }

    SectorSystem sys;
    sys.atom_dim = m.atom_dim;
    sys.field_dim = m.field_dim();
    sys.sectors.resize(sectors.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(sectors.size()); ++s) {
        const auto si = static_cast<std::size_t>(s);
        SectorEigen se;
        se.idx = sectors[si];
        if (se.idx.size() == 1) {
            se.vecs = Matrix::Ones(1, 1);
            se.evals = Eigen::VectorXd::Constant(1, hblocks[si](0, 0).real());
        } else {
            Eigen::SelfAdjointEigenSolver<Matrix> es(hblocks[si]);
            se.vecs = es.eigenvectors();
            se.evals = es.eigenvalues();
        }
        sys.sectors[si] = std::move(se);
    }
    return sys;
}

Propagator propagator_at(const SectorSystem& sys, double t, Method tag) {
    Propagator p;
    p.method = tag;
    p.t = t;
    p.atom_dim = sys.atom_dim;
    p.field_dim = sys.field_dim;
    p.blocks.resize(sys.sectors.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(sys.sectors.size()); ++s) {
        const auto& se = sys.sectors[static_cast<std::size_t>(s)];
        SectorBlock b;
        b.idx = se.idx;
        Matrix scaled = se.vecs;
        for (Eigen::Index j = 0; j < scaled.cols(); ++j)
            scaled.col(j) *= std::exp(Complex(0.0, -t * se.evals(j)));
        b.u = scaled * se.vecs.adjoint();
        p.blocks[static_cast<std::size_t>(s)] = std::move(b);
    }
    return p;
}

// --------------------------- propagators ------------------------------------

namespace {

// Shared closed form for the single-mode ladder kinds: |g,0> and |e,N-1> are
// invariant; span{|e,n>,|g,n+1>} rotates by angle g t f_n.
Propagator ladder_blocks(const ModelSpec& m, double t, const std::vector<double>& fn,
                         Method tag) {
    const std::size_t n_cut = m.cutoffs[0];
    Propagator p;
    p.method = tag;
    p.t = t;
    p.atom_dim = 2;
    p.field_dim = n_cut;

    auto g_idx = [n_cut](std::size_t n) { return 0 * n_cut + n; };
    auto e_idx = [n_cut](std::size_t n) { return 1 * n_cut + n; };

    p.blocks.push_back({{g_idx(0)}, Matrix::Ones(1, 1)});
    for (std::size_t n = 0; n + 1 < n_cut; ++n) {
        const double th = m.g * t * fn[n];
        Matrix u(2, 2);
        // basis order [ |e,n>, |g,n+1> ]
        u << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
        p.blocks.push_back({{e_idx(n), g_idx(n + 1)}, u});
    }
    p.blocks.push_back({{e_idx(n_cut - 1)}, Matrix::Ones(1, 1)});
    return p;
}

} // namespace

Propagator jc_propagator(const ModelSpec& m, double t) {
    if (m.kind != models::Kind::Jc)
        throw std::invalid_argument("jc_propagator: model kind must be jc");
    if (m.detuning(0) != 0.0) return sector_expm(m, t);
    return ladder_blocks(m, t, models::jc_fn(m.cutoffs[0]), Method::BlockJc);
}

Propagator phase_propagator(const ModelSpec& m, double t) {
    if (m.kind != models::Kind::Phase)
        throw std::invalid_argument("phase_propagator: model kind must be phase");
    return ladder_blocks(m, t, models::unit_fn(m.cutoffs[0]), Method::BlockPhase);
}

Propagator ladder_propagator(const ModelSpec& m, double t) {
    if (m.kind != models::Kind::FnFamily)
        throw std::invalid_argument("ladder_propagator: model kind must be fnfamily");
    return ladder_blocks(m, t, m.fn, Method::BlockLadder);
}

Propagator sector_expm(const ModelSpec& m, double t) {
    return propagator_at(sector_eigensystem(m), t, Method::Expm);
}

Propagator make_propagator(const ModelSpec& m, double t) {
    switch (m.kind) {
        case models::Kind::Jc: return jc_propagator(m, t);
        case models::Kind::Phase: return phase_propagator(m, t);
        case models::Kind::FnFamily: return ladder_propagator(m, t);
        case models::Kind::Multimode:
        case models::Kind::Raman: return sector_expm(m, t);
    }
    throw std::logic_error("make_propagator: unhandled kind");
}

Matrix classical_gate(double phi, double theta) {
    Matrix u(2, 2);
    const Complex eip = std::exp(Complex(0.0, phi));
    u << std::cos(theta), -std::sin(theta) * std::conj(eip), std::sin(theta) * eip,
        std::cos(theta);
    return u;
}

Propagator qubit_gate_propagator(const Matrix& v, std::size_t atom_dim, std::size_t field_dim) {
    if (v.rows() != 2 || v.cols() != 2)
        throw std::invalid_argument("qubit_gate_propagator: target must be 2x2");
    Propagator p;
    p.method = Method::Classical;
    p.atom_dim = atom_dim;
    p.field_dim = field_dim;
    for (std::size_t f = 0; f < field_dim; ++f)
        p.blocks.push_back({{0 * field_dim + f, 1 * field_dim + f}, v});
    for (std::size_t a = 2; a < atom_dim; ++a)
        for (std::size_t f = 0; f < field_dim; ++f)
            p.blocks.push_back({{a * field_dim + f}, Matrix::Ones(1, 1)});
    return p;
}

Propagator random_conserving_unitary(const ModelSpec& m, std::uint64_t seed) {
    const auto sectors = l_sectors(m);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;

    Propagator p;
    p.method = Method::Expm;
    p.atom_dim = m.atom_dim;
    p.field_dim = m.field_dim();
    p.blocks.reserve(sectors.size());
    for (const auto& idx : sectors) {
        const auto s = static_cast<Eigen::Index>(idx.size());
        Matrix gin(s, s);
        for (Eigen::Index r = 0; r < s; ++r)
            for (Eigen::Index c = 0; c < s; ++c) gin(r, c) = Complex(nd(rng), nd(rng));
        Eigen::HouseholderQR<Matrix> qr(gin);
        Matrix q = qr.householderQ() * Matrix::Identity(s, s);
        Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index c = 0; c < s; ++c) {
            const Complex d = r(c, c);
            if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
        }
        p.blocks.push_back({idx, std::move(q)});
    }
    return p;
}

// --------------------------- branch machinery -------------------------------

Vector joint_field_state(const std::vector<FieldState>& fields) {
    if (fields.empty()) throw std::invalid_argument("joint_field_state: no modes");
    Vector psi = fields[0].coeffs;
    for (std::size_t k = 1; k < fields.size(); ++k) psi = ops::tensor(psi, fields[k].coeffs);
    return psi;
}

std::vector<std::vector<Vector>> atom_branches(const Propagator& u, const Vector& field_psi) {
    const std::size_t fdim = u.field_dim;
    if (static_cast<std::size_t>(field_psi.size()) != fdim)
        throw std::invalid_argument("atom_branches: field dimension mismatch");
    std::vector<std::vector<Vector>> branches(2);
    for (std::size_t a = 0; a < 2; ++a) {
        Vector joint = Vector::Zero(static_cast<Eigen::Index>(u.dim()));
        joint.segment(static_cast<Eigen::Index>(a * fdim), static_cast<Eigen::Index>(fdim)) =
            field_psi;
        const Vector evolved = u.apply(joint);
        branches[a].resize(u.atom_dim);
        for (std::size_t b = 0; b < u.atom_dim; ++b)
            branches[a][b] = evolved.segment(static_cast<Eigen::Index>(b * fdim),
                                             static_cast<Eigen::Index>(fdim));
    }
    return branches;
}

namespace {

BranchGram gram_from_branches(const std::vector<std::vector<Vector>>& br) {
    BranchGram bg;
    // order (E_0^0, E_0^1, E_1^0, E_1^1): [b][a] -> 2*b + a
    const Vector* e[4] = {&br[0][0], &br[1][0], &br[0][1], &br[1][1]};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) bg.g(i, j) = e[i]->dot(*e[j]);
    for (std::size_t a = 0; a < 2; ++a) {
        double leak = 0.0;
        for (std::size_t b = 2; b < br[a].size(); ++b) leak += br[a][b].squaredNorm();
        bg.leak[a] = leak;
    }
    return bg;
}

} // namespace

BranchGram branch_gram(const Propagator& u, const Vector& field_psi) {
    return gram_from_branches(atom_branches(u, field_psi));
}

BranchGram branch_gram_from_evolved(const Vector& u_psi0, const Vector& u_psi1,
                                    std::size_t atom_dim, std::size_t field_dim) {
    const auto seg = [field_dim](const Vector& v, std::size_t b) {
        return v.segment(static_cast<Eigen::Index>(b * field_dim),
                         static_cast<Eigen::Index>(field_dim));
    };
    BranchGram bg;
    const Vector* in[2] = {&u_psi0, &u_psi1};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            bg.g(i, j) = seg(*in[i % 2], static_cast<std::size_t>(i / 2))
                             .dot(seg(*in[j % 2], static_cast<std::size_t>(j / 2)));
    for (std::size_t a = 0; a < 2; ++a) {
        double leak = 0.0;
        for (std::size_t b = 2; b < atom_dim; ++b) leak += seg(*in[a], b).squaredNorm();
        bg.leak[a] = leak;
    }
    return bg;
}

QubitInputEvolver::QubitInputEvolver(const SectorSystem& sys, const Vector& field_psi)
    : sys_(&sys) {
    const std::size_t fdim = sys.field_dim;
    if (static_cast<std::size_t>(field_psi.size()) != fdim)
        throw std::invalid_argument("QubitInputEvolver: field dimension mismatch");
    weights_.resize(sys.sectors.size());
    for (std::size_t s = 0; s < sys.sectors.size(); ++s) {
        const auto& se = sys.sectors[s];
        const auto n = static_cast<Eigen::Index>(se.idx.size());
        Matrix comp = Matrix::Zero(n, 2);
        for (Eigen::Index k = 0; k < n; ++k) {
            const std::size_t atom = se.idx[static_cast<std::size_t>(k)] / fdim;
            const std::size_t f = se.idx[static_cast<std::size_t>(k)] % fdim;
            if (atom < 2) comp(k, static_cast<Eigen::Index>(atom)) = field_psi(static_cast<Eigen::Index>(f));
        }
        weights_[s] = se.vecs.adjoint() * comp;
    }
}

void QubitInputEvolver::evolve(double t, Vector& u_psi0, Vector& u_psi1) const {
    const std::size_t dim = sys_->atom_dim * sys_->field_dim;
    u_psi0 = Vector::Zero(static_cast<Eigen::Index>(dim));
    u_psi1 = Vector::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t s = 0; s < sys_->sectors.size(); ++s) {
        const auto& se = sys_->sectors[s];
        const auto n = static_cast<Eigen::Index>(se.idx.size());
        Matrix w = weights_[s];
        for (Eigen::Index k = 0; k < n; ++k) {
            const Complex ph = std::exp(Complex(0.0, -t * se.evals(k)));
            w(k, 0) *= ph;
            w(k, 1) *= ph;
        }
        const Matrix y = se.vecs * w;
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto j = static_cast<Eigen::Index>(se.idx[static_cast<std::size_t>(k)]);
            u_psi0(j) = y(k, 0);
            u_psi1(j) = y(k, 1);
        }
    }
}

BranchGram QubitInputEvolver::gram_at(double t) const {
    Vector y0, y1;
    evolve(t, y0, y1);
    return branch_gram_from_evolved(y0, y1, sys_->atom_dim, sys_->field_dim);
}

double fidelity_sq(const BranchGram& bg, Complex alpha, Complex beta, const Matrix& target) {
    const Complex gamma = target(0, 0) * alpha + target(0, 1) * beta;
    const Complex delta = target(1, 0) * alpha + target(1, 1) * beta;
    Eigen::Vector4cd w;
    w << std::conj(gamma) * alpha, std::conj(gamma) * beta, std::conj(delta) * alpha,
        std::conj(delta) * beta;
    const Complex f2 = w.dot(bg.g * w);  // w^H G w
    return f2.real();
}

double mean_gate_fidelity(const BranchGram& bg, const Matrix& target) {
    // F^2 is quadratic in the Bloch vector, so the sphere average equals the
    // mean over the six cardinal states.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex i1(0.0, 1.0);
    const Complex chis[6][2] = {
        {1.0, 0.0},
        {0.0, 1.0},
        {inv_sqrt2, inv_sqrt2},
        {inv_sqrt2, -inv_sqrt2},
        {inv_sqrt2, i1 * inv_sqrt2},
        {inv_sqrt2, -i1 * inv_sqrt2},
    };
    double sum = 0.0;
    for (const auto& chi : chis) sum += fidelity_sq(bg, chi[0], chi[1], target);
    return sum / 6.0;
}

// --------------------------- gate time --------------------------------------

double coarse_rabi_period(const ModelSpec& m, const std::vector<FieldState>& fields) {
    double w2 = 0.0;
    for (std::size_t k = 0; k < m.mode_count(); ++k)
        w2 += m.coupling(k) * m.coupling(k) * (fock::number_stats(fields.at(k)).nbar + 1.0);
    if (w2 <= 0.0) throw std::invalid_argument("coarse_rabi_period: no coupling");
    return 2.0 * std::numbers::pi / std::sqrt(w2);
}

GateTime scan_gate_time(const SectorSystem& sys, const ModelSpec& m,
                        const std::vector<FieldState>& fields, const Matrix& target) {
    const double period = coarse_rabi_period(m, fields);
    const double dt = 1e-3 * period;
    const std::size_t npts = 1500;  // covers 1.5 coarse periods
    const QubitInputEvolver evolver(sys, joint_field_state(fields));

    std::vector<double> fbar(npts);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(npts); ++i) {
        const double t = dt * static_cast<double>(i + 1);
        fbar[static_cast<std::size_t>(i)] = mean_gate_fidelity(evolver.gram_at(t), target);
    }

    // best interior local maximum, earliest time wins ties
    std::size_t best = npts;
    for (std::size_t i = 1; i + 1 < npts; ++i)
        if (fbar[i] >= fbar[i - 1] && fbar[i] >= fbar[i + 1])
            if (best == npts || fbar[i] > fbar[best]) best = i;

    GateTime gt;
    gt.rule = TimeRule::Scan;
    if (best == npts || fbar[best] <= 0.5) {
        // flagged: fall back to the global grid maximum
        std::size_t gbest = 0;
        for (std::size_t i = 1; i < npts; ++i)
            if (fbar[i] > fbar[gbest]) gbest = i;
        gt.scan_converged = false;
        gt.t_star = dt * static_cast<double>(gbest + 1);
        gt.scan_mean_fidelity = fbar[gbest];
        return gt;
    }

    auto objective = [&](double t) { return mean_gate_fidelity(evolver.gram_at(t), target); };
    double lo = dt * static_cast<double>(best);      // t_{best-1}
    double hi = dt * static_cast<double>(best + 2);  // t_{best+1}
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    while ((hi - lo) > 1e-9 * hi) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = objective(x1);
        }
    }
    gt.t_star = 0.5 * (lo + hi);
    gt.scan_mean_fidelity = objective(gt.t_star);
    gt.scan_converged = true;
    return gt;
}

GateTime gate_time(const ModelSpec& m, const std::vector<FieldState>& fields) {
    if (fields.size() != m.mode_count())
        throw std::invalid_argument("gate_time: one field state per mode required");

    const bool jc_like =
        (m.kind == models::Kind::Jc && m.detuning(0) == 0.0) ||
        (m.kind == models::Kind::FnFamily && m.fn == models::jc_fn(m.cutoffs[0]));
    if (jc_like) {
        const double nbar = fock::number_stats(fields[0]).nbar;
        return GateTime{std::numbers::pi / (4.0 * m.g * std::sqrt(nbar + 1.0)),
                        TimeRule::JcRule, true, -1.0};
    }
    if (m.kind == models::Kind::Phase)
        return GateTime{std::numbers::pi / (4.0 * m.g), TimeRule::PhaseRule, true, -1.0};

    return scan_gate_time(sector_eigensystem(m), m, fields, classical_gate(0.0, std::numbers::pi / 4.0));
}

} // namespace cql::dyn

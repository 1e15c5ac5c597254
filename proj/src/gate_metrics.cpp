// gate_metrics.cpp — error-operator analysis and fidelity bounds

#include "cqlbench/gate_metrics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cqlbench/io.hpp"

namespace cql::metrics {

namespace {

void check_sign(int target_sign) {
    if (target_sign != 1 && target_sign != -1)
        throw std::invalid_argument("target_sign must be +1 or -1");
}

Matrix sigma_z_embedded(std::size_t atom_dim) {
    Matrix s = Matrix::Zero(static_cast<Eigen::Index>(atom_dim),
                            static_cast<Eigen::Index>(atom_dim));
    s(0, 0) = 1.0;
    s(1, 1) = -1.0;
    return s;
}

Matrix sigma_x_embedded(std::size_t atom_dim) {
    Matrix s = Matrix::Zero(static_cast<Eigen::Index>(atom_dim),
                            static_cast<Eigen::Index>(atom_dim));
    s(0, 1) = 1.0;
    s(1, 0) = 1.0;
    return s;
}

Vector plus_y_joint(const Vector& field_psi, std::size_t atom_dim) {
    const std::size_t fdim = static_cast<std::size_t>(field_psi.size());
    Vector joint = Vector::Zero(static_cast<Eigen::Index>(atom_dim * fdim));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    joint.segment(0, static_cast<Eigen::Index>(fdim)) = inv_sqrt2 * field_psi;
    joint.segment(static_cast<Eigen::Index>(fdim), static_cast<Eigen::Index>(fdim)) =
        Complex(0.0, inv_sqrt2) * field_psi;
    return joint;
}

} // namespace

// --------------------------- error operator ---------------------------------

Matrix error_operator(const Propagator& u, int target_sign) {
    check_sign(target_sign);
    const Matrix ud = u.to_dense();
    const Matrix sz = ops::tensor(sigma_z_embedded(u.atom_dim), ops::identity(u.field_dim));
    const Matrix sx = ops::tensor(sigma_x_embedded(u.atom_dim), ops::identity(u.field_dim));
    Matrix d = ops::adjoint_multiply(ud, ops::multiply(sz, ud));
    d += static_cast<double>(target_sign) * sx;
    return d;
}

Vector apply_sigma_z(const Vector& x, std::size_t atom_dim, std::size_t field_dim) {
    if (static_cast<std::size_t>(x.size()) != atom_dim * field_dim)
        throw std::invalid_argument("apply_sigma_z: dimension mismatch");
    Vector y = Vector::Zero(x.size());
    y.segment(0, static_cast<Eigen::Index>(field_dim)) =
        x.segment(0, static_cast<Eigen::Index>(field_dim));
    y.segment(static_cast<Eigen::Index>(field_dim), static_cast<Eigen::Index>(field_dim)) =
        -x.segment(static_cast<Eigen::Index>(field_dim), static_cast<Eigen::Index>(field_dim));
    return y;
}

Vector apply_sigma_x(const Vector& x, std::size_t atom_dim, std::size_t field_dim) {
    if (static_cast<std::size_t>(x.size()) != atom_dim * field_dim)
        throw std::invalid_argument("apply_sigma_x: dimension mismatch");
    Vector y = Vector::Zero(x.size());
    y.segment(0, static_cast<Eigen::Index>(field_dim)) =
        x.segment(static_cast<Eigen::Index>(field_dim), static_cast<Eigen::Index>(field_dim));
    y.segment(static_cast<Eigen::Index>(field_dim), static_cast<Eigen::Index>(field_dim)) =
        x.segment(0, static_cast<Eigen::Index>(field_dim));
    return y;
}

DMoments d_moments(const Propagator& u, const std::vector<FieldState>& fields, int target_sign) {
    check_sign(target_sign);
    const Vector field_psi = dyn::joint_field_state(fields);
    const Vector psi = plus_y_joint(field_psi, u.atom_dim);

    // D psi = U^H sigma_z U psi + sign * sigma_x psi
    const Vector upsi = u.apply(psi);
    const Vector zupsi = apply_sigma_z(upsi, u.atom_dim, u.field_dim);
    Vector dpsi = u.apply_adjoint(zupsi);
    dpsi += static_cast<double>(target_sign) * apply_sigma_x(psi, u.atom_dim, u.field_dim);

    const double mean_d = psi.dot(dpsi).real();
    const double mean_d2 = dpsi.squaredNorm();
    double var = mean_d2 - mean_d * mean_d;
    if (var < 0.0) var = 0.0;
    return DMoments{mean_d, mean_d2, var};
}

// --------------------------- branches ----------------------------------------

BranchDecomposition branch_decomposition(const Propagator& u,
                                         const std::vector<FieldState>& fields) {
    const auto br = dyn::atom_branches(u, dyn::joint_field_state(fields));
    return BranchDecomposition{br[0][0], br[1][0], br[0][1], br[1][1]};
}

double d2_from_branches(const BranchDecomposition& b, int target_sign) {
    check_sign(target_sign);
    if (target_sign < 0)
        return (b.e00 - b.e01).squaredNorm() + (b.e10 + b.e11).squaredNorm();
    return (b.e00 + b.e01).squaredNorm() + (b.e11 - b.e10).squaredNorm();
}

double leakage_population(const Propagator& u, const std::vector<FieldState>& fields,
                          Complex alpha, Complex beta) {
    const Vector field_psi = dyn::joint_field_state(fields);
    const std::size_t fdim = u.field_dim;
    Vector joint = Vector::Zero(static_cast<Eigen::Index>(u.dim()));
    joint.segment(0, static_cast<Eigen::Index>(fdim)) = alpha * field_psi;
    joint.segment(static_cast<Eigen::Index>(fdim), static_cast<Eigen::Index>(fdim)) =
        beta * field_psi;
    const Vector evolved = u.apply(joint);
    double leak = 0.0;
    for (std::size_t a = 2; a < u.atom_dim; ++a)
        leak += evolved
                    .segment(static_cast<Eigen::Index>(a * fdim), static_cast<Eigen::Index>(fdim))
                    .squaredNorm();
    return leak;
}

// --------------------------- worst-case fidelity ----------------------------

namespace {

double f2_at(const dyn::BranchGram& bg, const Matrix& target, double theta, double phi) {
    const Complex alpha = std::cos(0.5 * theta);
    const Complex beta = std::exp(Complex(0.0, phi)) * std::sin(0.5 * theta);
    return dyn::fidelity_sq(bg, alpha, beta, target);
}

} // namespace

WorstCase worst_case_fidelity(const Propagator& u, const std::vector<FieldState>& fields,
                              const Matrix& target) {
    if (target.rows() != 2 || target.cols() != 2)
        throw std::invalid_argument("worst_case_fidelity: target must be 2x2");
    const dyn::BranchGram bg = dyn::branch_gram(u, dyn::joint_field_state(fields));

    constexpr int n_theta = 181;
    constexpr int n_phi = 360;
    const double pi = std::numbers::pi;

    std::vector<double> grid(static_cast<std::size_t>(n_theta) * n_phi);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t it = 0; it < n_theta; ++it) {
        const double theta = pi * static_cast<double>(it) / (n_theta - 1);
        for (int ip = 0; ip < n_phi; ++ip) {
            const double phi = 2.0 * pi * static_cast<double>(ip) / n_phi;
            grid[static_cast<std::size_t>(it) * n_phi + static_cast<std::size_t>(ip)] =
                f2_at(bg, target, theta, phi);
        }
    }

    // deterministic argmin: smallest polar angle, then azimuth
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] < grid[best]) best = i;
    double theta = pi * static_cast<double>(best / n_phi) / (n_theta - 1);
    double phi = 2.0 * pi * static_cast<double>(best % n_phi) / n_phi;
    double f2 = grid[best];

    // pattern refinement on the sphere
    double step = pi / (n_theta - 1);
    bool converged = false;
    for (int iter = 0; iter < 300; ++iter) {
        bool improved = false;
        for (const auto& d : {std::pair{step, 0.0}, std::pair{-step, 0.0}, std::pair{0.0, step},
                              std::pair{0.0, -step}}) {
            double th = std::clamp(theta + d.first, 0.0, pi);
            double ph = phi + d.second;
            const double f = f2_at(bg, target, th, ph);
            if (f < f2) {
                f2 = f;
                theta = th;
                phi = ph;
                improved = true;
            }
        }
        if (!improved) {
            if (step < 1e-10) {
                converged = true;
                break;
            }
            step *= 0.5;
        }
    }
    phi = std::fmod(std::fmod(phi, 2.0 * pi) + 2.0 * pi, 2.0 * pi);
    return WorstCase{f2, theta, phi, converged};
}

double fidelity_plus_x(const dyn::BranchGram& bg, const Matrix& target) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return dyn::fidelity_sq(bg, inv_sqrt2, inv_sqrt2, target);
}

double fidelity_minus_x(const dyn::BranchGram& bg, const Matrix& target) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return dyn::fidelity_sq(bg, inv_sqrt2, -inv_sqrt2, target);
}

// --------------------------- reports and checks -----------------------------

GateReport gate_report(const ModelSpec& m, const std::vector<FieldState>& fields, double t,
                       int target_sign) {
    return gate_report(m, fields, dyn::make_propagator(m, t), target_sign);
}

GateReport gate_report(const ModelSpec& m, const std::vector<FieldState>& fields,
                       const Propagator& u, int target_sign) {
    check_sign(target_sign);
    const Matrix target = dyn::classical_gate(0.0, std::numbers::pi / 4.0);

    GateReport r;
    r.model = models::kind_name(m.kind);
    r.target_sign = target_sign;
    r.t_star = u.t;

    const auto dm = d_moments(u, fields, target_sign);
    r.mean_D = dm.mean_d;
    r.mean_D2 = dm.mean_d2;
    r.var_D = dm.var_d;

    const dyn::BranchGram bg = dyn::branch_gram(u, dyn::joint_field_state(fields));
    r.fidelity_plus_x = fidelity_plus_x(bg, target);
    r.fidelity_minus_x = fidelity_minus_x(bg, target);
    r.worst_case_infidelity = 1.0 - worst_case_fidelity(u, fields, target).f2_min;

    r.var_l2 = models::bound_inputs(m, fields);
    r.cql_bound = models::cql_bound(r.var_l2);
    r.saturation_ratio = r.var_D * (1.0 + r.var_l2);

    const auto ns = fock::number_stats(fields[0]);
    r.nbar = ns.nbar;
    r.var_n = ns.var_n;

    if (m.atom_dim > 2) {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        r.leakage = leakage_population(u, fields, inv_sqrt2, Complex(0.0, inv_sqrt2));
    }

    if (m.kind == models::Kind::Jc && m.detuning(0) == 0.0 && ns.nbar > 0.0) {
        const auto ps = fock::phase_stats(fields[0]);
        bool real_coeffs = true;
        for (Eigen::Index i = 0; i < fields[0].coeffs.size(); ++i)
            if (std::abs(fields[0].coeffs(i).imag()) > 1e-12) real_coeffs = false;
        if (real_coeffs) {
            r.intensity_term = std::numbers::pi * std::numbers::pi * ns.var_n /
                               (16.0 * ns.nbar * ns.nbar);
            r.phase_term = ps.var_phi_proxy;
            r.decomposition_valid = ps.cos_mean > 0.5;
        }
    }
    return r;
}

CqlCheck cql_check(const GateReport& r) {
    CqlCheck c{};
    c.margin_fid_vs_d2 = r.worst_case_infidelity - 0.25 * r.mean_D2;
    c.margin_d2_vs_var = 0.25 * (r.mean_D2 - r.var_D);
    c.margin_var_vs_bound = 0.25 * r.var_D - r.cql_bound;
    c.margin_fid_vs_bound = r.worst_case_infidelity - r.cql_bound;
    const double tol = -1e-9;
    c.pass = c.margin_fid_vs_d2 >= tol && c.margin_d2_vs_var >= tol &&
             c.margin_var_vs_bound >= tol && c.margin_fid_vs_bound >= tol;
    return c;
}

void cql_check_or_throw(const GateReport& r, const std::string& context) {
    const CqlCheck c = cql_check(r);
    if (c.pass) return;
    std::ostringstream os;
    os << "bound inequality violated [" << context << "]: margins fid-d2="
       << io::format_double(c.margin_fid_vs_d2)
       << " d2-var=" << io::format_double(c.margin_d2_vs_var)
       << " var-bound=" << io::format_double(c.margin_var_vs_bound)
       << " fid-bound=" << io::format_double(c.margin_fid_vs_bound)
       << "; report=" << report_to_json(r);
    throw theorem_breach(os.str());
}

// --------------------------- error decomposition ----------------------------

ErrorDecomposition decompose_error(const ModelSpec& m, const FieldState& field) {
    if (m.kind != models::Kind::Jc || m.detuning(0) != 0.0)
        throw std::invalid_argument("decompose_error: resonant jc model required");
    const auto ns = fock::number_stats(field);
    if (ns.nbar <= 0.0) throw std::invalid_argument("decompose_error: nbar must be positive");
    for (Eigen::Index i = 0; i < field.coeffs.size(); ++i)
        if (std::abs(field.coeffs(i).imag()) > 1e-12)
            throw std::invalid_argument("decompose_error: field coefficients must be real");

    const auto gt = dyn::gate_time(m, {field});
    const auto dm = d_moments(dyn::jc_propagator(m, gt.t_star), {field}, +1);
    const auto ps = fock::phase_stats(field);

    ErrorDecomposition d{};
    d.intensity_term =
        std::numbers::pi * std::numbers::pi * ns.var_n / (16.0 * ns.nbar * ns.nbar);
    d.phase_term = ps.var_phi_proxy;
    d.sigma_d2_exact = dm.var_d;
    d.ratio = dm.var_d > 0.0 ? (d.intensity_term + d.phase_term) / dm.var_d : 0.0;
    d.valid = ps.cos_mean > 0.5;
    return d;
}

std::string report_to_json(const GateReport& r) {
    std::ostringstream os;
    os << "{\"model\": \"" << io::json_escape(r.model) << "\""
       << ", \"mean_D\": " << io::format_double(r.mean_D)
       << ", \"mean_D2\": " << io::format_double(r.mean_D2)
       << ", \"var_D\": " << io::format_double(r.var_D)
       << ", \"fidelity_plus_x\": " << io::format_double(r.fidelity_plus_x)
       << ", \"fidelity_minus_x\": " << io::format_double(r.fidelity_minus_x)
       << ", \"worst_case_infidelity\": " << io::format_double(r.worst_case_infidelity)
       << ", \"cql_bound\": " << io::format_double(r.cql_bound)
       << ", \"intensity_term\": "
       << (r.decomposition_valid ? io::format_double(r.intensity_term) : "null")
       << ", \"phase_term\": "
       << (r.decomposition_valid ? io::format_double(r.phase_term) : "null")
       << ", \"target_sign\": " << r.target_sign << ", \"nbar\": " << io::format_double(r.nbar)
       << ", \"var_n\": " << io::format_double(r.var_n)
       << ", \"var_l2\": " << io::format_double(r.var_l2)
       << ", \"t_star\": " << io::format_double(r.t_star)
       << ", \"saturation_ratio\": " << io::format_double(r.saturation_ratio)
       << ", \"leakage\": " << io::format_double(r.leakage)
       << ", \"scan_converged\": " << (r.scan_converged ? "true" : "false") << "}";
    return os.str();
}

} // namespace cql::metrics

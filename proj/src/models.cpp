// models.cpp — Hamiltonian and conserved-quantity builders

#include "cqlbench/models.hpp"

#include <cmath>
#include <stdexcept>

namespace cql::models {

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::Jc: return "jc";
        case Kind::Multimode: return "multimode";
        case Kind::Raman: return "raman";
        case Kind::FnFamily: return "fnfamily";
        case Kind::Phase: return "phase";
    }
    return "?";
}

Kind kind_from_name(const std::string& name) {
    if (name == "jc") return Kind::Jc;
    if (name == "multimode") return Kind::Multimode;
    if (name == "raman") return Kind::Raman;
    if (name == "fnfamily") return Kind::FnFamily;
    if (name == "phase") return Kind::Phase;
    throw std::invalid_argument("unknown model kind: " + name);
}

std::size_t ModelSpec::field_dim() const {
    std::size_t d = 1;
    for (std::size_t c : cutoffs) d *= c;
    return d;
}

double ModelSpec::detuning(std::size_t mode) const {
    return mode < detunings.size() ? detunings[mode] : 0.0;
}

double ModelSpec::coupling(std::size_t mode) const {
    if (kind == Kind::Multimode || kind == Kind::Raman) return couplings.at(mode);
    return g;
}

ModelSpec ModelSpec::jc(std::size_t cutoff, double g, double delta) {
    ModelSpec m;
    m.kind = Kind::Jc;
    m.g = g;
    m.cutoffs = {cutoff};
    if (delta != 0.0) m.detunings = {delta};
    validate(m);
    return m;
}

ModelSpec ModelSpec::phase(std::size_t cutoff, double g) {
    ModelSpec m;
    m.kind = Kind::Phase;
    m.g = g;
    m.cutoffs = {cutoff};
    validate(m);
    return m;
}

ModelSpec ModelSpec::fn_family(std::size_t cutoff, std::vector<double> fn, double g) {
    ModelSpec m;
    m.kind = Kind::FnFamily;
    m.g = g;
    m.fn = std::move(fn);
    m.cutoffs = {cutoff};
    validate(m);
    return m;
}

ModelSpec ModelSpec::multimode(std::vector<std::size_t> cutoffs, std::vector<double> couplings,
                               std::vector<double> detunings) {
    ModelSpec m;
    m.kind = Kind::Multimode;
    m.g = couplings.empty() ? 1.0 : couplings.front();
    m.cutoffs = std::move(cutoffs);
    m.couplings = std::move(couplings);
    m.detunings = std::move(detunings);
    validate(m);
    return m;
}

ModelSpec ModelSpec::raman(std::size_t cutoff_a, std::size_t cutoff_b, double g_a, double g_b,
                           double delta_1, double delta_2) {
    ModelSpec m;
    m.kind = Kind::Raman;
    m.atom_dim = 3;
    m.g = g_a;
    m.cutoffs = {cutoff_a, cutoff_b};
    m.couplings = {g_a, g_b};
    if (delta_1 != 0.0 || delta_2 != 0.0) m.detunings = {delta_1, delta_2};
    validate(m);
    return m;
}

void validate(const ModelSpec& m) {
    if (m.cutoffs.empty()) throw std::invalid_argument("model: at least one mode required");
    for (std::size_t c : m.cutoffs)
        if (c < 2) throw std::invalid_argument("model: cutoffs must be >= 2");
    if ((m.kind == Kind::Raman) != (m.atom_dim == 3))
        throw std::invalid_argument("model: atom_dim must be 3 exactly for the Raman kind");
    if (m.kind == Kind::Raman && m.cutoffs.size() != 2)
        throw std::invalid_argument("model: Raman requires two modes");
    if (m.kind == Kind::Multimode) {
        if (m.cutoffs.size() < 1 || m.cutoffs.size() > 3)
            throw std::invalid_argument("model: multimode supports 1 to 3 modes directly");
        if (m.couplings.size() != m.cutoffs.size())
            throw std::invalid_argument("model: one coupling per mode required");
        for (double gk : m.couplings)
            if (gk < 0.0) throw std::invalid_argument("model: couplings must be >= 0");
        bool any = false;
        for (double gk : m.couplings) any = any || gk > 0.0;
        if (!any) throw std::invalid_argument("model: at least one coupling must be positive");
    } else if (m.kind == Kind::Raman) {
        for (double gk : m.couplings)
            if (gk <= 0.0) throw std::invalid_argument("model: couplings must be positive");
    } else {
        if (m.cutoffs.size() != 1)
            throw std::invalid_argument("model: single-mode kind with multiple cutoffs");
        if (m.g <= 0.0) throw std::invalid_argument("model: g must be positive");
    }
    if (m.kind == Kind::FnFamily && m.fn.size() + 1 < m.cutoffs[0])
        throw std::invalid_argument("model: fn must provide cutoff-1 ladder weights");
    if (m.joint_dim() > max_state_dim())
        throw capacity_error("model: joint dimension " + std::to_string(m.joint_dim()) +
                             " exceeds cap " + std::to_string(max_state_dim()));
}

std::vector<double> jc_fn(std::size_t cutoff) {
    std::vector<double> fn(cutoff > 0 ? cutoff - 1 : 0);
    for (std::size_t n = 0; n + 1 < cutoff; ++n) fn[n] = std::sqrt(static_cast<double>(n + 1));
    return fn;
}

std::vector<double> unit_fn(std::size_t cutoff) {
    return std::vector<double>(cutoff > 0 ? cutoff - 1 : 0, 1.0);
}

namespace {

// Single-mode ladder kinds share one coupling pattern:
// <e,n|H|g,n+1> = i g f_n, with f_n = sqrt(n+1) for Jc.
std::vector<double> ladder_weights(const ModelSpec& m) {
    switch (m.kind) {
        case Kind::Jc: return jc_fn(m.cutoffs[0]);
        case Kind::Phase: return unit_fn(m.cutoffs[0]);
        case Kind::FnFamily: return m.fn;
        default: throw std::logic_error("ladder_weights: not a single-mode ladder kind");
    }
}

} // namespace

HamiltonianTerms hamiltonian_terms(const ModelSpec& m) {
    validate(m);
    HamiltonianTerms h;
    h.dim = m.joint_dim();
    h.diag.assign(h.dim, 0.0);

    const std::size_t fdim = m.field_dim();
    switch (m.kind) {
        case Kind::Jc:
        case Kind::Phase:
        case Kind::FnFamily: {
            const std::size_t n_cut = m.cutoffs[0];
            const double delta = m.detuning(0);
            const auto fn = ladder_weights(m);
            for (std::size_t n = 0; n < n_cut; ++n) {
                h.diag[0 * fdim + n] = delta * static_cast<double>(n);
                h.diag[1 * fdim + n] = delta * static_cast<double>(n);
            }
            for (std::size_t n = 0; n + 1 < n_cut; ++n)
                h.couplings.push_back({1 * fdim + n, 0 * fdim + (n + 1), ops::kI * m.g * fn[n]});
            break;
        }
        case Kind::Multimode: {
            const std::size_t modes = m.mode_count();
            std::vector<std::size_t> stride(modes, 1);
            for (std::size_t k = modes; k-- > 1;) stride[k - 1] = stride[k] * m.cutoffs[k];
            for (std::size_t f = 0; f < fdim; ++f) {
                double d = 0.0;
                std::size_t rem = f;
                for (std::size_t k = 0; k < modes; ++k) {
                    const std::size_t nk = rem / stride[k];
                    rem %= stride[k];
                    d += m.detuning(k) * static_cast<double>(nk);
                }
                h.diag[0 * fdim + f] = d;
                h.diag[1 * fdim + f] = d;
            }
            for (std::size_t f = 0; f < fdim; ++f) {
                std::size_t rem = f;
                for (std::size_t k = 0; k < modes; ++k) {
                    const std::size_t nk = rem / stride[k];
                    rem %= stride[k];
                    if (nk + 1 < m.cutoffs[k] && m.couplings[k] > 0.0)
                        h.couplings.push_back({1 * fdim + f, 0 * fdim + (f + stride[k]),
                                               ops::kI * m.couplings[k] *
                                                   std::sqrt(static_cast<double>(nk + 1))});
                }
            }
            break;
        }
        case Kind::Raman: {
            const std::size_t na_cut = m.cutoffs[0], nb_cut = m.cutoffs[1];
            const double ga = m.couplings[0], gb = m.couplings[1];
            const double d1 = m.detuning(0), d2 = m.detuning(1);
            auto fidx = [nb_cut](std::size_t na, std::size_t nb) { return na * nb_cut + nb; };
            for (std::size_t na = 0; na < na_cut; ++na)
                for (std::size_t nb = 0; nb < nb_cut; ++nb) {
                    const double d = d1 * static_cast<double>(na) + d2 * static_cast<double>(nb);
                    for (std::size_t atom = 0; atom < 3; ++atom)
                        h.diag[atom * fdim + fidx(na, nb)] = d;
                }
            // <e,na,nb|H|g1,na+1,nb> = i g_a sqrt(na+1)
            // <e,na,nb|H|g2,na,nb+1> = i g_b sqrt(nb+1)
            for (std::size_t na = 0; na < na_cut; ++na)
                for (std::size_t nb = 0; nb < nb_cut; ++nb) {
                    if (na + 1 < na_cut)
                        h.couplings.push_back({2 * fdim + fidx(na, nb),
                                               0 * fdim + fidx(na + 1, nb),
                                               ops::kI * ga * std::sqrt(static_cast<double>(na + 1))});
                    if (nb + 1 < nb_cut)
                        h.couplings.push_back({2 * fdim + fidx(na, nb),
                                               1 * fdim + fidx(na, nb + 1),
                                               ops::kI * gb * std::sqrt(static_cast<double>(nb + 1))});
                }
            break;
        }
    }
    return h;
}

Matrix build_hamiltonian(const ModelSpec& m) {
    const auto terms = hamiltonian_terms(m);
    if (terms.dim > kMaxOperatorDim)
        throw capacity_error("build_hamiltonian: dimension " + std::to_string(terms.dim) +
                             " exceeds operator cap " + std::to_string(kMaxOperatorDim));
    Matrix h = Matrix::Zero(static_cast<Eigen::Index>(terms.dim),
                            static_cast<Eigen::Index>(terms.dim));
    for (std::size_t i = 0; i < terms.dim; ++i)
        h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = terms.diag[i];
    for (const auto& c : terms.couplings) {
        h(static_cast<Eigen::Index>(c.i), static_cast<Eigen::Index>(c.j)) = c.v;
        h(static_cast<Eigen::Index>(c.j), static_cast<Eigen::Index>(c.i)) = std::conj(c.v);
    }
    return h;
}

ConservedQuantity conserved_quantity(const ModelSpec& m) {
    validate(m);
    ConservedQuantity q;

    if (m.atom_dim == 2) {
        q.l1 = ops::sigma_z();
    } else {
        q.l1 = Matrix::Zero(3, 3);
        q.l1(0, 0) = 1.0;
        q.l1(1, 1) = -1.0;
    }

    switch (m.kind) {
        case Kind::Jc:
        case Kind::Phase:
        case Kind::FnFamily:
            q.l2 = -2.0 * ops::number_op(m.cutoffs[0]);
            break;
        case Kind::Multimode: {
            Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(m.field_dim()),
                                      static_cast<Eigen::Index>(m.field_dim()));
            for (std::size_t k = 0; k < m.mode_count(); ++k) {
                Matrix nk = ops::identity(1);
                for (std::size_t j = 0; j < m.mode_count(); ++j)
                    nk = ops::tensor(nk, j == k ? ops::number_op(m.cutoffs[j])
                                                : ops::identity(m.cutoffs[j]));
                sum += nk;
            }
            q.l2 = -2.0 * sum;
            break;
        }
        case Kind::Raman:
            q.l2 = ops::tensor(ops::identity(m.cutoffs[0]), ops::number_op(m.cutoffs[1])) -
                   ops::tensor(ops::number_op(m.cutoffs[0]), ops::identity(m.cutoffs[1]));
            break;
    }

    q.total = ops::tensor(q.l1, ops::identity(m.field_dim())) +
              ops::tensor(ops::identity(m.atom_dim), q.l2);
    return q;
}

std::vector<long long> l_diagonal(const ModelSpec& m) {
    validate(m);
    const std::size_t fdim = m.field_dim();
    std::vector<long long> diag(m.joint_dim());

    std::vector<long long> atom_val;
    if (m.atom_dim == 2) atom_val = {1, -1};
    else atom_val = {1, -1, 0};

    // Field part per flat field index.
    std::vector<long long> field_val(fdim, 0);
    if (m.kind == Kind::Raman) {
        const std::size_t nb_cut = m.cutoffs[1];
        for (std::size_t f = 0; f < fdim; ++f) {
            const long long na = static_cast<long long>(f / nb_cut);
            const long long nb = static_cast<long long>(f % nb_cut);
            field_val[f] = nb - na;
        }
    } else {
        const std::size_t modes = m.mode_count();
        std::vector<std::size_t> stride(modes, 1);
        for (std::size_t k = modes; k-- > 1;) stride[k - 1] = stride[k] * m.cutoffs[k];
        for (std::size_t f = 0; f < fdim; ++f) {
            long long total_n = 0;
            std::size_t rem = f;
            for (std::size_t k = 0; k < modes; ++k) {
                total_n += static_cast<long long>(rem / stride[k]);
                rem %= stride[k];
            }
            field_val[f] = -2 * total_n;
        }
    }

    for (std::size_t atom = 0; atom < m.atom_dim; ++atom)
        for (std::size_t f = 0; f < fdim; ++f)
            diag[atom * fdim + f] = atom_val[atom] + field_val[f];
    return diag;
}

double cql_bound(double var_l2) {
    if (var_l2 < 0.0) throw std::invalid_argument("cql_bound: variance must be >= 0");
    return 0.25 / (1.0 + var_l2);
}

double bound_inputs(const ModelSpec& m, const std::vector<fock::FieldState>& fields) {
    validate(m);
    if (fields.size() != m.mode_count())
        throw std::invalid_argument("bound_inputs: expected " + std::to_string(m.mode_count()) +
                                    " field states, got " + std::to_string(fields.size()));
    for (std::size_t k = 0; k < fields.size(); ++k)
        if (fields[k].cutoff != m.cutoffs[k])
            throw std::invalid_argument("bound_inputs: field cutoff mismatch on mode " +
                                        std::to_string(k));
    switch (m.kind) {
        case Kind::Jc:
        case Kind::Phase:
        case Kind::FnFamily:
            return 4.0 * fock::number_stats(fields[0]).var_n;
        case Kind::Multimode: {
            double sum = 0.0;
            for (const auto& f : fields) sum += fock::number_stats(f).var_n;
            return 4.0 * sum;
        }
        case Kind::Raman:
            return fock::number_stats(fields[0]).var_n + fock::number_stats(fields[1]).var_n;
    }
    return 0.0;
}

} // namespace cql::models

// fock.cpp — field state construction and statistics

#include "cqlbench/fock.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cqlbench/io.hpp"

namespace cql::fock {

namespace {

void check_normalized(FieldState& s) {
    const double norm = s.coeffs.norm();
    if (norm <= 0.0) throw std::invalid_argument("field state has zero norm");
    s.coeffs /= norm;
}

} // namespace

std::size_t auto_cutoff(double abs_alpha) {
    const double nbar = abs_alpha * abs_alpha;
    return static_cast<std::size_t>(std::ceil(nbar + 8.0 * abs_alpha + 12.0));
}

FieldState coherent_state(Complex alpha) {
    return coherent_state(alpha, auto_cutoff(std::abs(alpha)));
}

FieldState coherent_state(Complex alpha, std::size_t cutoff) {
    if (cutoff < 1) throw std::invalid_argument("coherent_state: cutoff must be >= 1");
    const double aa = std::abs(alpha);
    const double nbar = aa * aa;
    const bool is_auto = (cutoff == auto_cutoff(aa));

    FieldState s;
    s.cutoff = cutoff;
    s.coeffs = Vector::Zero(static_cast<Eigen::Index>(cutoff));
    s.cutoff_warning = !is_auto && nbar > 0.5 * static_cast<double>(cutoff);

    if (aa == 0.0) {
        s.coeffs(0) = 1.0;
        s.truncation_leak = 0.0;
        return s;
    }

    // Log-space amplitudes: log|C_n| = -nbar/2 + n log|alpha| - lgamma(n+1)/2,
    // phase n*arg(alpha). Avoids factorial overflow and C_0 underflow at
    // large nbar (tail terms that underflow to zero are genuinely negligible).
    const double theta = std::arg(alpha);
    const double log_a = std::log(aa);
    double kept_mass = 0.0;
    for (std::size_t n = 0; n < cutoff; ++n) {
        const double logc = -0.5 * nbar + static_cast<double>(n) * log_a -
                            0.5 * std::lgamma(static_cast<double>(n) + 1.0);
        const double mag = std::exp(logc);
        kept_mass += mag * mag;
        s.coeffs(static_cast<Eigen::Index>(n)) =
            mag * std::exp(Complex(0.0, theta * static_cast<double>(n)));
    }
    s.truncation_leak = std::max(0.0, 1.0 - kept_mass);
    if (is_auto && s.truncation_leak > 1e-10)
        throw std::runtime_error("coherent_state: auto cutoff leak above 1e-10");
    check_normalized(s);
    return s;
}

FieldState fock_state(std::size_t n, std::size_t cutoff) {
    if (cutoff < 1) throw std::invalid_argument("fock_state: cutoff must be >= 1");
    if (n >= cutoff) throw std::out_of_range("fock_state: n must be < cutoff");
    FieldState s;
    s.cutoff = cutoff;
    s.coeffs = Vector::Zero(static_cast<Eigen::Index>(cutoff));
    s.coeffs(static_cast<Eigen::Index>(n)) = 1.0;
    return s;
}

FieldState custom_state(const std::vector<Complex>& coeffs, std::size_t cutoff) {
    if (cutoff < 1) throw std::invalid_argument("custom_state: cutoff must be >= 1");
    if (coeffs.size() > cutoff)
        throw std::invalid_argument("custom_state: more coefficients than cutoff");
    FieldState s;
    s.cutoff = cutoff;
    s.coeffs = Vector::Zero(static_cast<Eigen::Index>(cutoff));
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        s.coeffs(static_cast<Eigen::Index>(n)) = coeffs[n];
    check_normalized(s);  // throws on all-zero input
    return s;
}

NumberStats number_stats(const FieldState& s) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t n = 0; n < s.cutoff; ++n) {
        const double p = std::norm(s.coeffs(static_cast<Eigen::Index>(n)));
        m1 += static_cast<double>(n) * p;
        m2 += static_cast<double>(n) * static_cast<double>(n) * p;
    }
    return NumberStats{m1, std::max(0.0, m2 - m1 * m1)};
}

PhaseStats phase_stats(const FieldState& s) {
    Complex e(0.0, 0.0);
    for (std::size_t n = 0; n + 1 < s.cutoff; ++n)
        e += std::conj(s.coeffs(static_cast<Eigen::Index>(n))) *
             s.coeffs(static_cast<Eigen::Index>(n + 1));
    return PhaseStats{e.real(), e.imag(), 2.0 * (1.0 - e.real())};
}

std::string to_json(const FieldState& s) {
    std::string out = "{\"cutoff\": " + std::to_string(s.cutoff) +
                      ", \"truncation_leak\": " + io::format_double(s.truncation_leak) +
                      ", \"coeffs\": [";
    for (std::size_t n = 0; n < s.cutoff; ++n) {
        if (n) out += ", ";
        const Complex c = s.coeffs(static_cast<Eigen::Index>(n));
        out += "[" + io::format_double(c.real()) + ", " + io::format_double(c.imag()) + "]";
    }
    out += "]}";
    return out;
}

FieldState field_state_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    std::vector<Complex> coeffs;
    for (const auto& pair : j.at("coeffs"))
        coeffs.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    const std::size_t cutoff = j.contains("cutoff") ? j.at("cutoff").get<std::size_t>()
                                                    : coeffs.size();
    return custom_state(coeffs, cutoff);
}

} // namespace cql::fock

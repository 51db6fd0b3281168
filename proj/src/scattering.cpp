#include "mazer/scattering.hpp"

#include <cmath>
#include <cstdlib>

namespace mazer {

namespace {

constexpr double kBranchPointThreshold = 1e-8; // on |q^2| * width^2
constexpr double kRescaleLimit = 1e150;

struct Mat2 {
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
};

// Left-multiply the running product by one slice matrix [c, st; -q2*st, c].
inline void apply_slice(Mat2& m, double c, double st, double q2) {
    const double b21 = -q2 * st;
    const double n11 = c * m.a11 + st * m.a21;
    const double n12 = c * m.a12 + st * m.a22;
    const double n21 = b21 * m.a11 + c * m.a21;
    const double n22 = b21 * m.a12 + c * m.a22;
    m = {n11, n12, n21, n22};
}

// (psi, psi') propagation across one constant slice of width w with
// q^2 = q2, scaled by e^{-s} (s returned) so evanescent growth never
// overflows. Entries are even in q, so only q2 enters.
inline void slice_factors(double q2, double w, double& c, double& st, double& s) {
    const double x = q2 * w * w;
    s = 0.0;
    if (std::fabs(x) < kBranchPointThreshold) {
        c = 1.0 - x / 2.0 + x * x / 24.0;
        st = w * (1.0 - x / 6.0 + x * x / 120.0);
    } else if (q2 > 0.0) {
        const double q = std::sqrt(q2);
        c = std::cos(q * w);
        st = std::sin(q * w) / q;
    } else {
        const double beta = std::sqrt(-q2);
        const double e = std::exp(-2.0 * beta * w);
        c = 0.5 * (1.0 + e);
        st = (1.0 - e) / (2.0 * beta);
        s = beta * w;
    }
}

struct RawAmplitudes {
    Complex r, t;
};

// Compose the full transfer matrix over midpoint samples of the potential
// strength*u and convert to (r, t) in the paper convention. z0/z1 bound the
// sampled window; paper_length is the L entering the t e^{ik(z-L)} reference.
RawAmplitudes solve_piecewise(std::span<const double> u, double z0, double z1,
                              double strength, double k, double paper_length) {
    const std::size_t n = u.size();
    const double w = (z1 - z0) / static_cast<double>(n);
    Mat2 m;
    double log_scale = 0.0;

    for (std::size_t j = 0; j < n; ++j) {
        const double q2 = k * k - strength * u[j];
        double c, st, s;
        slice_factors(q2, w, c, st, s);
        apply_slice(m, c, st, q2);
        log_scale += s;

        double mag = std::max(std::max(std::fabs(m.a11), std::fabs(m.a12)),
                              std::max(std::fabs(m.a21), std::fabs(m.a22)));
        if (mag > kRescaleLimit) {
            const double inv = 1.0 / mag;
            m.a11 *= inv;
            m.a12 *= inv;
            m.a21 *= inv;
            m.a22 *= inv;
            log_scale += std::log(mag);
        }
    }

    const Complex i_unit(0.0, 1.0);
    const Complex denom = m.a21 - i_unit * k * (m.a11 + m.a22) - k * k * m.a12;
    const Complex r_local = (i_unit * k * (m.a11 - m.a22) - m.a21 - k * k * m.a12) / denom;
    const Complex t_local = -2.0 * i_unit * k * std::exp(-log_scale) / denom;

    // Shift references: incident/reflected waves are anchored at z = 0,
    // transmitted at z = L; the sampled window may extend beyond [0, L].
    RawAmplitudes out;
    out.r = r_local * std::exp(Complex(0.0, 2.0 * k * z0));
    out.t = t_local * std::exp(Complex(0.0, k * (z0 + paper_length - z1)));
    return out;
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0))
        throw ValidationError(std::string(name) + " must be positive, got "
                              + std::to_string(v));
}

} // namespace

std::string to_string(const ScatterChannel& ch) {
    return "(n=" + std::to_string(ch.n) + ", " + (ch.branch == Branch::Plus ? "+" : "-") + ")";
}

double kappa_n_ratio(int n) {
    if (n < 0)
        throw ValidationError("photon index must be >= 0, got " + std::to_string(n));
    return std::sqrt(std::sqrt(static_cast<double>(n) + 1.0));
}

double channel_strength(const ScatterChannel& ch) {
    if (ch.n < 0)
        throw ValidationError("photon index must be >= 0, got " + std::to_string(ch.n));
    const double s = std::sqrt(static_cast<double>(ch.n) + 1.0);
    return ch.branch == Branch::Plus ? s : -s;
}

double unitarity_defect(const Amplitudes& a) {
    return std::fabs(std::norm(a.r) + std::norm(a.t) - 1.0);
}

void SolverConfig::validate() const {
    if (segments < 2)
        throw ValidationError("segments must be >= 2, got " + std::to_string(segments));
    if (!(support_epsilon > 0.0 && support_epsilon < 1.0))
        throw ValidationError("support_epsilon must lie in (0, 1)");
    if (!(unitarity_tol > 0.0 && unitarity_tol < 1.0))
        throw ValidationError("unitarity_tol must lie in (0, 1)");
}

Amplitudes square_step_amplitudes(double k, double length, double v) {
    require_positive(k, "k");
    require_positive(length, "length");

    const double q2 = k * k - v;
    const Complex i_unit(0.0, 1.0);
    Amplitudes out;
    out.k = k;

    const double x = q2 * length * length;
    if (std::fabs(x) < kBranchPointThreshold) {
        // Branch point k^2 ~ v: series in q^2 (both cos(qL) and sin(qL)/q are
        // even in q, so no square root is needed).
        const double c = 1.0 - x / 2.0 + x * x / 24.0;
        const double st = length * (1.0 - x / 6.0 + x * x / 120.0);
        const Complex denom = 2.0 * k * c - i_unit * (k * k + q2) * st;
        out.t = 2.0 * k / denom;
        out.r = -i_unit * v * st / denom;
        return out;
    }

    const Complex q = std::sqrt(Complex(q2, 0.0)); // real or +i*beta
    const Complex ep = std::exp(i_unit * q * length); // |ep| <= 1, overflow-free
    const Complex ep2 = ep * ep;
    const Complex denom = (k + q) * (k + q) - (k - q) * (k - q) * ep2;
    out.t = 4.0 * k * q * ep / denom;
    out.r = v * (1.0 - ep2) / denom; // k^2 - q^2 = v
    return out;
}

Amplitudes scatter_mesa_analytic(const ScatterChannel& ch, double k, double kappa_L) {
    Amplitudes out = square_step_amplitudes(k, kappa_L, channel_strength(ch));
    out.channel = ch;
    return out;
}

namespace detail {

SlicedProfile slice_profile(const ModeProfile& profile, const SolverConfig& config) {
    config.validate();
    SlicedProfile sliced;
    auto [z0, z1] = profile.effective_support(config.support_epsilon);
    sliced.z0 = z0;
    sliced.z1 = z1;
    sliced.paper_length = profile.length();

    const int n = config.segments;
    sliced.u_coarse.resize(static_cast<std::size_t>(n));
    sliced.u_fine.resize(static_cast<std::size_t>(2 * n));
    const double wc = (z1 - z0) / n;
    const double wf = (z1 - z0) / (2 * n);
    for (int j = 0; j < n; ++j)
        sliced.u_coarse[static_cast<std::size_t>(j)] = profile.eval(z0 + (j + 0.5) * wc);
    for (int j = 0; j < 2 * n; ++j)
        sliced.u_fine[static_cast<std::size_t>(j)] = profile.eval(z0 + (j + 0.5) * wf);
    return sliced;
}

Amplitudes scatter_sliced(const SlicedProfile& sliced, const ScatterChannel& ch, double k,
                          const SolverConfig& config) {
    require_positive(k, "k");
    const double strength = channel_strength(ch);

    const RawAmplitudes coarse =
        solve_piecewise(sliced.u_coarse, sliced.z0, sliced.z1, strength, k, sliced.paper_length);
    const RawAmplitudes fine =
        solve_piecewise(sliced.u_fine, sliced.z0, sliced.z1, strength, k, sliced.paper_length);

    Amplitudes out;
    out.r = fine.r;
    out.t = fine.t;
    out.k = k;
    out.channel = ch;
    out.err_estimate = std::max({std::abs(fine.r - coarse.r), std::abs(fine.t - coarse.t), 1e-14});

    const double defect = unitarity_defect(out);
    if (defect > config.unitarity_tol)
        throw SolverError("flux conservation defect " + std::to_string(defect)
                              + " exceeds tolerance in channel " + to_string(ch)
                              + " at k=" + std::to_string(k),
                          defect);
    return out;
}

} // namespace detail

Amplitudes scatter_transfer_matrix(const ModeProfile& profile, const ScatterChannel& ch,
                                   double k, const SolverConfig& config) {
    const detail::SlicedProfile sliced = detail::slice_profile(profile, config);
    return detail::scatter_sliced(sliced, ch, k, config);
}

Amplitudes scatter(const ModeProfile& profile, const ScatterChannel& ch, double k,
                   const SolverConfig& config) {
    if (profile.kind() == ModeProfile::Kind::Mesa) {
        require_positive(k, "k");
        return scatter_mesa_analytic(ch, k, profile.length());
    }
    return scatter_transfer_matrix(profile, ch, k, config);
}

} // namespace mazer

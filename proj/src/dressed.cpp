#include "mazer/dressed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mazer {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kPureLevelTol = 1e-13;
const double kSqrt2 = std::numbers::sqrt2;
const double kPi = std::numbers::pi;
const double kTwoPi = 2.0 * std::numbers::pi;

double wrap_2pi(double x) {
    x = std::fmod(x, kTwoPi);
    if (x < 0.0)
        x += kTwoPi;
    if (x >= kTwoPi) // -tiny + 2 pi can round up to exactly 2 pi
        x = 0.0;
    return x;
}

double total_norm_sq(const JointState& s) {
    double sum = 0.0;
    for (const Complex& c : s.a)
        sum += std::norm(c);
    for (const Complex& c : s.b)
        sum += std::norm(c);
    return sum;
}

JointState to_joint(const PureStateSpec& state) {
    if (const auto* joint = std::get_if<JointState>(&state)) {
        const double norm = total_norm_sq(*joint);
        if (std::fabs(norm - 1.0) > kNormTol)
            throw ValidationError("joint state not normalized: |psi|^2 = "
                                  + std::to_string(norm));
        return *joint;
    }
    const auto& p = std::get<ProductState>(state);
    const double atom_norm = std::norm(p.c_a) + std::norm(p.c_b);
    if (std::fabs(atom_norm - 1.0) > kNormTol)
        throw ValidationError("atomic state not normalized: |c_a|^2+|c_b|^2 = "
                              + std::to_string(atom_norm));
    double field_norm = 0.0;
    for (const Complex& f : p.field)
        field_norm += std::norm(f);
    if (std::fabs(field_norm - 1.0) > kNormTol)
        throw ValidationError("field state not normalized: sum |f_n|^2 = "
                              + std::to_string(field_norm));
    JointState joint;
    joint.a.reserve(p.field.size());
    joint.b.reserve(p.field.size());
    for (const Complex& f : p.field) {
        joint.a.push_back(p.c_a * f);
        joint.b.push_back(p.c_b * f);
    }
    return joint;
}

Complex coeff(const std::vector<Complex>& v, std::size_t i) {
    return i < v.size() ? v[i] : Complex(0.0, 0.0);
}

} // namespace

double DressedCoordinates::norm_sq() const {
    double sum = w_minus1 * w_minus1;
    for (const DressedEntry& e : entries)
        sum += e.w * e.w;
    return sum;
}

int DressedCoordinates::highest_occupied(double cutoff) const {
    for (int n = static_cast<int>(entries.size()) - 1; n >= 0; --n)
        if (entries[static_cast<std::size_t>(n)].w > cutoff)
            return n;
    return -1;
}

double half_angle_cos(double theta) {
    if (theta == 0.0)
        return 1.0;
    if (theta == kPi)
        return 0.0;
    return std::cos(0.5 * theta);
}

double half_angle_sin(double theta) {
    if (theta == 0.0)
        return 0.0;
    if (theta == kPi)
        return 1.0;
    return std::sin(0.5 * theta);
}

double sin_theta(double theta) {
    if (theta == 0.0 || theta == kPi)
        return 0.0;
    return std::sin(theta);
}

DressedCoordinates to_dressed_coordinates(const PureStateSpec& state) {
    JointState joint = to_joint(state);

    // Fix the global phase so <b,0|psi> is real nonnegative (chi_-1 = 0).
    const Complex b0 = coeff(joint.b, 0);
    if (std::abs(b0) > 0.0) {
        const Complex rot = std::conj(b0) / std::abs(b0);
        for (Complex& c : joint.a)
            c *= rot;
        for (Complex& c : joint.b)
            c *= rot;
    }

    const int n_max = std::max(static_cast<int>(joint.a.size()) - 1,
                               static_cast<int>(joint.b.size()) - 2);

    DressedCoordinates coords;
    coords.w_minus1 = std::abs(coeff(joint.b, 0));
    coords.entries.resize(static_cast<std::size_t>(std::max(n_max + 1, 0)));
    for (int n = 0; n <= n_max; ++n) {
        const Complex cp = (coeff(joint.a, static_cast<std::size_t>(n))
                            + coeff(joint.b, static_cast<std::size_t>(n) + 1)) / kSqrt2;
        const Complex cm = (coeff(joint.a, static_cast<std::size_t>(n))
                            - coeff(joint.b, static_cast<std::size_t>(n) + 1)) / kSqrt2;
        DressedEntry& e = coords.entries[static_cast<std::size_t>(n)];
        const double ap = std::abs(cp);
        const double am = std::abs(cm);
        e.w = std::hypot(ap, am);
        if (e.w == 0.0)
            continue; // degenerate: all angles stay 0
        // A component below relative rounding noise is treated as absent;
        // otherwise chi/phi would be read off a cancellation speck.
        if (am <= kPureLevelTol * ap) { // theta = 0
            e.theta = 0.0;
            e.chi = wrap_2pi(std::arg(cp));
        } else if (ap <= kPureLevelTol * am) { // theta = pi
            e.theta = kPi;
            e.chi = wrap_2pi(std::arg(cm));
        } else {
            e.theta = 2.0 * std::atan2(am, ap);
            e.chi = wrap_2pi(std::arg(cp));
            e.phi = wrap_2pi(std::arg(cp) - std::arg(cm));
        }
    }
    return coords;
}

PureStateSpec from_dressed_coordinates(const DressedCoordinates& coords) {
    if (!(coords.w_minus1 >= 0.0 && coords.w_minus1 <= 1.0))
        throw ValidationError("w_minus1 out of [0, 1]");
    for (std::size_t n = 0; n < coords.entries.size(); ++n) {
        const DressedEntry& e = coords.entries[n];
        if (!(e.w >= 0.0 && e.w <= 1.0))
            throw ValidationError("w_" + std::to_string(n) + " out of [0, 1]");
        if (!(e.theta >= 0.0 && e.theta <= kPi))
            throw ValidationError("theta_" + std::to_string(n) + " out of [0, pi]");
        if (!(e.chi >= 0.0 && e.chi < kTwoPi) || !(e.phi >= 0.0 && e.phi < kTwoPi))
            throw ValidationError("phase of entry " + std::to_string(n)
                                  + " out of [0, 2 pi)");
        if (e.w == 0.0 && (e.theta != 0.0 || e.chi != 0.0 || e.phi != 0.0))
            throw ValidationError("entry " + std::to_string(n)
                                  + " violates the degenerate-angle convention (w = 0)");
        if ((e.theta == 0.0 || e.theta == kPi) && e.phi != 0.0)
            throw ValidationError("entry " + std::to_string(n)
                                  + " violates the degenerate-angle convention (theta)");
    }
    const double norm = coords.norm_sq();
    if (std::fabs(norm - 1.0) > kNormTol)
        throw ValidationError("coordinates not normalized: total = " + std::to_string(norm));

    JointState joint;
    const std::size_t levels = coords.entries.size();
    joint.a.assign(levels, Complex(0.0, 0.0));
    joint.b.assign(levels + 1, Complex(0.0, 0.0));
    joint.b[0] = coords.w_minus1;
    for (std::size_t n = 0; n < levels; ++n) {
        const DressedEntry& e = coords.entries[n];
        if (e.w == 0.0)
            continue;
        const Complex cp = e.w * std::polar(1.0, e.chi) * half_angle_cos(e.theta);
        const Complex cm = e.w * std::polar(1.0, e.chi - e.phi) * half_angle_sin(e.theta);
        joint.a[n] = (cp + cm) / kSqrt2;
        joint.b[n + 1] = (cp - cm) / kSqrt2;
    }
    return joint;
}

int truncation_level(double gamma_abs, double epsilon_tail) {
    if (!(gamma_abs >= 0.0 && gamma_abs < 1.0))
        throw ValidationError("|gamma| must lie in [0, 1), got " + std::to_string(gamma_abs));
    if (!(epsilon_tail > 0.0 && epsilon_tail < 1.0))
        throw ValidationError("epsilon_tail must lie in (0, 1)");
    if (gamma_abs == 0.0)
        return 0;
    // Exact geometric tail beyond n_max: sum_{n > m} w_n^2 =
    // 2 |g|^{2(m+2)} / (1 + |g|^2).
    const double g2 = gamma_abs * gamma_abs;
    const double bound = epsilon_tail * (1.0 + g2) / 2.0;
    int m = 0;
    double tail = g2 * g2; // |g|^{2(m+2)} at m = 0
    while (tail >= bound) {
        tail *= g2;
        ++m;
    }
    return m;
}

DressedCoordinates trapping_state(const TrappingParam& p, double epsilon_tail) {
    const double g = std::abs(p.gamma);
    if (!(g < 1.0))
        throw ValidationError("|gamma| must be < 1, got " + std::to_string(g));
    const double phase = std::arg(p.gamma);
    const int n_max = truncation_level(g, epsilon_tail);

    DressedCoordinates coords;
    coords.w_minus1 = std::sqrt((1.0 - g * g) / (1.0 + g * g));
    coords.entries.resize(static_cast<std::size_t>(n_max) + 1);
    double gn = g; // |g|^{n+1}
    for (int n = 0; n <= n_max; ++n) {
        DressedEntry& e = coords.entries[static_cast<std::size_t>(n)];
        e.w = coords.w_minus1 * kSqrt2 * gn;
        if (e.w > 0.0) {
            // Branch + occupies only |+,n> (theta = 0); branch - only |-,n>
            // (theta = pi). The extra pi in chi absorbs the overall sign that
            // makes the |b,0> component positive.
            e.theta = p.branch == Branch::Plus ? 0.0 : kPi;
            const double base = (n + 1) * phase;
            e.chi = wrap_2pi(p.branch == Branch::Plus ? base : base + kPi);
        }
        gn *= g;
    }

    const double scale = 1.0 / std::sqrt(coords.norm_sq());
    coords.w_minus1 *= scale;
    for (DressedEntry& e : coords.entries)
        e.w *= scale;
    return coords;
}

ProductState trapping_product_state(const TrappingParam& p, int n_max) {
    const double g = std::abs(p.gamma);
    if (!(g < 1.0))
        throw ValidationError("|gamma| must be < 1, got " + std::to_string(g));
    ProductState s;
    const double atom_scale = 1.0 / std::sqrt(1.0 + g * g);
    s.c_a = p.gamma * atom_scale;
    s.c_b = (p.branch == Branch::Plus ? 1.0 : -1.0) * atom_scale;
    s.field.resize(static_cast<std::size_t>(n_max) + 1);
    Complex gn(1.0, 0.0);
    double norm = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        s.field[static_cast<std::size_t>(n)] = gn;
        norm += std::norm(gn);
        gn *= p.gamma;
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (Complex& f : s.field)
        f *= scale;
    return s;
}

} // namespace mazer

#pragma once

#include <optional>
#include <utility>
#include <variant>

#include "mazer/errors.hpp"
#include "mazer/expr.hpp"

namespace mazer {

/// Dimensionless cavity mode function u(z). Positions and lengths are in
/// units of 1/kappa, so a profile is fully described by its shape parameters
/// and the interaction length kappa*L.
///
/// Shapes:
///   Mesa        u = 1 on [0, L], 0 elsewhere
///   Sech2       u = sech^2((z - L/2)/width), peak 1 at the cavity center
///   Gaussian    u = exp(-(z - L/2)^2 / (2 sigma^2)), peak 1 at the center
///   Sinusoidal  u = sin(m pi z / L) on [0, L], 0 elsewhere
///   Custom      parsed expression in z, pi, L; hard-clipped to 0 outside [0, L]
///
/// Profiles are immutable values; eval() is pure and thread-safe.
class ModeProfile {
public:
    enum class Kind { Mesa, Sech2, Gaussian, Sinusoidal, Custom };

    static ModeProfile mesa(double kappa_L);
    static ModeProfile sech2(double width, double kappa_L);
    static ModeProfile gaussian(double sigma, double kappa_L);
    static ModeProfile sinusoidal(int lobes, double kappa_L);
    static ModeProfile custom(ExpressionTree expr, double kappa_L);

    /// u(z). Exactly 0 outside [0, L] for the compactly supported shapes.
    /// Custom-expression evaluation failures are rethrown with the position
    /// appended to the message.
    double eval(double z) const;

    /// Smallest interval of the form [-d, L+d] outside which |u| < epsilon.
    /// Compact shapes return exactly [0, L]; for Sech2/Gaussian d is the
    /// analytic decay distance of the peak-normalized tail.
    std::pair<double, double> effective_support(double epsilon) const;

    Kind kind() const { return kind_; }
    double length() const { return kappa_L_; }

    /// Shape parameter: width for Sech2, sigma for Gaussian. Throws for
    /// other kinds.
    double width() const;
    /// Lobe count m for Sinusoidal. Throws for other kinds.
    int lobes() const;
    /// Expression for Custom. Throws for other kinds.
    const ExpressionTree& expression() const;

private:
    ModeProfile(Kind kind, double kappa_L) : kind_(kind), kappa_L_(kappa_L) {}

    Kind kind_;
    double kappa_L_;
    double width_ = 0.0; // Sech2 width or Gaussian sigma
    int lobes_ = 0;
    std::optional<ExpressionTree> expr_;
};

} // namespace mazer

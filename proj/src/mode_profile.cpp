#include "mazer/mode_profile.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mazer {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0))
        throw ValidationError(std::string(name) + " must be positive, got "
                              + std::to_string(v));
}

} // namespace

ModeProfile ModeProfile::mesa(double kappa_L) {
    require_positive(kappa_L, "kappa_L");
    return ModeProfile(Kind::Mesa, kappa_L);
}

ModeProfile ModeProfile::sech2(double width, double kappa_L) {
    require_positive(kappa_L, "kappa_L");
    require_positive(width, "width");
    ModeProfile p(Kind::Sech2, kappa_L);
    p.width_ = width;
    return p;
}

ModeProfile ModeProfile::gaussian(double sigma, double kappa_L) {
    require_positive(kappa_L, "kappa_L");
    require_positive(sigma, "sigma");
    ModeProfile p(Kind::Gaussian, kappa_L);
    p.width_ = sigma;
    return p;
}

ModeProfile ModeProfile::sinusoidal(int lobes, double kappa_L) {
    require_positive(kappa_L, "kappa_L");
    if (lobes < 1)
        throw ValidationError("lobes must be >= 1, got " + std::to_string(lobes));
    ModeProfile p(Kind::Sinusoidal, kappa_L);
    p.lobes_ = lobes;
    return p;
}

ModeProfile ModeProfile::custom(ExpressionTree expr, double kappa_L) {
    require_positive(kappa_L, "kappa_L");
    ModeProfile p(Kind::Custom, kappa_L);
    p.expr_ = std::move(expr);
    return p;
}

double ModeProfile::eval(double z) const {
    const double L = kappa_L_;
    switch (kind_) {
        case Kind::Mesa:
            return (z >= 0.0 && z <= L) ? 1.0 : 0.0;
        case Kind::Sech2: {
            double x = (z - 0.5 * L) / width_;
            double s = 1.0 / std::cosh(x);
            return s * s;
        }
        case Kind::Gaussian: {
            double d = z - 0.5 * L;
            return std::exp(-d * d / (2.0 * width_ * width_));
        }
        case Kind::Sinusoidal:
            if (z < 0.0 || z > L)
                return 0.0;
            return std::sin(static_cast<double>(lobes_) * std::numbers::pi * z / L);
        case Kind::Custom:
            if (z < 0.0 || z > L)
                return 0.0;
            try {
                return expr_->eval(z, L);
            } catch (const EvalError& e) {
                throw EvalError(std::string(e.what()) + " while evaluating custom profile at z="
                                + std::to_string(z));
            }
    }
    return 0.0;
}

std::pair<double, double> ModeProfile::effective_support(double epsilon) const {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ValidationError("epsilon must lie in (0, 1)");
    const double L = kappa_L_;
    switch (kind_) {
        case Kind::Sech2: {
            // sech^2(d/w) = eps  =>  d = w * acosh(1/sqrt(eps))
            double d = width_ * std::acosh(1.0 / std::sqrt(epsilon));
            return {-d, L + d};
        }
        case Kind::Gaussian: {
            // exp(-d^2 / 2 sigma^2) = eps  =>  d = sigma * sqrt(2 ln(1/eps))
            double d = width_ * std::sqrt(2.0 * std::log(1.0 / epsilon));
            return {-d, L + d};
        }
        default:
            return {0.0, L};
    }
}

double ModeProfile::width() const {
    if (kind_ != Kind::Sech2 && kind_ != Kind::Gaussian)
        throw ValidationError("profile has no width parameter");
    return width_;
}

int ModeProfile::lobes() const {
    if (kind_ != Kind::Sinusoidal)
        throw ValidationError("profile has no lobe count");
    return lobes_;
}

const ExpressionTree& ModeProfile::expression() const {
    if (kind_ != Kind::Custom)
        throw ValidationError("profile has no expression");
    return *expr_;
}

} // namespace mazer

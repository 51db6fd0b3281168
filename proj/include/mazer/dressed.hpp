#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "mazer/errors.hpp"
#include "mazer/scattering.hpp"

namespace mazer {

/// Pure atom-field state as a product of an internal atomic state
/// (c_a |a> + c_b |b>) and a field expansion sum_n f[n] |n>. Atom and field
/// parts must each be normalized to 1 within 1e-12.
struct ProductState {
    Complex c_a;
    Complex c_b;
    std::vector<Complex> field;
};

/// Pure atom-field state with explicit (possibly entangled) coefficients
/// a[n] = <a,n|psi>, b[n] = <b,n|psi>. Total norm 1 within 1e-12.
struct JointState {
    std::vector<Complex> a;
    std::vector<Complex> b;
};

using PureStateSpec = std::variant<ProductState, JointState>;

/// One dressed level: weight w_n over the {|+,n>, |-,n>} pair, mixing angle
/// theta_n in [0, pi], overall phase chi_n and relative phase phi_n in
/// [0, 2 pi). Degenerate-angle convention: w_n = 0 forces all three angles
/// to 0; theta_n in {0, pi} forces phi_n = 0.
struct DressedEntry {
    double w = 0.0;
    double theta = 0.0;
    double chi = 0.0;
    double phi = 0.0;
};

/// Full dressed-state coordinates {w_-1; (w_n, theta_n, chi_n, phi_n)}.
/// The |b,0> phase chi_-1 is fixed to 0, which pins the global phase.
struct DressedCoordinates {
    double w_minus1 = 0.0;
    std::vector<DressedEntry> entries; // index = photon number n

    /// w_-1^2 + sum w_n^2 (must be 1 within 1e-12 for valid coordinates).
    double norm_sq() const;

    /// Largest n with w_n > cutoff, or -1 if none. Sums over dressed levels
    /// stop here; weights below double noise cannot move any observable.
    int highest_occupied(double cutoff = 1e-14) const;
};

/// cos(theta/2), sin(theta/2) and sin(theta), exact at the degenerate
/// endpoints: theta stored as exactly 0 or pi yields exact (1,0)/(0,1)
/// selectors and sin(theta) = 0, so trapping identities hold to the last bit.
double half_angle_cos(double theta);
double half_angle_sin(double theta);
double sin_theta(double theta);

/// Expand a pure state over the dressed basis. The global phase is rotated
/// so the |b,0> component is real nonnegative (chi_-1 = 0); reconstruction
/// via from_dressed_coordinates reproduces the input up to that phase.
DressedCoordinates to_dressed_coordinates(const PureStateSpec& state);

/// Inverse expansion; returns the Joint form. Validates the coordinate
/// invariants (ranges, normalization, degenerate-angle convention).
PureStateSpec from_dressed_coordinates(const DressedCoordinates& coords);

/// Parameter of a perfect trapping state |gamma+-.
struct TrappingParam {
    Complex gamma;
    Branch branch = Branch::Plus;
};

/// Number of dressed levels to keep so the exact geometric tail of
/// sum w_n^2 beyond n_max stays below epsilon_tail.
int truncation_level(double gamma_abs, double epsilon_tail);

/// Dressed coordinates of |gamma+->: w_-1 = sqrt((1-|g|^2)/(1+|g|^2)),
/// w_n = w_-1 sqrt(2) |g|^{n+1}, theta_n = 0 (+) or pi (-), truncated at
/// truncation_level and renormalized. Every entry has sin(theta_n) = 0.
DressedCoordinates trapping_state(const TrappingParam& p, double epsilon_tail = 1e-10);

/// Build the same |gamma+-> through the Product form (atom superposition x
/// coherent-like field), for cross-checks against trapping_state.
ProductState trapping_product_state(const TrappingParam& p, int n_max);

} // namespace mazer

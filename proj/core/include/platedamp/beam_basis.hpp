#pragma once

namespace platedamp {

/// i-th root (i >= 1) of cos(bL) cosh(bL) = 1, i.e. the dimensionless
/// wavenumber bL of the i-th clamped-clamped Euler-Bernoulli beam mode.
double clamped_beam_root(int index);

/// i-th clamped-clamped beam eigenfunction on [0, L], or its first/second
/// derivative. Normalized so that the integral of phi_i phi_j over [0, L]
/// equals L delta_ij.
///
/// Evaluated as e^{-u} - cos u + sigma sin u + eps sinh u with
/// eps = 1 - sigma carried in exponent-shifted form, so the cosh/sinh
/// pair never overflows for large i.
///
/// Throws DomainError when derivative_order is not 0, 1 or 2, or x lies
/// outside [0, L].
double beam_basis_eval(int index, double length, double x, int derivative_order);

/// Antiderivative of beam_basis_eval(index, length, ., 0), fixed so that its
/// differences give exact integrals over sub-intervals.
double beam_basis_antiderivative(int index, double length, double x);

}  // namespace platedamp

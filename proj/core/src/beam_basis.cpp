#include "platedamp/beam_basis.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "platedamp/errors.hpp"

namespace platedamp {

namespace {

constexpr double pi = std::numbers::pi;

// Root of cos(b) - sech(b) in [i pi, (i+1) pi], where the function is
// monotone. Plain bisection reaches full precision in < 64 halvings.
double bisect_root(int index) {
    double lo = index * pi;
    double hi = (index + 1) * pi;
    auto f = [](double b) { return std::cos(b) - 1.0 / std::cosh(b); };
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct ModeConstants {
    double beta_l;   // dimensionless root
    double sigma;
    double g;        // eps * sinh(u) = g * (e^{u - bL} - e^{-u - bL})
};

ModeConstants constants(int index) {
    const double bl = clamped_beam_root(index);
    const double ebl = std::exp(-bl);
    const double s = std::sin(bl);
    const double c = std::cos(bl);
    const double g = (c - s - ebl) / (1.0 - ebl * ebl - 2.0 * s * ebl);
    // sigma = 1 - eps with eps = (cos bL - sin bL - e^{-bL}) / (sinh bL - sin bL) = 2 g e^{-bL}.
    return {bl, 1.0 - 2.0 * g * ebl, g};
}

const ModeConstants& cached_constants(int index) {
    static const auto table = [] {
        std::array<ModeConstants, 64> t{};
        for (int i = 1; i <= 64; ++i) t[i - 1] = constants(i);
        return t;
    }();
    if (index <= 64) return table[index - 1];
    thread_local ModeConstants scratch;
    scratch = constants(index);
    return scratch;
}

void check_args(int index, double length, double x) {
    if (index < 1) throw DomainError("beam basis index must be >= 1");
    if (!(length > 0.0)) throw DomainError("beam length must be > 0");
    if (!(x >= 0.0 && x <= length)) throw DomainError("beam coordinate outside [0, L]");
}

}  // namespace

double clamped_beam_root(int index) {
    if (index < 1) throw DomainError("beam basis index must be >= 1");
    return bisect_root(index);
}

double beam_basis_eval(int index, double length, double x, int derivative_order) {
    if (derivative_order < 0 || derivative_order > 2)
        throw DomainError("beam basis derivative order must be 0, 1 or 2");
    check_args(index, length, x);

    const ModeConstants& k = cached_constants(index);
    const double beta = k.beta_l / length;
    const double u = beta * x;
    const double em = std::exp(-u);
    const double grow = std::exp(u - k.beta_l);
    const double decay = em * std::exp(-k.beta_l);
    const double eps_sinh = k.g * (grow - decay);
    const double eps_cosh = k.g * (grow + decay);
    const double su = std::sin(u);
    const double cu = std::cos(u);

    switch (derivative_order) {
        case 0:
            return em - cu + k.sigma * su + eps_sinh;
        case 1:
            return beta * (-em + su + k.sigma * cu + eps_cosh);
        default:
            return beta * beta * (em + cu - k.sigma * su + eps_sinh);
    }
}

double beam_basis_antiderivative(int index, double length, double x) {
    check_args(index, length, x);
    const ModeConstants& k = cached_constants(index);
    const double beta = k.beta_l / length;
    const double u = beta * x;
    const double em = std::exp(-u);
    const double grow = std::exp(u - k.beta_l);
    const double decay = em * std::exp(-k.beta_l);
    const double eps_cosh = k.g * (grow + decay);
    return (-em + eps_cosh - std::sin(u) - k.sigma * std::cos(u)) / beta;
}

}  // namespace platedamp

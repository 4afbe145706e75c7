#pragma once

// Seeded sample-point generation for numeric identity checks.
//
// All randomness flows through SampleRng (mt19937_64 with explicit 53-bit
// double extraction) so that a given seed yields the same points on every
// platform. Each check derives its own stream seed as config_seed ^
// fnv1a64(check name), making reports independent of execution order.
//
// tau is drawn from Im tau in [0.8, 2], |Re tau| <= 1/2. Elliptic variables
// are drawn per check inside that check's region hypothesis and are kept
// away from the lattice Z tau + Z where the integrands or sums degenerate.

#include "mockforms/classical_forms.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace mockforms {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

struct SampleRng {
    std::mt19937_64 eng;

    explicit SampleRng(std::uint64_t seed) : eng(seed) {}

    double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
};

inline std::complex<double> sample_tau(SampleRng& rng) {
    return {rng.range(-0.5, 0.5), rng.range(0.8, 2.0)};
}

// tau restricted so that -1/tau keeps a workable imaginary part
// (Im(-1/tau) = v/|tau|^2 >= 0.5 on this box).
inline std::complex<double> sample_tau_inversion(SampleRng& rng) {
    return {rng.range(-0.3, 0.3), rng.range(0.8, 1.2)};
}

// z = x + i y v with x in [-0.45, 0.45], y in [im_lo, im_hi] (fractions of
// v = Im tau), redrawn until z is at least `clearance` from the lattice.
inline std::complex<double> sample_z(SampleRng& rng, std::complex<double> tau,
                                     double im_lo = -0.45, double im_hi = 0.45,
                                     double clearance = 0.08) {
    const double v = tau.imag();
    for (int attempt = 0; attempt < 256; ++attempt) {
        const std::complex<double> z{rng.range(-0.45, 0.45), rng.range(im_lo, im_hi) * v};
        if (lattice_distance(z, tau) >= clearance) return z;
    }
    throw std::runtime_error("sample_z: could not find a point clear of the lattice");
}

// 0 < Im z < Im tau, strictly inside, for identities with that hypothesis.
inline std::complex<double> sample_z_strip(SampleRng& rng, std::complex<double> tau,
                                           double clearance = 0.08) {
    return sample_z(rng, tau, 0.1, 0.9, clearance);
}

// Fixed tau list for the expensive completion checks: one S fixed point,
// one generic point, one with larger imaginary part.
inline std::vector<std::complex<double>> completion_tau_samples() {
    return {{0.0, 1.0}, {0.25, 1.0}, {-1.0 / 3.0, 2.0}};
}

}  // namespace mockforms

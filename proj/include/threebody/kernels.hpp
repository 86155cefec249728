#pragma once

// Inner-loop kernels of the extrapolation integrator. Every kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant. The two
// perform the same IEEE operations in the same order, so results are
// bit-identical; the build disables FMA contraction to keep it that way.

#include <array>
#include <cstddef>

namespace threebody::kernels {

/// Packed chain state: two relative position vectors X1 = r2 - r1 and
/// X2 = r3 - r2 (chain order), their velocities W1 and W2, time, and three
/// pad lanes.
inline constexpr std::size_t kStateSize = 16;
inline constexpr std::size_t kTimeSlot = 12;

struct alignas(32) StateVec {
    std::array<double, kStateSize> v{};

    double &operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
    double *data() { return v.data(); }
    const double *data() const { return v.data(); }
};

struct KernelTable {
    const char *name;

    /// Relative accelerations of the chain vectors. `chain` holds X1 then X2,
    /// `mass` the three masses in chain order. Writes d2X1/dt2, d2X2/dt2 and
    /// the inverse distances of links 1-2, 2-3 and the closing pair 1-3.
    void (*chain_accel)(const double *chain, const double *mass, double *acc, double *inv_r);

    /// out = y + a * x over kStateSize lanes.
    void (*axpy)(const double *y, double a, const double *x, double *out);

    /// out = g * x over kStateSize lanes.
    void (*scale)(const double *x, double g, double *out);

    /// out = cur + (cur - prev) * factor: one Neville extrapolation update.
    void (*extrapolate)(const double *cur, const double *prev, double factor, double *out);

    /// max_i |a_i - b_i| / scale_i; NaN if any lane is NaN.
    double (*scaled_max_error)(const double *a, const double *b, const double *scale);
};

const KernelTable &scalar_kernels();

/// AVX2 table, or nullptr when not compiled in or not supported by the CPU.
const KernelTable *avx2_kernels();

/// Table chosen at first use: AVX2 when available, unless the environment
/// variable THREEBODY_KERNELS=scalar forces the reference path.
const KernelTable &active_kernels();

} // namespace threebody::kernels

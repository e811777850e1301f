// Vectorized scaled-K kernels over std::experimental::simd packs.
//
// Included once per ISA translation unit with SLATER_SIMD_NS set to a
// distinct namespace; the TU's compile flags decide the pack width. The
// algorithms mirror src/bessel.cpp lane for lane: ascending series for
// z <= 2, Steed CF2 above, half-integer ladder in closed form.

#include <experimental/simd>

#include <cmath>
#include <cstddef>

#include "slater/bessel.hpp"
#include "slater/simd.hpp"

namespace slater::simd {
namespace SLATER_SIMD_NS {

namespace stdx = std::experimental;
using vd = stdx::native_simd<double>;
using vmask = vd::mask_type;

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kEulerGamma = 0.577215664901532860606512090082402;

inline void k01e_series_pack(const vd& z, vd& k0e, vd& k1e) {
    const vd t = 0.25 * z * z;
    const vd lx = stdx::log(0.5 * z);

    vd term = 1.0, i0 = 1.0, hsum = 0.0;
    double hk = 0.0;
    for (int k = 1; k < 40; ++k) {
        term *= t / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        i0 += term;
        hsum += term * hk;
        if (stdx::all_of(term < 1e-18 * i0)) break;
    }
    const vd k0 = -(lx + kEulerGamma) * i0 + hsum;

    vd term1 = 1.0, i1s = 1.0;
    double psi = 1.0 - 2.0 * kEulerGamma;
    vd csum = psi;
    for (int k = 1; k < 40; ++k) {
        term1 *= t / (static_cast<double>(k) * (k + 1));
        psi += 1.0 / k + 1.0 / (k + 1);
        i1s += term1;
        csum += term1 * psi;
        if (stdx::all_of(term1 < 1e-18 * i1s)) break;
    }
    const vd i1 = 0.5 * z * i1s;
    const vd k1 = 1.0 / z + lx * i1 - 0.25 * z * csum;

    const vd ez = stdx::exp(z);
    k0e = k0 * ez;
    k1e = k1 * ez;
}

inline void k01e_cf2_pack(const vd& z, vd& k0e, vd& k1e) {
    constexpr double eps = 1e-16;
    constexpr int max_iter = 200;
    vd b = 2.0 * (1.0 + z);
    vd d = 1.0 / b;
    vd delh = d, h = d;
    vd q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    vd q = a1, s = 1.0 + a1 * delh;
    double c = a1, a = -a1;
    vmask active = vmask(true);
    for (int i = 2; i <= max_iter; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const vd qnew = (q1 - b * q2) / a;
        stdx::where(active, q1) = q2;
        stdx::where(active, q2) = qnew;
        stdx::where(active, q) = q + c * qnew;
        stdx::where(active, b) = b + 2.0;
        stdx::where(active, d) = 1.0 / (b + a * d);
        stdx::where(active, delh) = (b * d - 1.0) * delh;
        stdx::where(active, h) = h + delh;
        const vd dels = q * delh;
        stdx::where(active, s) = s + dels;
        active = active && !(stdx::abs(dels) <= eps * stdx::abs(s));
        if (stdx::none_of(active)) break;
    }
    h *= a1;
    k0e = stdx::sqrt(kPi / (2.0 * z)) / s;
    k1e = k0e * (z + 0.5 - h) / z;
}

inline void k01e_pack(const vd& z, vd& k0e, vd& k1e) {
    const vmask small = z <= vd(2.0);
    if (stdx::all_of(small)) {
        k01e_series_pack(z, k0e, k1e);
        return;
    }
    if (stdx::none_of(small)) {
        k01e_cf2_pack(z, k0e, k1e);
        return;
    }
    // Mixed pack: run both branches on clamped inputs and blend.
    vd zs = z, zl = z;
    stdx::where(!small, zs) = vd(2.0);
    stdx::where(small, zl) = vd(2.0);
    vd s0, s1, l0, l1;
    k01e_series_pack(zs, s0, s1);
    k01e_cf2_pack(zl, l0, l1);
    k0e = l0;
    k1e = l1;
    stdx::where(small, k0e) = s0;
    stdx::where(small, k1e) = s1;
}

inline void k01e(const double* z, double* k0e, double* k1e, std::size_t n) {
    std::size_t i = 0;
    for (; i + vd::size() <= n; i += vd::size()) {
        vd zz(&z[i], stdx::element_aligned);
        vd a, b;
        k01e_pack(zz, a, b);
        a.copy_to(&k0e[i], stdx::element_aligned);
        b.copy_to(&k1e[i], stdx::element_aligned);
    }
    for (; i < n; ++i) specfun::k01_scaled(z[i], k0e[i], k1e[i]);
}

inline void kve_half_pack(int twice_nu, const vd& z, vd& out) {
    const vd khalf = stdx::sqrt(kPi / (2.0 * z));
    if (twice_nu == 1) {
        out = khalf;
        return;
    }
    vd km = khalf;
    vd k = khalf * (1.0 + 1.0 / z);
    for (int tn = 3; tn < twice_nu; tn += 2) {
        const vd kp = km + (static_cast<double>(tn) / z) * k;
        km = k;
        k = kp;
    }
    out = k;
}

inline void kve_int_pack(int nu, const vd& z, vd& out) {
    vd k0e, k1e;
    k01e_pack(z, k0e, k1e);
    if (nu == 0) {
        out = k0e;
        return;
    }
    vd km = k0e, k = k1e;
    for (int j = 1; j < nu; ++j) {
        const vd kp = km + (2.0 * j / z) * k;
        km = k;
        k = kp;
    }
    out = k;
}

inline void kve(int twice_nu, const double* z, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + vd::size() <= n; i += vd::size()) {
        vd zz(&z[i], stdx::element_aligned);
        vd r;
        if (twice_nu % 2 == 1)
            kve_half_pack(twice_nu, zz, r);
        else
            kve_int_pack(twice_nu / 2, zz, r);
        r.copy_to(&out[i], stdx::element_aligned);
    }
    for (; i < n; ++i) out[i] = specfun::k_scaled({twice_nu}, z[i]);
}

extern const KernelSet kernel_set;
const KernelSet kernel_set = {SLATER_SIMD_NAME, &k01e, &kve};

}  // namespace SLATER_SIMD_NS
}  // namespace slater::simd

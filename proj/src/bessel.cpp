#include "slater/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slater::specfun {
namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kEulerGamma = 0.577215664901532860606512090082402;

// Ascending series for e^z K0(z), e^z K1(z), 0 < z <= 2 (DLMF 10.31.2).
// Worst-case cancellation at z = 2 costs ~1.5 digits.
void k01e_series(double z, double& k0e, double& k1e) {
    const double t = 0.25 * z * z;
    const double lx = std::log(0.5 * z);

    double term = 1.0, i0 = 1.0, hsum = 0.0, hk = 0.0;
    for (int k = 1; k < 40; ++k) {
        term *= t / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        i0 += term;
        hsum += term * hk;
        if (term < 1e-18 * i0) break;
    }
    const double k0 = -(lx + kEulerGamma) * i0 + hsum;

    double term1 = 1.0, i1s = 1.0;
    double psi = 1.0 - 2.0 * kEulerGamma;  // psi(1) + psi(2)
    double csum = psi;
    for (int k = 1; k < 40; ++k) {
        term1 *= t / (static_cast<double>(k) * (k + 1));
        psi += 1.0 / k + 1.0 / (k + 1);
        i1s += term1;
        csum += term1 * psi;
        if (term1 < 1e-18 * i1s) break;
    }
    const double i1 = 0.5 * z * i1s;
    const double k1 = 1.0 / z + lx * i1 - 0.25 * z * csum;

    const double ez = std::exp(z);
    k0e = k0 * ez;
    k1e = k1 * ez;
}

// Steed continued fraction (CF2, Thompson-Barnett) at order 0, z >= 2.
// Converges in <= ~85 iterations at z = 2, faster for larger z.
void k01e_cf2(double z, double& k0e, double& k1e) {
    constexpr double eps = 1e-16;
    constexpr int max_iter = 200;
    double b = 2.0 * (1.0 + z);
    double d = 1.0 / b;
    double delh = d, h = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= max_iter; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels) <= eps * std::abs(s)) break;
    }
    h *= a1;
    k0e = std::sqrt(kPi / (2.0 * z)) / s;
    k1e = k0e * (z + 0.5 - h) / z;
}

void require_positive(double z) {
    if (!(z > 0.0)) throw std::domain_error("bessel K: argument must be positive, got " + std::to_string(z));
}

}  // namespace

void k01_scaled(double z, double& k0e, double& k1e) {
    require_positive(z);
    if (z <= 2.0)
        k01e_series(z, k0e, k1e);
    else
        k01e_cf2(z, k0e, k1e);
}

double k_int_scaled(int nu, double z) {
    if (nu < 0) throw std::invalid_argument("k_int: order must be nonnegative");
    double k0e, k1e;
    k01_scaled(z, k0e, k1e);
    if (nu == 0) return k0e;
    if (nu == 1) return k1e;
    double km = k0e, k = k1e;
    for (int j = 1; j < nu; ++j) {
        const double kp = km + (2.0 * j / z) * k;
        km = k;
        k = kp;
    }
    return k;
}

double k_int(int nu, double z) { return k_int_scaled(nu, z) * std::exp(-z); }

double k_half_scaled(int twice_nu, double z) {
    if (twice_nu < 0 || twice_nu % 2 == 0)
        throw std::invalid_argument("k_half: twice_nu must be an odd positive integer");
    require_positive(z);
    const double khalf = std::sqrt(kPi / (2.0 * z));  // e^z K_{1/2}(z)
    if (twice_nu == 1) return khalf;
    double km = khalf;
    double k = khalf * (1.0 + 1.0 / z);  // e^z K_{3/2}(z)
    for (int tn = 3; tn < twice_nu; tn += 2) {
        const double kp = km + (static_cast<double>(tn) / z) * k;  // 2 nu / z with nu = tn/2
        km = k;
        k = kp;
    }
    return k;
}

double k_half(int twice_nu, double z) { return k_half_scaled(twice_nu, z) * std::exp(-z); }

double k_scaled(BesselOrder order, double z) {
    if (order.twice_nu < 0) throw std::invalid_argument("k_scaled: order must be nonnegative");
    require_positive(z);
    return order.twice_nu % 2 == 0 ? k_int_scaled(order.twice_nu / 2, z)
                                   : k_half_scaled(order.twice_nu, z);
}

double k(BesselOrder order, double z) { return k_scaled(order, z) * std::exp(-z); }

}  // namespace slater::specfun

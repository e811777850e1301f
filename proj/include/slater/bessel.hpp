#pragma once

// Exponentially scaled modified Bessel functions of the second kind K_nu
// for integer and half-integer order. These are the only special functions
// the representation kernels need: every integrand carries a factor
// K_{M/2}(sqrt(A*B)) whose argument grows without bound near the weight
// boundaries, so callers are expected to work with the scaled value
// e^z K_nu(z) and handle the -z exponent in log space.

namespace slater::specfun {

// Order nu = twice_nu / 2. Even twice_nu selects integer order, odd selects
// half-integer order.
struct BesselOrder {
    int twice_nu = 0;
};

// K_nu(z) for half-integer order (twice_nu odd), built from the closed form
// K_{1/2}(z) = sqrt(pi/(2z)) e^{-z} and the upward recurrence
// K_{nu+1}(z) = K_{nu-1}(z) + (2 nu / z) K_nu(z).
// Throws std::domain_error for z <= 0, std::invalid_argument for even or
// negative twice_nu.
double k_half(int twice_nu, double z);
double k_half_scaled(int twice_nu, double z);  // e^z K_nu(z)

// K_nu(z) for integer order nu >= 0. K0/K1 use the ascending series for
// z <= 2 and a Steed continued fraction above; nu >= 2 by upward recurrence.
// Relative accuracy ~1e-14 over the tested range (contract: <= 1e-12).
double k_int(int nu, double z);
double k_int_scaled(int nu, double z);         // e^z K_nu(z)

// e^z K_nu(z) for either parity; finite for all representable z > 0.
double k_scaled(BesselOrder order, double z);

// Convenience unscaled front end; underflows to 0 for z beyond ~745.
double k(BesselOrder order, double z);

// Scaled K0/K1 pair in one evaluation (both orders share the series /
// continued-fraction work). Used by the batch kernels.
void k01_scaled(double z, double& k0e, double& k1e);

}  // namespace slater::specfun

#pragma once

namespace heatlab {

// Two-sided medium for the transmission problem on the line: the initially
// hot side occupies s > 0 with diffusivity d_plus, the cold side s < 0 with
// diffusivity d_minus. A finite interface conductance lambda couples them:
//   D- du-/ds|0 = lambda (u+ - u-)|0,   D+ du+/ds|0 = D- du-/ds|0.
struct TransmissionMedium {
  double d_plus = 1.0;
  double d_minus = 1.0;
};

// alpha = 1/sqrt(D-) + 1/sqrt(D+), the conductance-to-time coupling scale.
double coupling_alpha(const TransmissionMedium& m);

// Reflection amplitude (sqrt(D+) - sqrt(D-)) / (sqrt(D+) + sqrt(D-)).
double reflection_amplitude(const TransmissionMedium& m);

// Transmission amplitude sqrt(D+) / (sqrt(D+) + sqrt(D-)).
double transmission_amplitude(const TransmissionMedium& m);

// ---- Perfect contact (lambda = infinity), unit point source at s1 >= 0.
// Same-side response, evaluated at s >= 0:
double gamma_pp(const TransmissionMedium& m, double s, double s1, double t);
// Transmitted response, evaluated at s <= 0:
double gamma_mp(const TransmissionMedium& m, double s, double s1, double t);

// ---- Finite conductance lambda >= 0, unit point source at s1 >= 0.
double g_pp(const TransmissionMedium& m, double lambda, double s, double s1,
            double t);
double g_mp(const TransmissionMedium& m, double lambda, double s, double s1,
            double t);

// ---- Perfect contact with a constant drift of velocity D*k on each side
// (k is the shared drift parameter; the advection speed is D+ k for s > 0
// and D- k for s < 0). Each branch is the drift-free kernel evaluated in
// the frame moving with its side, which solves the drifted equations
// exactly; the interface matching is exact at k = 0 (and for equal
// diffusivities at every k), and otherwise degrades only at second order
// in k because flux continuity cancels the first-order mismatch.
double gamma_reg_pp(const TransmissionMedium& m, double k, double s, double s1,
                    double t);
double gamma_reg_mp(const TransmissionMedium& m, double k, double s, double s1,
                    double t);

// ---- Boundary-layer building blocks (evaluation and source both on the
// hot side, s1, s2 >= 0). The image coefficient is 1 for finite contact and
// the reflection amplitude for perfect contact; the conductance correction
// is present only for finite contact. An optional drift shifts both
// longitudinal arguments by -t*D+*drift.
enum class ContactRegime { finite, perfect };

double h_plus(const TransmissionMedium& m, ContactRegime regime, double lambda,
              double s1, double s2, double t, double drift = 0.0);
double f_plus(const TransmissionMedium& m, ContactRegime regime, double lambda,
              double s1, double s2, double t, double drift = 0.0);

// ---- n-dimensional product kernel: the 1-D transmission factor in the
// normal coordinate times an (n-1)-dimensional Gaussian in the tangential
// offset, with the diffusivity of the evaluation side. `tangential_sq` is
// the squared tangential distance (must be 0 when n == 1).
double kernel_nd(const TransmissionMedium& m, ContactRegime regime,
                 double lambda, int n, double s, double s1,
                 double tangential_sq, double t);

// ---- Exact solution of the half-space-hot initial value problem and its
// heat content per unit interface area (finite lambda; lambda = infinity is
// the limit and can be requested with lambda = infinity()).
double u_plus_exact(const TransmissionMedium& m, double lambda, double s,
                    double t);
double u_minus_exact(const TransmissionMedium& m, double lambda, double s,
                     double t);
double heat_content_1d_exact(const TransmissionMedium& m, double lambda,
                             double t);

}  // namespace heatlab

#pragma once

#include "scmt/types.hpp"

namespace scmt::scm {

/// Complete elliptic integral of the first kind K(m), parameter m = k^2.
double ellip_k(double m);

/// Complementary integral K'(m) = K(1 - m), evaluated without forming 1 - m.
double ellip_kp(double m);

struct SnCnDn {
  double sn;
  double cn;
  double dn;
};

/// Real Jacobi elliptic functions by the descending Landen (AGM) scheme.
/// m in [0, 1].
SnCnDn jacobi_sncndn(double u, double m);

/// Jacobi sn for complex argument and real parameter m in [0, 1).
/// Returns an infinite value at the poles. Throws Error{ModulusOutOfRange}.
Complex jacobi_sn(Complex q, double m);

/// Rectangle height/width ratio K'(m) / (2 K(m)).
double aspect_from_modulus(double m);

/// Inverse of aspect_from_modulus by bisection on log m.
double modulus_from_aspect(double aspect);

/// Parameter of the rectangle whose corners land on 0, L, L+i, i under
/// z = ln(sn(q|m)) / pi, i.e. m = exp(-2 pi L).
double modulus_from_strip_length(double strip_length);

double strip_length_from_modulus(double m);

}  // namespace scmt::scm

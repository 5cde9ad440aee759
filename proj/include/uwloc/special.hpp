#pragma once

namespace uwloc {

// Principal real branch of the Lambert W function: returns w with w*exp(w) == x.
// Domain x >= -1/e; inputs within 1e-12 of the branch point return -1 exactly,
// anything below throws std::domain_error. The result satisfies
// |w*exp(w) - x| <= 1e-12 * max(1, |x|).
double lambert_w0(double x);

// Inverse of the complementary error function on (0, 2).
// Safeguarded Newton; |erfc(result) - y| <= 1e-12 * y. Throws std::domain_error
// outside the open interval.
double erfc_inv(double y);

}  // namespace uwloc

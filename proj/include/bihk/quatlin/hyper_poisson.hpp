#pragma once

#include "bihk/quatlin/pencil.hpp"

namespace bihk::quatlin {

// I1 L(A1) + I2 L(A2) + I3 L(A3) on R^{4n}.
RMatrix aquaternionic_assemble(const HermQuatTriple& t);
// sum_a I_a M I_a
RMatrix quaternionic_twist(const RMatrix& m, std::size_t n);
// max |sum_a I_a A I_a - A|
double aquaternionic_defect(const RMatrix& a, std::size_t n);
// max |sum_a I_a B I_a + 3B|
double quaternionic_defect(const RMatrix& b, std::size_t n);

// Kaehler form matrices omega_a(x,y) = x^T W_a y with W_a = I_a^T (flat metric).
RMatrix kaehler_form(int a, std::size_t n);
// Bivector inverse of a form in the convention W^{-T}; for the Kaehler forms this is -I_a.
RMatrix form_inverse(const RMatrix& w);

// Pi = sum_a A_a omega_a^{-1}, as a real antisymmetric 4n x 4n matrix.
RMatrix linear_hyper_poisson(const HermQuatTriple& t);

// (2,0)-part P Pi P^T with P = (1 - i I)/2, for the complex structure I.
CMatrix twozero_part(const RMatrix& bivector, const RMatrix& complex_structure);
// 2 (A2 + i A3)(omega2 + i omega3)^{-1}, the inverse taken on the (1,0)-covectors of I1.
CMatrix twozero_closed_form(const HermQuatTriple& t);

}  // namespace bihk::quatlin

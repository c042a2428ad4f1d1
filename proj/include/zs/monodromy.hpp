#pragma once

#include "zs/mat2.hpp"
#include "zs/potential.hpp"

namespace zs {

// Fundamental solution of the first-order system M' = A(x, lambda) M, M(0) = Id, with
//   A = [[-i lambda, i phi1], [-i phi2, i lambda]],
// together with its first two lambda-derivatives (propagated through the variational
// equations dM' = A dM - R M,  ddM' = A ddM - 2 R dM in the same pass).
struct MonodromyJet {
    Mat2 M, dM, ddM;
    double x = 0.0;
    cd lambda{0.0, 0.0};
};

// Transfer-matrix integrator: fixed cells with a 4th-order two-node Magnus step per cell,
// cell count max(grid_size, ceil(4|lambda| x)) doubled until two successive levels agree
// entrywise within tol (absolute, scaled by e^{|Im lambda| x}).  cells_hint, when given,
// carries the converged cell count across nearby solves (Newton iterations).
Mat2 fundamental_matrix(const Potential& p, double x, cd lambda, double tol = 1e-12,
                        int* cells_hint = nullptr);
MonodromyJet monodromy_jet(const Potential& p, double x, cd lambda, double tol = 1e-12,
                           int* cells_hint = nullptr);

// Delta(lambda) = m1 + m4 at x = 1
cd discriminant(const Potential& p, cd lambda, double tol = 1e-12);
// delta(lambda) = m2 + m3 at x = 1
cd antidiscriminant(const Potential& p, cd lambda, double tol = 1e-12);
// chi_D(lambda) = (m4 + m3 - m2 - m1) / (2i) at x = 1
cd dirichlet_char(const Potential& p, cd lambda, double tol = 1e-12);

struct DiscriminantJet {
    cd value, d1, d2;  // Delta, dDelta/dlambda, d2Delta/dlambda2
};
DiscriminantJet discriminant_jet(const Potential& p, cd lambda, double tol = 1e-12,
                                 int* cells_hint = nullptr);

inline cd chi_d_of(const Mat2& m) { return (m.m4 + m.m3 - m.m2 - m.m1) / (2.0 * iu); }

// Delta - 2(-1)^n evaluated without cancellation.  For any 2x2 matrix
//   Delta^2 - delta^2 - 4 det = (m1-m4)^2 - (m2-m3)^2 = (-2i chi_D) (m1+m3-m2-m4),
// so with t = 2(-1)^n (t^2 = 4),
//   Delta - t = [delta^2 + 4(det-1) - 2i chi_D (m1+m3-m2-m4)] / (Delta + t).
// Near a Dirichlet root every numerator term is tiny and individually accurate,
// which resolves the defect far below the float granularity of Delta itself.
inline cd disc_defect(const Mat2& m, int n)
{
    const double t = n % 2 == 0 ? 2.0 : -2.0;
    const cd delta = m.antitrace();
    const cd num = delta * delta + 4.0 * (m.det() - 1.0) -
                   2.0 * iu * chi_d_of(m) * (m.m1 + m.m3 - m.m2 - m.m4);
    return num / (m.trace() + t);
}

// log(1 + z) accurate for small complex z
inline cd log1p_c(cd z)
{
    if (std::abs(z) > 1e-4)
        return std::log(1.0 + z);
    cd sum{0.0, 0.0}, term{1.0, 0.0};
    for (int k = 1; k <= 6; ++k) {
        term *= -z;
        sum -= term / static_cast<double>(k);
    }
    return sum;
}

// Large-|lambda| approximant  E + M1 + (1/2.lambda) E R Q(x)  with
//   M1(x) = (1/2.lambda) (E(-x) Phi(x) - E(x) Phi(0) - E(x) P(x)),
//   P(x)  = int_0^x E(-2t) Phi'(t) dt,   Q(x) = int_0^x phi1 phi2 dt,
// all integrals evaluated mode-exactly for the bandlimited potential.  lambda != 0.
Mat2 approx_monodromy_a1(const Potential& p, double x, cd lambda);

// Partial sum of the iterated-integral series M = sum_n M_n with M_0 = E_lambda(x),
// M_{n+1}(x) = int_0^x E(x - t) R Phi(t) M_n(t) dt, by cumulative Simpson quadrature.
// Independent of the transfer-matrix path; intended as an oracle at moderate |lambda|.
// n_terms <= 12.
Mat2 iterated_series(const Potential& p, double x, cd lambda, int n_terms);

}  // namespace zs

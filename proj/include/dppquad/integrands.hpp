#ifndef DPPQUAD_INTEGRANDS_HPP_
#define DPPQUAD_INTEGRANDS_HPP_

#include <memory>

#include "dppquad/basis.hpp"
#include "dppquad/estimators.hpp"

namespace dppquad {

/// Smooth bump: prod_i exp(-1/(1 - eps - (x^i)^2)) on |x^i| < sqrt(1-eps),
/// zero outside.
Integrand bump(double eps = 0.05);

/// f = sum over the first m basis polynomials of phi_k / (rank+1), sharing
/// the ordering and parameters of `basis`. Integral against mu is
/// sqrt(mu(X)) exactly.
Integrand eig_sum(std::shared_ptr<const BasisSpec> basis, int m);

/// prod_i |x^i|.
Integrand abs_prod();

/// prod_i of the centered step (+1 for x^i > 0, -1 otherwise).
Integrand heaviside_centered();

/// prod_i cos(pi x^i).
Integrand cosine_prod();

/// prod_i of H(x)(cos(pi x) + cos(2 pi x) + sin(5 pi x)).
Integrand mix();

/// Integrand by CLI label: bump, eigsum, abs, heaviside, cosine, mix.
/// `basis` is required for eigsum (m <= basis->size()).
Integrand integrand_by_label(const std::string& label, double bump_eps,
                             std::shared_ptr<const BasisSpec> eigsum_basis);

/// Reference integral of f over mu: the stored analytic value when present,
/// otherwise the product of per-dimension 1-d quadratures of the factor
/// (split at 0 when the integrand demands it).
double reference_integral(const Integrand& f, const JacobiParams& params,
                          int m = 400);

}  // namespace dppquad

#endif  // DPPQUAD_INTEGRANDS_HPP_

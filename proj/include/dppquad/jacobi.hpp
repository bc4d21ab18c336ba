#ifndef DPPQUAD_JACOBI_HPP_
#define DPPQUAD_JACOBI_HPP_

#include <vector>

namespace dppquad {

/// Coefficients of the monic three-term recurrence
///   pi_{n+1}(x) = (x - alpha_n) pi_n(x) - beta_n pi_{n-1}(x)
/// for the weight (1-x)^a (1+x)^b on [-1, 1]. beta_0 is the total mass
/// of the weight, as usual in the Golub-Welsch setting.
struct RecurrenceCoeff {
  double alpha;
  double beta;
};

RecurrenceCoeff jacobi_recurrence(int n, double a, double b);

/// Mass of the 1-d weight: 2^{a+b+1} B(a+1, b+1), via log-gamma.
double jacobi_mass(double a, double b);

/// log of the squared L2 norm of the classical Jacobi polynomial P_n^{(a,b)}
/// w.r.t. (1-x)^a (1+x)^b dx.
double jacobi_log_norm2(int n, double a, double b);

/// Evaluator for the polynomials orthonormal w.r.t. (1-x)^a (1+x)^b dx:
/// classical three-term recurrence for P_n^{(a,b)} with normalization
/// constants precomputed once via log-gamma.
class UnivariateJacobi {
 public:
  UnivariateJacobi(double a, double b, int depth);

  double a() const { return a_; }
  double b() const { return b_; }
  int depth() const { return static_cast<int>(inv_norm_.size()); }

  /// Writes (phi_0(z), ..., phi_{depth-1}(z)) into out.
  void eval_into(double z, double* out) const;

 private:
  double a_;
  double b_;
  std::vector<double> inv_norm_;
};

/// One-shot convenience wrapper around UnivariateJacobi.
std::vector<double> eval_univariate(double a, double b, int depth, double z);

}  // namespace dppquad

#endif  // DPPQUAD_JACOBI_HPP_

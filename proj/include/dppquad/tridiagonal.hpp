#ifndef DPPQUAD_TRIDIAGONAL_HPP_
#define DPPQUAD_TRIDIAGONAL_HPP_

#include <vector>

namespace dppquad {

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal diag and
/// off-diagonal offdiag (size diag.size()-1), by implicit-shift QL
/// iteration without eigenvectors. Returns the eigenvalues sorted
/// ascending. O(n^2) total.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag,
                                            std::vector<double> offdiag);

}  // namespace dppquad

#endif  // DPPQUAD_TRIDIAGONAL_HPP_

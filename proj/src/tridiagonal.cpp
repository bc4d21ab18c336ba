#include "dppquad/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dppquad {

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d,
                                            std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return {};
  if (static_cast<int>(e.size()) != n - 1)
    throw std::invalid_argument("tridiagonal_eigenvalues: offdiag size");
  if (n == 1) return d;

  e.push_back(0.0);  // padding so e[m] is addressable for m = n-1

  const double eps = std::numeric_limits<double>::epsilon();
  const int max_sweeps = 50;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      // Locate a negligible coupling to deflate the active block.
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == max_sweeps)
          throw std::runtime_error(
              "tridiagonal_eigenvalues: QL failed to converge");
        // Wilkinson shift from the leading 2x2 block.
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double bb = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * bb;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - bb;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace dppquad

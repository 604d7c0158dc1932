#include <affdyn/linalg.hpp>

namespace affdyn {
namespace {

/// Back-substitution with x[free] = 1 and the other free columns zero.
std::vector<Integer> solve_free(const Echelon& e, int cols, int free) {
  std::vector<Rational> x(cols, 0);
  x[free] = 1;
  for (int k = e.rank - 1; k >= 0; --k) {
    const int p = e.pivots[k];
    if (p > free) continue;
    Rational s = 0;
    for (int j = p + 1; j < cols; ++j) s += Rational(e.rows[k][j]) * x[j];
    x[p] = -s / Rational(e.rows[k][p]);
  }
  Integer l = 1;
  for (const auto& v : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Integer> out;
  for (const auto& v : x) out.push_back(Integer(v * l));
  return out;
}

}  // namespace

Echelon bareiss_echelon(std::vector<std::vector<Integer>> a) {
  Echelon e;
  const int m = static_cast<int>(a.size());
  const int n = m ? static_cast<int>(a[0].size()) : 0;
  Integer prev = 1;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int piv = r;
    while (piv < m && sgn(a[piv][c]) == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[r]);
    for (int i = r + 1; i < m; ++i) {
      for (int j = c + 1; j < n; ++j) {
        Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    e.pivots.push_back(c);
    ++r;
  }
  e.rank = r;
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

std::optional<std::vector<Integer>> first_kernel_vector(const Echelon& e, int cols) {
  int free = 0;
  for (int p : e.pivots) {
    if (p != free) break;
    ++free;
  }
  if (free >= cols) return std::nullopt;
  return solve_free(e, cols, free);
}

std::vector<std::vector<Integer>> kernel_basis(const Echelon& e, int cols) {
  std::vector<bool> pivot(cols, false);
  for (int p : e.pivots) pivot[p] = true;
  std::vector<std::vector<Integer>> out;
  for (int c = 0; c < cols; ++c)
    if (!pivot[c]) out.push_back(solve_free(e, cols, c));
  return out;
}

}  // namespace affdyn

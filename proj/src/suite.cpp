#include <affdyn/suite.hpp>

#include <random>

namespace affdyn {
namespace {

long nonzero(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(1, 5), s(0, 1);
  return s(rng) ? d(rng) : -d(rng);
}

/// Dense polynomial of total degree `deg` with a nonzero y^deg coefficient.
Poly2 dense(std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<long> c(-5, 5);
  Poly2 p;
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j) p += Poly2::monomial(i, j, c(rng));
  p += Poly2::monomial(0, deg, nonzero(rng) - p.coeff(0, deg));
  return p;
}

}  // namespace

std::vector<SuiteMap> random_dominant_suite(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> c(-5, 5);
  std::uniform_int_distribution<int> deg(2, 3);
  const Poly2 x = Poly2::x(), y = Poly2::y();
  std::vector<SuiteMap> out;
  for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
    try {
      switch (k % 5) {
        case 0: {
          const unsigned d = deg(rng);
          out.push_back({Endo2(x.pow(d).scaled(nonzero(rng)) + Poly2(c(rng)),
                               y.pow(d).scaled(nonzero(rng)) + Poly2(c(rng))),
                         "coordinatewise", true});
          break;
        }
        case 1:
        case 2: {
          Poly2 p = dense(rng, deg(rng));
          // p(y) only
          Poly2 q;
          for (const auto& [m, a] : p.terms())
            if (m.i == 0) q += Poly2::monomial(0, m.j, a);
          out.push_back({Endo2(y, x.scaled(nonzero(rng)) + q), "henon", false});
          break;
        }
        default:
          out.push_back({Endo2(dense(rng, 2), dense(rng, 3)), "mixed", false});
      }
    } catch (const std::invalid_argument&) {
      // zero Jacobian: not dominant, draw again
    }
  }
  return out;
}

}  // namespace affdyn

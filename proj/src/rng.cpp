#include "cqec/rng.hpp"

#include <cmath>

#include "cqec/util.hpp"

namespace cqec {

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

DenseKet random_haar_ket(const ModeSpace& space, Rng& rng) {
  DenseKet v(space);
  if (space.total() == 1) {
    rng.complex_gaussian();  // keep the stream position consistent with dim>1
    v.amp[0] = cx{1.0, 0.0};
    return v;
  }
  for (cx& x : v.amp) x = rng.complex_gaussian();
  double n = v.norm();
  while (n == 0.0) {  // astronomically unlikely; regenerate
    for (cx& x : v.amp) x = rng.complex_gaussian();
    n = v.norm();
  }
  // phase fix: first amplitude of non-negligible magnitude made real positive
  std::size_t ref = 0;
  while (std::abs(v.amp[ref]) <= 1e-300) ++ref;
  const cx phase = std::conj(v.amp[ref]) / std::abs(v.amp[ref]);
  const double ref_mag = std::abs(v.amp[ref]) / n;
  kern::scal(v.amp.data(), v.amp.size(), phase * cx{1.0 / n, 0.0});
  v.amp[ref] = cx{ref_mag, 0.0};
  return v;
}

DenseKet random_haar_ket(int64_t dim, std::uint64_t seed) {
  require(dim >= 1, "random_haar_ket: dim must be >= 1");
  Rng rng(seed);
  return random_haar_ket(ModeSpace::single(dim), rng);
}

DenseOperator random_density(const ModeSpace& space, Rng& rng, int rank) {
  require(rank >= 1, "random_density: rank must be >= 1");
  DenseOperator rho(space, space);
  double wsum = 0.0;
  std::vector<double> w(static_cast<std::size_t>(rank));
  for (double& x : w) {
    x = rng.uniform01() + 1e-6;
    wsum += x;
  }
  for (int k = 0; k < rank; ++k) {
    DenseKet v = random_haar_ket(space, rng);
    add_scaled_into(rho, density(v), cx{w[static_cast<std::size_t>(k)] / wsum, 0.0});
  }
  return rho;
}

}  // namespace cqec

#include <cmath>

#include "cqec/codes.hpp"
#include "cqec/util.hpp"

namespace cqec {

Code qutrit_base_code() {
  Code c;
  c.kind = "qutrit-base";
  c.space_in = ModeSpace::single(3, "logical");
  c.space_out = ModeSpace({3, 3, 3});

  DenseOperator e(c.space_out, c.space_in);
  const double w = 1.0 / std::sqrt(3.0);
  for (int64_t j = 0; j < 3; ++j)
    for (int64_t k = 0; k < 3; ++k) {
      const int64_t flat = flatten({k, (k + j) % 3, (k + 2 * j) % 3}, {3, 3, 3});
      e.at(flat, j) = cx{w, 0.0};
    }
  require(e.is_isometry(1e-12), "qutrit_base_code: encoder not an isometry");

  c.encoder = e;
  c.encoding = isometry_channel(e);
  for (std::size_t j = 0; j < 3; ++j) c.decoders.emplace(j, exact_erasure_decoder(e, j, 1e-10));
  return c;
}

}  // namespace cqec

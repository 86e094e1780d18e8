#include "mscr/params.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

namespace mscr {

CodeParams derive_params(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::uint32_t t,
                         const DeriveOptions& opts) {
  if (n == 0 || k == 0 || d == 0 || t == 0) {
    throw ParamError("n, k, d, t must all be positive");
  }
  if (k < 2) {
    throw ParamError("k = " + std::to_string(k) + " is below the minimum of 2");
  }
  if (t < 2) {
    throw ParamError("t = " + std::to_string(t) +
                     " is below 2; cooperative repair needs at least two newcomers");
  }
  if (n < k || t > n - k) {
    throw ParamError("t = " + std::to_string(t) + " exceeds n - k = " +
                     std::to_string(n >= k ? n - k : 0) + "; survivors could not cover the data");
  }
  // 2k-1-t may be negative when t >= 2k-1; the bound then degenerates to k.
  const std::int64_t short_target = 2 * static_cast<std::int64_t>(k) - 1 - t;
  const std::int64_t d_floor = std::max<std::int64_t>(short_target, k);
  if (d < d_floor) {
    throw ParamError("d = " + std::to_string(d) + " is below max{2k-1-t, k} = " +
                     std::to_string(d_floor));
  }

  const auto delta = static_cast<std::uint32_t>(d - short_target);
  const std::uint32_t n_inner = n + delta;
  const std::uint32_t k_inner = k + delta;
  const std::uint32_t d_inner = d + delta;
  const std::uint32_t mu = k_inner - t;

  FieldSpec field = opts.modulus ? make_field_spec_pinned(*opts.modulus, n_inner, mu)
                                 : make_field_spec(n_inner, mu, opts.min_modulus);

  CodeParams p{
      .n = n,
      .k = k,
      .d = d,
      .t = t,
      .alpha = d - k + t,
      .message_len = k * (d - k + t),
      .delta = delta,
      .n_inner = n_inner,
      .k_inner = k_inner,
      .d_inner = d_inner,
      .mu = mu,
      .z = d_inner / mu,
      .r = d_inner % mu,
      .field = std::move(field),
  };

  // Algebraic identities of the lift; violations are internal bugs.
  if (p.d_inner != 2 * p.k_inner - 1 - t) throw ParamError("lift identity d' = 2k'-1-t broken");
  if (p.alpha != p.k_inner - 1) throw ParamError("lift identity alpha = k'-1 broken");
  if (p.mu < 1 || t > p.k_inner - 1) throw ParamError("lift identity t <= k'-1 broken");
  if (p.alpha != (p.z - 1) * p.mu + p.r) throw ParamError("block decomposition identity broken");
  return p;
}

}  // namespace mscr

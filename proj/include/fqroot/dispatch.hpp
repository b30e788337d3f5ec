#pragma once

#include <utility>

#include "fqroot/prime_field.hpp"

namespace fqroot {

/// Calls fn with the fastest backend able to represent F_p.
template <class Fn>
decltype(auto) with_prime_field(const Natural& p, Fn&& fn) {
  if (p.is_odd() && p < Natural(Fp64::max_modulus)) return std::forward<Fn>(fn)(Fp64(p.to_u64()));
  return std::forward<Fn>(fn)(FpBig(p));
}

}  // namespace fqroot

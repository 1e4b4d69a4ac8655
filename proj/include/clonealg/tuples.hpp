#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "clonealg/error.hpp"

namespace clonealg {

  // |base|^m, throwing CapError beyond `limit`.
  inline std::size_t tuple_count(std::size_t base, std::size_t m, std::size_t limit = std::size_t{1} << 40) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (base != 0 && r > limit / base) {
        throw CapError("enumeration of " + std::to_string(base) + "^" + std::to_string(m)
                       + " tuples is too large");
      }
      r *= base;
    }
    return r;
  }

  // Calls f(span) for every tuple of length m over `values`, leftmost
  // position most significant.
  template <typename T, typename F>
  void for_each_tuple(std::vector<T> const& values, std::size_t m, F&& f) {
    std::size_t const total = tuple_count(values.size(), m);
    std::vector<T>    xs(m);
    for (std::size_t t = 0; t < total; ++t) {
      std::size_t rest = t;
      for (std::size_t p = m; p-- > 0;) {
        xs[p] = values[rest % values.size()];
        rest /= values.size();
      }
      f(std::span<T const>(xs));
    }
  }

}  // namespace clonealg

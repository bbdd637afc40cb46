// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_ACTIVATION_HPP_
#define RAPD_ACTIVATION_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rapd/rng.hpp"
#include "rapd/vector_ops.hpp"

namespace rapd {

enum class ScheduleKind {
  kFixed,                    // always the same operator index
  kBernoulliAlternating,     // cyclic index gated by a Bernoulli coin
  kDeterministicAlternating, // cyclic index, always active
  kRandomizedUniform,        // uniform over {1..m}
};

/// The random index process choosing which operator (0 = identity) is applied
/// at each iteration. `num_operators` is m; indices run in {0, ..., m}.
///
/// For operator families too large to enumerate, `block_sampler` supplies the
/// operator for iteration k directly (uniform by construction); the solver
/// uses it instead of `next_index` when set.
struct ActivationSchedule {
  ScheduleKind kind = ScheduleKind::kFixed;
  int num_operators = 0;
  int fixed_index = 0;       // Fixed(j); 0 selects the identity every time
  double bernoulli_q = 0.5;
  std::vector<int> cycle_order;  // optional permutation of 1..m; empty = 1,2,...,m
  std::uint64_t seed = 0;
  std::optional<int> window_n;
  std::optional<double> zeta;
  // Declared when the schedule is admissible only because every primal-dual
  // solution already lies in S (Fixed selections with m > 1).
  bool allow_case_i = false;
  // Effective family size for constructive samplers (may exceed 2^64).
  double family_size = 0.0;
  std::function<std::function<RealVector(const RealVector&)>(
      std::uint64_t, SeededRng&)>
      block_sampler;

  int cycle_at(std::uint64_t k) const {
    if (cycle_order.empty()) {
      return static_cast<int>(k % static_cast<std::uint64_t>(num_operators)) + 1;
    }
    return cycle_order[k % cycle_order.size()];
  }
};

/// Index of the operator activated at iteration k. Deterministic kinds are a
/// pure function of k; random kinds consume exactly one draw from `rng`.
inline int next_index(const ActivationSchedule& s, std::uint64_t k,
                      SeededRng& rng) {
  switch (s.kind) {
    case ScheduleKind::kFixed:
      return s.fixed_index;
    case ScheduleKind::kDeterministicAlternating:
      return s.cycle_at(k);
    case ScheduleKind::kBernoulliAlternating: {
      const int i = s.cycle_at(k);
      return rng.bernoulli(s.bernoulli_q) ? i : 0;
    }
    case ScheduleKind::kRandomizedUniform:
      return static_cast<int>(
                 rng.below(static_cast<std::uint64_t>(s.num_operators))) +
             1;
  }
  return 0;
}

struct ScheduleCertificate {
  bool valid = false;
  int window_N = 0;       // 0 when left to the caller
  double zeta = 0.0;
  bool case_i_only = false;  // admissible only under Z0 subset of S x G
  std::string message;
};

namespace detail {
inline bool cycle_covers(const ActivationSchedule& s, std::vector<int>* missing) {
  std::vector<bool> seen(static_cast<std::size_t>(s.num_operators) + 1, false);
  const std::size_t len =
      s.cycle_order.empty() ? static_cast<std::size_t>(s.num_operators)
                            : s.cycle_order.size();
  for (std::size_t k = 0; k < len; ++k) {
    const int i = s.cycle_at(k);
    if (i >= 1 && i <= s.num_operators) seen[static_cast<std::size_t>(i)] = true;
  }
  bool ok = true;
  for (int i = 1; i <= s.num_operators; ++i) {
    if (!seen[static_cast<std::size_t>(i)]) {
      ok = false;
      if (missing) missing->push_back(i);
    }
  }
  return ok;
}

inline std::string list_indices(const std::vector<int>& v) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << "}";
  return os.str();
}
}  // namespace detail

/// Checks the covering-window/positive-probability condition and reports the
/// certificate (N, zeta) when it holds.
inline ScheduleCertificate validate_schedule(const ActivationSchedule& s) {
  ScheduleCertificate cert;
  if (s.num_operators < 0) {
    cert.message = "negative operator count";
    return cert;
  }
  switch (s.kind) {
    case ScheduleKind::kFixed: {
      if (s.num_operators == 0) {
        cert.valid = true;
        cert.window_N = 1;
        cert.zeta = 1.0;
        cert.message = "no operators; identity-only schedule";
        return cert;
      }
      if (s.num_operators == 1 && s.fixed_index == 1) {
        cert.valid = true;
        cert.window_N = 1;
        cert.zeta = 1.0;
        return cert;
      }
      std::vector<int> missing;
      for (int i = 1; i <= s.num_operators; ++i) {
        if (i != s.fixed_index) missing.push_back(i);
      }
      cert.case_i_only = true;
      cert.message = "indices " + detail::list_indices(missing) +
                     " never covered; admissible only when every primal-dual "
                     "solution lies in S";
      return cert;
    }
    case ScheduleKind::kDeterministicAlternating: {
      if (s.num_operators == 0) {
        cert.message = "empty cycle";
        return cert;
      }
      std::vector<int> missing;
      if (!detail::cycle_covers(s, &missing)) {
        cert.message = "cycle misses indices " + detail::list_indices(missing);
        return cert;
      }
      cert.valid = true;
      cert.window_N = static_cast<int>(
          s.cycle_order.empty() ? s.num_operators
                                : static_cast<int>(s.cycle_order.size()));
      cert.zeta = 1.0;
      return cert;
    }
    case ScheduleKind::kBernoulliAlternating: {
      if (s.num_operators == 0) {
        cert.message = "empty cycle";
        return cert;
      }
      if (!(s.bernoulli_q > 0.0) || s.bernoulli_q > 1.0) {
        cert.message = "Bernoulli q must lie in (0,1]";
        return cert;
      }
      std::vector<int> missing;
      if (!detail::cycle_covers(s, &missing)) {
        cert.message = "cycle misses indices " + detail::list_indices(missing);
        return cert;
      }
      cert.valid = true;
      cert.window_N = static_cast<int>(
          s.cycle_order.empty() ? s.num_operators
                                : static_cast<int>(s.cycle_order.size()));
      cert.zeta = s.bernoulli_q;
      return cert;
    }
    case ScheduleKind::kRandomizedUniform: {
      const double m = s.family_size > 0.0
                           ? s.family_size
                           : static_cast<double>(s.num_operators);
      if (!(m >= 1.0)) {
        cert.message = "empty operator family";
        return cert;
      }
      cert.valid = true;
      cert.zeta = 1.0 / m;
      cert.window_N = s.window_n.value_or(0);
      cert.message =
          "coverage of any finite window is probabilistic; N left to caller";
      return cert;
    }
  }
  return cert;
}

}  // namespace rapd

#endif  // RAPD_ACTIVATION_HPP_

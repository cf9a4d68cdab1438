#pragma once

// Exhaustive finite-field sweeps for affgebra data over a fixed fibre and
// orbit decomposition under the affine automorphism group.

#include "affleib/affgebra.hpp"
#include "affleib/catalog.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace affleib {

enum class SweepType { General, Homogeneous, LieType };
std::string to_string(SweepType t);
/// Accepts general, homogeneous, lie, lie-type. Throws std::invalid_argument.
SweepType parse_sweep_type(const std::string& s);

struct SweepOptions {
  unsigned jobs = 1;
  std::uint64_t cap = 10'000'000;
};

struct SweepResult {
  /// Data whose conditions were evaluated after linear pruning.
  std::uint64_t candidates = 0;
  /// Sorted datum keys (see datum_key).
  std::vector<std::uint64_t> solutions;
};

/// Solutions of the linear part of the condition system in the coordinates
/// (lambda row-major, mu row-major). General sweeps have no linear part and
/// return the full space.
Subspace linear_condition_kernel(const LeibnizAlgebra& L, SweepType t);

/// Exhaustive solution set of the type's condition system over a prime
/// field. Throws std::invalid_argument over Q, when keys would overflow, or
/// when the candidate count exceeds opt.cap. Deterministic for any jobs.
SweepResult sweep(const LeibnizAlgebra& L, SweepType t, const SweepOptions& opt = {});

struct Orbit {
  std::uint64_t representative = 0;  // least key in the orbit
  std::uint64_t size = 0;
};

/// Orbits of a solution set under (psi, q) with psi in Aut(L) and q in F_p^n.
/// Throws std::logic_error if the set is not closed under the action and
/// std::invalid_argument if |solutions| * |group| exceeds cap.
std::vector<Orbit> orbits(const LeibnizAlgebra& L, const std::vector<std::uint64_t>& solutions,
                          std::uint64_t cap = 10'000'000);

}  // namespace affleib

#pragma once

// Homomorphisms, isomorphisms and subaffgebras of affgebra data.
//
// A homomorphism phi = psi + q' : a(L; lambda, mu, s) -> a(L'; lambda', mu', s')
// is checked through its linear part psi and the image q' = phi(0). An
// isomorphism is given by (psi, q) with q' = psi(q).

#include "affleib/affgebra.hpp"
#include "affleib/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace affleib {

/// Conditions on (psi, q') with labels hom.leibniz_morphism, hom.s, hom.mu,
/// hom.lambda.
ConditionReport hom_conditions(const BiAffineBracket& K, const BiAffineBracket& Kp, const AffineMapData& phi);

/// phi({a,b}) = {phi a, phi b}' on the grid.
bool preserves_bracket(const BiAffineBracket& K, const BiAffineBracket& Kp, const AffineMapData& phi,
                       const CheckOptions& opt = {});

/// Condition system, cross-checked against preserves_bracket; a disagreement
/// throws std::logic_error.
bool is_affgebra_hom(const BiAffineBracket& K, const BiAffineBracket& Kp, const AffineMapData& phi);

/// Labels iso.leibniz_isomorphism, iso.s, iso.mu, iso.lambda.
ConditionReport iso_conditions(const BiAffineBracket& K, const BiAffineBracket& Kp, const Mat& psi, const Vec& q);

/// Condition system, cross-checked against the bracket-preservation grid test
/// for phi = psi + psi(q); a disagreement throws std::logic_error.
bool is_affgebra_iso(const BiAffineBracket& K, const BiAffineBracket& Kp, const Mat& psi, const Vec& q);

/// The unique datum K' making (psi, q) an isomorphism K -> K'. Requires psi
/// invertible; the fibre of K' is psi-transported.
BiAffineBracket apply_iso(const BiAffineBracket& K, const Mat& psi, const Vec& q);

struct IsoWitness {
  Mat psi;
  Vec q;
};

struct SearchResult {
  bool found = false;
  std::optional<IsoWitness> witness;
  /// Number of (psi, q) candidates whose conditions were evaluated.
  std::uint64_t checked = 0;
};

/// Invariants compared before enumerating: dimensions of the Leib ideal,
/// left and right centres and derived subspace.
bool fibre_invariants_match(const LeibnizAlgebra& L, const LeibnizAlgebra& Lp);

/// Exhaustive search over invertible psi (row-major digit order) then q
/// (lexicographic). Prime fields only; throws std::invalid_argument over Q.
/// With jobs > 1 the psi range is split across threads and the global
/// lexicographic minimum is reported.
SearchResult search_iso(const BiAffineBracket& K, const BiAffineBracket& Kp, unsigned jobs = 1);

/// All Leibniz automorphisms of L over a prime field, in row-major digit order.
std::vector<Mat> automorphisms(const LeibnizAlgebra& L);

/// Labels sub.closed, sub.constant, sub.lambda, sub.mu.
ConditionReport subaffgebra_conditions(const BiAffineBracket& K, const Vec& a, const Subspace& H);

/// {a+H, a+H} contained in a+H on the grid of H-coordinates.
bool is_closed_affine_subspace(const BiAffineBracket& K, const Vec& a, const Subspace& H);

/// Condition system, cross-checked against is_closed_affine_subspace;
/// disagreement throws std::logic_error.
bool is_subaffgebra(const BiAffineBracket& K, const Vec& a, const Subspace& H);

/// a(h; lambda + ad_a, mu + [a,-], [a,a] - a + (lambda+mu)(a) + s) in the
/// coordinates of H's basis. Throws std::invalid_argument unless is_subaffgebra.
BiAffineBracket induced_subaffgebra(const BiAffineBracket& K, const Vec& a, const Subspace& H);

/// u -> a + sum u_i h_i preserves brackets from the induced datum into K.
bool shift_embedding_is_hom(const BiAffineBracket& K, const Vec& a, const Subspace& H,
                            const BiAffineBracket& induced);

struct AutomorphismFamily {
  std::string algebra;
  std::vector<std::string> params;
  /// Parameters that must be nonzero.
  std::vector<std::string> nonzero;
  std::vector<std::vector<Polynomial>> matrix;

  Mat instantiate(const Bindings& b, const FieldSpec& f) const;
  /// All members over a prime field (each binding with the nonzero
  /// parameters nonzero), deduplicated and in row-major digit order.
  std::vector<Mat> enumerate(const FieldSpec& f) const;
};

/// Templates for L2, L3 and L4. Throws std::invalid_argument for other names.
AutomorphismFamily automorphism_family(const std::string& name);

}  // namespace affleib

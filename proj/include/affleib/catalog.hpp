#pragma once

// Built-in Leibniz algebras and parametric families of affgebra data with
// their constraint relations, membership, enumeration over prime fields and
// normal-form reductions with validated witnesses.

#include "affleib/affgebra.hpp"
#include "affleib/morphism.hpp"
#include "affleib/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace affleib {

// ------------------------------------------------------------ algebras

/// Names accepted by algebra(): L1(n) for n >= 1, L2, L3, L4, L4(xi) for an
/// integer or rational xi != 0, L7, sl2.
std::vector<std::string> algebra_names();

/// Throws std::invalid_argument for unknown names or xi = 0 in the field.
LeibnizAlgebra algebra(const std::string& name, const FieldSpec& f);
LeibnizAlgebra l4_xi(const Scalar& xi);

// ------------------------------------------------------------ families

enum class FamilyType { General, Homogeneous, LieType };
std::string to_string(FamilyType t);

enum class RelationKind { Equal, NotEqual };

struct Relation {
  std::string label;
  Polynomial lhs, rhs;
  RelationKind kind = RelationKind::Equal;
  /// Parameter this equality determines when it is left unbound.
  std::string solve_for;

  bool holds(const Bindings& b, const FieldSpec& f) const;
  /// "label: lhs = rhs" or "label: lhs != rhs".
  std::string to_string() const;
};

struct FamilyDescriptor {
  std::string name;
  std::string fibre;
  FamilyType type = FamilyType::General;
  std::vector<std::string> params;
  std::vector<std::vector<Polynomial>> lambda_template, mu_template;
  std::vector<Polynomial> s_template;
  std::vector<Relation> constraints;
  bool has_normal_form = false;

  std::size_t dim() const { return s_template.size(); }
  /// Parameters not determined by a solving relation.
  std::vector<std::string> free_params() const;
};

std::vector<std::string> family_names();
/// Throws std::invalid_argument for unknown names.
FamilyDescriptor family(const std::string& name);
/// {a,b} = [a,b] + a + s with s in the left centre of the named fibre.
FamilyDescriptor homogeneous_self_family(const std::string& fibre);

/// Fills unbound solve_for parameters, checks every relation and returns the
/// datum. Throws std::invalid_argument on an unbound parameter, an unknown
/// binding name or a violated relation (the message names the relation).
BiAffineBracket instantiate(const FamilyDescriptor& fam, const Bindings& b, const FieldSpec& f);

/// Bindings that reproduce K, or nothing when K is outside the family.
std::optional<Bindings> recover_bindings(const FamilyDescriptor& fam, const BiAffineBracket& K);
bool in_family(const FamilyDescriptor& fam, const BiAffineBracket& K);

/// The family's declared predicate evaluated on K.
bool satisfies_declared_type(const FamilyDescriptor& fam, const BiAffineBracket& K);

// ------------------------------------------------------------ normal forms

struct SquareClass {
  Scalar rep;   // canonical representative
  Scalar root;  // x = rep * root^2, root != 0
};

/// Over Q the signed square-free integer; over F_p one of 0, 1 or the least
/// quadratic non-residue.
SquareClass square_class(const Scalar& x);

struct NormalForm {
  BiAffineBracket datum;
  IsoWitness witness;
};

/// Reduces K, which must belong to the named family, to the family's normal
/// form. The witness is validated by is_affgebra_iso and the reduced datum
/// is compared with the expected shape; a mismatch throws std::logic_error.
/// Throws std::invalid_argument when K is outside the family or the family
/// has no normal form.
NormalForm normal_form(const std::string& family_name, const BiAffineBracket& K);

// ------------------------------------------------------------ enumeration

/// Digits of (lambda row-major, mu row-major, s) in base p, most significant
/// first. Throws std::invalid_argument if the key would overflow 64 bits.
std::uint64_t datum_key(const BiAffineBracket& K);
BiAffineBracket datum_from_key(const LeibnizAlgebra& L, std::uint64_t key);
/// True when p^(2n^2+n) fits in 64 bits.
bool key_fits(std::uint32_t p, std::size_t n);

/// Sorted keys of every member over a prime field. Unbound solving
/// parameters are computed; the number of free bindings is capped.
std::vector<std::uint64_t> enumerate_family(const FamilyDescriptor& fam, const FieldSpec& f,
                                            std::uint64_t cap = 10'000'000);

}  // namespace affleib

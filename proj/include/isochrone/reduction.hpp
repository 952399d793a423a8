#pragma once

#include <array>
#include <vector>

#include "isochrone/exact/combo.hpp"
#include "isochrone/exact/json.hpp"
#include "isochrone/perturbation.hpp"

namespace isochrone::reduction {

using exact::GeneratorCombo;
using exact::GeneratorIndex;
using exact::Polynomial;
using exact::Rational;
using exact::RationalPoly;
using exact::Var;

inline constexpr GeneratorIndex kI01{0, 1};
inline constexpr GeneratorIndex kI11{1, 1};
inline constexpr GeneratorIndex kI21{2, 1};
inline constexpr GeneratorIndex kI31{3, 1};
inline constexpr GeneratorIndex kI03{0, 3};
inline constexpr GeneratorIndex kI13{1, 3};

/// Which fourth generator accompanies I_{0,1}, I_{1,1}, I_{2,1}. The two are
/// interchangeable through the I_{3,1} identity (see to_form).
enum class BasisForm { with_i03, with_i31 };

/// Coefficients of an integral written over the generator basis. Only one of
/// p31 / p03 is populated for a given form.
template <class T>
struct BasisCombo {
  Polynomial<T> p01{Var::h};
  Polynomial<T> p11{Var::h};
  Polynomial<T> p21{Var::h};
  Polynomial<T> p31{Var::h};
  Polynomial<T> p03{Var::h};

  bool is_zero() const {
    return p01.is_zero() && p11.is_zero() && p21.is_zero() && p31.is_zero() && p03.is_zero();
  }

  friend bool operator==(const BasisCombo&, const BasisCombo&) = default;
};

using ExactBasis = BasisCombo<Rational>;
using RealBasis = BasisCombo<double>;

/// One step of the i-lowering relation: I_{i,j} in terms of indices
/// (i-2,j), (i-4,j), (i-4,j+2), (i-2,j+2), (i-1,j), (i-3,j).
/// DomainError when i+3j+1 = 0.
GeneratorCombo rewrite_25(int i, int j);

/// One step of the j-lowering relation: I_{i,j} in terms of (i,j-2), (i-1,j),
/// (i+1,j-2), (i-1,j-2), (i-2,j-2), (i-2,j). DomainError when i+j-1 = 0 or j < 3.
GeneratorCombo rewrite_26(int i, int j);

/// I_{k,3} over {I_{1,3}, I_{0,3}} ∪ {I_{i,1} : 0 <= i <= k+1}, k >= 2. Memoized.
GeneratorCombo reduce_k3(int k);

/// I_{k,1} (k >= 3) as produced by the induction, before projection onto the
/// basis. Any surviving I_{1,3}, I_{-1,3} or I_{-1,1} term is a bug; callers
/// that need the guarantee use reduce_k1.
GeneratorCombo reduce_k1_combo(int k);

/// I_{k,1} over {I_{0,1}, I_{1,1}, I_{2,1}, I_{0,3}}, k >= 3. Throws
/// ConsistencyError if extended generators failed to cancel. Memoized.
ExactBasis reduce_k1(int k);

/// Any I_{i,j} with j in {1,3} (and i of either sign) on the basis. Even j
/// gives the zero combo; j >= 5 is a DomainError.
ExactBasis reduce_generator(int i, int j, BasisForm form = BasisForm::with_i03);

/// Converts between the I_{0,3} and I_{3,1} presentations.
template <class T>
BasisCombo<T> to_form(const BasisCombo<T>& c, BasisForm form);

/// GeneratorCombo -> basis; ConsistencyError if the combo has support outside
/// the five basis generators.
ExactBasis from_combo(const GeneratorCombo& c);
GeneratorCombo to_combo(const ExactBasis& c);

RealBasis to_real(const ExactBasis& c);

/// Per-coefficient exact contribution to I(h): entry i is (1/2)·I_{i,1}
/// reduced onto the I_{3,1}-form basis, so I = Σ a_i · entry_i.
std::vector<ExactBasis> assembly_matrix(int n);

/// I(h) = (1/2) Σ a_i I_{i,1} on the I_{3,1}-form basis. The exact matrix is
/// applied to the real a_i only at the end.
RealBasis assemble_I(const PerturbationSpec& spec);

/// (deg p01, deg p11, deg p21, deg of p31 or p03); zero polynomial -> -1.
struct DegreeProfile {
  int p01 = -1;
  int p11 = -1;
  int p21 = -1;
  int last = -1;

  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

template <class T>
DegreeProfile degree_profile(const BasisCombo<T>& c) {
  return {c.p01.degree(), c.p11.degree(), c.p21.degree(), std::max(c.p31.degree(), c.p03.degree())};
}

/// Degree bounds the induction guarantees for I_{k,1}: (⌊(k-3)/2⌋ for p01, p11,
/// p03; ⌊(k-2)/2⌋ for p21).
DegreeProfile degree_bound_k1(int k);

/// Same bounds for the assembled I(h) of a degree-n perturbation (n >= 3).
DegreeProfile degree_bound_assembled(int n);

/// {"form":"I03","basis":{"I01":poly,...},"degree_profile":[...]}. The
/// one-argument overload picks the I_{3,1} form when p31 is nonzero.
Json to_json(const ExactBasis& c, BasisForm form);
Json to_json(const ExactBasis& c);

}  // namespace isochrone::reduction

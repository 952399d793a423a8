#include "isochrone/reduction.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>

#include "isochrone/error.hpp"

namespace isochrone::reduction {

namespace {

RationalPoly constant(const Rational& c) { return RationalPoly::constant(Var::h, c); }
RationalPoly linear(const Rational& c0, const Rational& c1) { return RationalPoly(Var::h, {c0, c1}); }

std::string index_str(int i, int j) { return "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

// Read-mostly cache. Values are computed outside the lock so that recursive
// reductions can consult the table; a racing duplicate insert keeps the first.
template <class Value>
class MemoTable {
 public:
  std::optional<Value> find(int key) const {
    std::shared_lock lock(mutex_);
    const auto it = table_.find(key);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  const Value& insert(int key, Value value) {
    std::unique_lock lock(mutex_);
    return table_.try_emplace(key, std::move(value)).first->second;
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<int, Value> table_;
};

MemoTable<GeneratorCombo>& k3_table() {
  static MemoTable<GeneratorCombo> table;
  return table;
}

MemoTable<ExactBasis>& k1_table() {
  static MemoTable<ExactBasis> table;
  return table;
}

// Replaces every I_{m,1} with m >= 3 by its (already clean) basis expansion.
GeneratorCombo expand_high_j1(GeneratorCombo combo) {
  std::vector<GeneratorIndex> pending;
  for (const auto& [g, p] : combo.terms()) {
    if (g.j == 1 && g.i >= 3) pending.push_back(g);
  }
  for (const auto g : pending) combo = combo.substitute(g, to_combo(reduce_k1(g.i)));
  return combo;
}

// I_{1,3} on the basis. The j-lowering relation at (1,3) brings in I_{-1,3}
// and I_{-1,1}; the inversion x -> 1/x, y -> y/x preserves H and maps
// I_{i,j} to I_{3-i-j,j}, which turns the relation into a linear equation
// for I_{1,3}.
const GeneratorCombo& closure_i13() {
  static const GeneratorCombo closed = [] {
    GeneratorCombo combo = rewrite_26(1, 3);
    combo = combo.substitute({-1, 3}, GeneratorCombo::single(kI13));
    combo = combo.substitute({-1, 1}, to_combo(reduce_k1(3)));
    const RationalPoly self = combo.coefficient(kI13);
    if (self.degree() > 0 || self.coefficient(0) == Rational(1)) {
      throw ConsistencyError(Module::reduction, "I_{1,3} closure is singular");
    }
    return combo.without(kI13).scaled(Rational(1) / (Rational(1) - self.coefficient(0)));
  }();
  return closed;
}

template <class T>
T convert(const Rational& r) {
  if constexpr (std::is_same_v<T, Rational>) {
    return r;
  } else {
    return r.to_double();
  }
}

}  // namespace

GeneratorCombo rewrite_25(int i, int j) {
  const int denom = i + 3 * j + 1;
  if (denom == 0) {
    throw DomainError(Module::reduction, "rewrite_25: denominator i+3j+1 vanishes at " + index_str(i, j));
  }
  const Rational w(1, denom);
  const int s = i + j - 3;
  // The prefactor (i+j-3)/(i+3j+1) is multiplied through so that s = 0 is not special.
  return GeneratorCombo{
      {{i - 2, j}, linear(Rational(2 * i - 10) * w, Rational(16 * s) * w)},
      {{i - 4, j}, constant(Rational(-s) * w)},
      {{i - 4, j + 2}, constant(Rational(-4 * s) * w)},
      {{i - 2, j + 2}, constant(Rational(4 * i - 4 * j - 12) * w)},
      {{i - 1, j}, constant(Rational(-(2 * j + 4)) * w)},
      {{i - 3, j}, constant(Rational(-(2 * j + 4)) * w)},
  };
}

GeneratorCombo rewrite_26(int i, int j) {
  if (j < 3) throw DomainError(Module::reduction, "rewrite_26 needs j >= 3, got " + index_str(i, j));
  const int denom = i + j - 1;
  if (denom == 0) {
    throw DomainError(Module::reduction, "rewrite_26: denominator i+j-1 vanishes at " + index_str(i, j));
  }
  const Rational w(j, denom);
  const Rational quarter = w / Rational(4);
  return GeneratorCombo{
      {{i, j - 2}, linear(quarter * Rational(3), quarter * Rational(16))},
      {{i - 1, j}, constant(Rational(i + 3 * j - 3, denom))},
      {{i + 1, j - 2}, constant(quarter)},
      {{i - 1, j - 2}, constant(quarter)},
      {{i - 2, j - 2}, constant(-quarter)},
      {{i - 2, j}, constant(-w)},
  };
}

GeneratorCombo reduce_k3(int k) {
  if (k < 2) throw DomainError(Module::reduction, "reduce_k3 needs k >= 2, got k=" + std::to_string(k));
  if (auto hit = k3_table().find(k)) return *hit;

  GeneratorCombo combo = rewrite_26(k, 3);
  for (int m = k - 1; m >= 2; --m) {
    if (combo.contains({m, 3})) combo = combo.substitute({m, 3}, reduce_k3(m));
  }
  return k3_table().insert(k, std::move(combo));
}

GeneratorCombo reduce_k1_combo(int k) {
  if (k < 3) throw DomainError(Module::reduction, "reduce_k1 needs k >= 3, got k=" + std::to_string(k));

  GeneratorCombo combo = rewrite_25(k, 1);
  for (int m = k - 2; m >= 2; --m) {
    if (combo.contains({m, 3})) combo = combo.substitute({m, 3}, reduce_k3(m));
  }
  combo = expand_high_j1(std::move(combo));
  if (combo.contains(kI13)) combo = combo.substitute(kI13, rewrite_26(1, 3));
  return combo;
}

ExactBasis reduce_k1(int k) {
  if (k < 3) throw DomainError(Module::reduction, "reduce_k1 needs k >= 3, got k=" + std::to_string(k));
  if (auto hit = k1_table().find(k)) return *hit;
  return k1_table().insert(k, from_combo(reduce_k1_combo(k)));
}

ExactBasis reduce_generator(int i, int j, BasisForm form) {
  if (j <= 0) throw DomainError(Module::reduction, "generator needs j >= 1, got " + index_str(i, j));
  if (j % 2 == 0) return ExactBasis{};
  if (j > 3) throw DomainError(Module::reduction, "only j in {1,3} is reducible, got " + index_str(i, j));
  if (i < 0) i = 3 - i - j;

  ExactBasis out;
  if (j == 1) {
    switch (i) {
      case 0: out.p01 = constant(Rational(1)); break;
      case 1: out.p11 = constant(Rational(1)); break;
      case 2: out.p21 = constant(Rational(1)); break;
      default: out = reduce_k1(i); break;
    }
  } else if (i == 0) {
    out.p03 = constant(Rational(1));
  } else if (i == 1) {
    out = from_combo(closure_i13());
  } else {
    GeneratorCombo combo = expand_high_j1(reduce_k3(i));
    combo = combo.substitute(kI13, closure_i13());
    out = from_combo(combo);
  }
  return to_form(out, form);
}

template <class T>
BasisCombo<T> to_form(const BasisCombo<T>& c, BasisForm form) {
  // I_{3,1} = r01 I_{0,1} + r11 I_{1,1} + r21 I_{2,1} + r03 I_{0,3}
  static const ExactBasis relation = reduce_k1(3);
  const T r01 = convert<T>(relation.p01.coefficient(0));
  const T r11 = convert<T>(relation.p11.coefficient(0));
  const T r21 = convert<T>(relation.p21.coefficient(0));
  const T r03 = convert<T>(relation.p03.coefficient(0));

  BasisCombo<T> out = c;
  if (form == BasisForm::with_i03 && !c.p31.is_zero()) {
    out.p01 = out.p01 + c.p31.scaled(r01);
    out.p11 = out.p11 + c.p31.scaled(r11);
    out.p21 = out.p21 + c.p31.scaled(r21);
    out.p03 = out.p03 + c.p31.scaled(r03);
    out.p31 = Polynomial<T>(Var::h);
  } else if (form == BasisForm::with_i31 && !c.p03.is_zero()) {
    const T inv = T(1) / r03;
    out.p31 = out.p31 + c.p03.scaled(inv);
    out.p01 = out.p01 - c.p03.scaled(r01 * inv);
    out.p11 = out.p11 - c.p03.scaled(r11 * inv);
    out.p21 = out.p21 - c.p03.scaled(r21 * inv);
    out.p03 = Polynomial<T>(Var::h);
  }
  return out;
}

template BasisCombo<Rational> to_form(const BasisCombo<Rational>&, BasisForm);
template BasisCombo<double> to_form(const BasisCombo<double>&, BasisForm);

ExactBasis from_combo(const GeneratorCombo& c) {
  ExactBasis out;
  for (const auto& [g, p] : c.terms()) {
    if (g == kI01) {
      out.p01 = p;
    } else if (g == kI11) {
      out.p11 = p;
    } else if (g == kI21) {
      out.p21 = p;
    } else if (g == kI31) {
      out.p31 = p;
    } else if (g == kI03) {
      out.p03 = p;
    } else {
      throw ConsistencyError(Module::reduction, "generator " + exact::to_string(g) +
                                                    " outside the basis survived reduction (degree " +
                                                    std::to_string(p.degree()) + ")");
    }
  }
  return out;
}

GeneratorCombo to_combo(const ExactBasis& c) {
  return GeneratorCombo{{kI01, c.p01}, {kI11, c.p11}, {kI21, c.p21}, {kI31, c.p31}, {kI03, c.p03}};
}

RealBasis to_real(const ExactBasis& c) {
  return {exact::to_real(c.p01), exact::to_real(c.p11), exact::to_real(c.p21), exact::to_real(c.p31),
          exact::to_real(c.p03)};
}

std::vector<ExactBasis> assembly_matrix(int n) {
  if (n < 0) throw DomainError(Module::reduction, "perturbation degree must be >= 0, got " + std::to_string(n));
  const Rational half(1, 2);
  std::vector<ExactBasis> rows;
  rows.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const ExactBasis r = reduce_generator(i, 1, BasisForm::with_i31);
    rows.push_back({r.p01.scaled(half), r.p11.scaled(half), r.p21.scaled(half), r.p31.scaled(half),
                    r.p03.scaled(half)});
  }
  return rows;
}

RealBasis assemble_I(const PerturbationSpec& spec) {
  if (spec.a.empty()) throw DomainError(Module::reduction, "assemble_I: empty coefficient list");
  const auto rows = assembly_matrix(spec.degree());
  RealBasis out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double a = spec.a[i];
    if (a == 0.0) continue;
    out.p01 = out.p01 + exact::to_real(rows[i].p01).scaled(a);
    out.p11 = out.p11 + exact::to_real(rows[i].p11).scaled(a);
    out.p21 = out.p21 + exact::to_real(rows[i].p21).scaled(a);
    out.p31 = out.p31 + exact::to_real(rows[i].p31).scaled(a);
  }
  return out;
}

namespace {

int floor_half(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

}  // namespace

DegreeProfile degree_bound_k1(int k) {
  if (k < 3) throw DomainError(Module::reduction, "degree bound needs k >= 3, got k=" + std::to_string(k));
  const int low = floor_half(k - 3);
  return {low, low, floor_half(k - 2), low};
}

DegreeProfile degree_bound_assembled(int n) {
  if (n < 3) throw DomainError(Module::reduction, "degree bound needs n >= 3, got n=" + std::to_string(n));
  return degree_bound_k1(n);
}

Json to_json(const ExactBasis& c) {
  return to_json(c, c.p31.is_zero() ? BasisForm::with_i03 : BasisForm::with_i31);
}

Json to_json(const ExactBasis& c, BasisForm form) {
  const bool i31 = form == BasisForm::with_i31;
  if (!(i31 ? c.p03 : c.p31).is_zero()) {
    throw StructuralError(Module::reduction, "combo carries both I_{3,1} and I_{0,3}; convert with to_form first");
  }
  Json basis{{"I01", exact::to_json(c.p01)}, {"I11", exact::to_json(c.p11)}, {"I21", exact::to_json(c.p21)}};
  basis[i31 ? "I31" : "I03"] = exact::to_json(i31 ? c.p31 : c.p03);
  const DegreeProfile d = degree_profile(c);
  return Json{{"form", i31 ? "I31" : "I03"},
              {"basis", std::move(basis)},
              {"degree_profile", Json::array({d.p01, d.p11, d.p21, d.last})}};
}

}  // namespace isochrone::reduction

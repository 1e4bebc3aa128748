#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kqj2/diffproj.hpp"
#include "kqj2/quiver.hpp"
#include "kqj2/rep.hpp"

namespace kqj2 {

/// Top of a reduced module as a representation of the opposite quiver: the
/// reversed arrow a* acts by the radical block h_a.
template <class Field>
Rep<Field> F_module(const DiffProj<Field>& m) {
  if (!m.is_reduced()) {
    throw DomainError(ErrorCode::NotReduced, "the top part of the differential is nonzero; reduce the module first");
  }
  return Rep<Field>(opposite(m.quiver()), m.field(), m.tops(), m.h());
}

/// On morphisms F keeps the top blocks. Requires f to be a differential map
/// between reduced modules.
template <class Field>
RepMorphism<Field> F_morphism(const DiffProj<Field>& m, const DiffProj<Field>& n, const DiffMorphism<Field>& f) {
  if (!m.is_reduced() || !n.is_reduced()) throw DomainError(ErrorCode::NotReduced, "F is defined on reduced modules");
  if (!is_differential_map(m, n, f)) throw DomainError(ErrorCode::NotDifferential, "morphism does not commute with d");
  return {f.gf};
}

/// kQ/J^2 (x) X with d(e_j (x) x) = sum_{a : t(a) = j} a (x) X_a*(x). Reduced,
/// and d^2 = 0 holds since radical maps compose to zero.
template <class Field>
DiffProj<Field> G_module(const Rep<Field>& x) {
  Quiver q = opposite(x.quiver());
  std::vector<Matrix<Field>> g;
  for (auto d : x.dims()) g.emplace_back(x.field(), d, d);
  return DiffProj<Field>(std::move(q), x.field(), x.dims(), std::move(g), x.maps());
}

struct HomotopyHomReport {
  std::size_t dim_hom = 0;        ///< dim Hom(F M'', F N'')
  std::size_t dim_ext_shift = 0;  ///< dim Ext^1(F M'', sigma F N'')
  std::size_t total = 0;
  std::optional<std::size_t> oracle_total;
};

/// dim Hom(M, N) in the homotopy category as Hom(FM'', FN'') + Ext^1(FM'', F(shift N'')),
/// where F(shift N'') is computed as the sign twist of F(N''). With
/// `with_oracle` the brute-force count is computed as well and must agree.
template <class Field>
HomotopyHomReport hom_homotopy_dim_formula(const DiffProj<Field>& m, const DiffProj<Field>& n, bool with_oracle = false) {
  detail::require_compatible(m, n);
  auto fm = F_module(reduce(m).reduced);
  auto fn = F_module(reduce(n).reduced);
  HomotopyHomReport report;
  report.dim_hom = rep_hom_dim(fm, fn);
  report.dim_ext_shift = rep_ext1_dim(fm, twist_sigma(fn));
  report.total = report.dim_hom + report.dim_ext_shift;
  if (with_oracle) {
    report.oracle_total = hom_homotopy_dim_bruteforce(m, n);
    if (*report.oracle_total != report.total) {
      throw InvariantViolation("homotopy Hom: formula gives " + std::to_string(report.total) + ", brute force gives " +
                               std::to_string(*report.oracle_total));
    }
  }
  return report;
}

struct ExactnessReport {
  std::size_t cohomology_total = 0;
  std::size_t hom_from_simples = 0;   ///< dim Hom(kQ0, F M'')
  std::size_t ext_from_simples = 0;   ///< dim Ext^1(kQ0, F M'')
  bool consistent = false;
};

/// Cohomology of M against Hom and Ext^1 from kQ0 into F of its reduced part.
/// `consistent` requires both the dimension identity and that M is exact
/// exactly when both right-hand terms vanish.
template <class Field>
ExactnessReport exactness_report(const DiffProj<Field>& m) {
  ExactnessReport out;
  out.cohomology_total = cohomology_dims(m).total;
  auto fm = F_module(reduce(m).reduced);
  auto simples = semisimple_kQ0(fm.quiver(), m.field());
  auto [hom, ext] = rep_hom_ext_dims(simples, fm);
  out.hom_from_simples = hom;
  out.ext_from_simples = ext;
  const bool exact = out.cohomology_total == 0;
  out.consistent = out.cohomology_total == hom + ext && exact == (hom == 0 && ext == 0);
  return out;
}

/// G of the path algebra of Q^op truncated at paths of length >= N.
template <class Field>
DiffProj<Field> truncated_generator(const Quiver& q, const Field& field, std::size_t max_length) {
  return G_module(path_truncation(opposite(q), field, max_length));
}

/// For acyclic Q, G of the regular representation of Q^op; its F-image is
/// the regular module.
template <class Field>
DiffProj<Field> compact_generator(const Quiver& q, const Field& field) {
  if (!is_acyclic(q)) {
    throw DomainError(ErrorCode::NotAcyclic, "the regular module of the opposite quiver is infinite; use a truncated generator");
  }
  return truncated_generator(q, field, longest_path_length(q) + 1);
}

/// Default truncation depth for probing M with a truncated generator.
template <class Field>
std::size_t default_truncation(const DiffProj<Field>& m) {
  std::size_t s = 1;
  for (auto t : m.tops()) s += t;
  return s;
}

/// True iff M is zero in the homotopy category, i.e. its reduced part is
/// zero. In that case Hom(C_N, M) is checked to vanish as well.
template <class Field>
bool detects_zero(const DiffProj<Field>& m, std::size_t truncation) {
  const bool zero = reduce(m).reduced.is_zero();
  if (zero) {
    auto c = truncated_generator(m.quiver(), m.field(), truncation);
    if (hom_homotopy_dim_bruteforce(c, m) != 0) {
      throw InvariantViolation("detects_zero: contractible module has nonzero maps from the generator");
    }
  }
  return zero;
}

}  // namespace kqj2

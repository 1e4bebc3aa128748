#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "kqj2/linear_system.hpp"
#include "kqj2/matrix.hpp"
#include "kqj2/quiver.hpp"
#include "kqj2/rep.hpp"

namespace kqj2 {

/// A differential projective kQ/J^2-module M = kQ/J^2 (x)_{kQ0} T in
/// canonical coordinates. With m_i = dim T_i, the differential is
///
///   d(e_j (x) x) = e_j (x) g_j(x) + sum_{a : t(a) = j} a (x) h_a(x),
///
/// so g_i : T_i -> T_i is its top part and h_a : T_t(a) -> T_s(a) (shape
/// m_s(a) x m_t(a)) its radical part. As a vector space,
/// M_j = T_j + sum_{a : t(a) = j} T_s(a), with summands in arrow order.
template <class Field>
class DiffProj {
 public:
  using Mat = Matrix<Field>;

  DiffProj(Quiver quiver, Field field, std::vector<std::size_t> tops, std::vector<Mat> g, std::vector<Mat> h)
      : quiver_(std::move(quiver)), field_(std::move(field)), m_(std::move(tops)), g_(std::move(g)), h_(std::move(h)) {
    if (m_.size() != quiver_.vertex_count() || g_.size() != quiver_.vertex_count()) {
      throw DomainError(ErrorCode::Mismatch, "top data must be indexed by the vertices");
    }
    if (h_.size() != quiver_.arrow_count()) throw DomainError(ErrorCode::Mismatch, "need one radical block per arrow");
    for (std::size_t v = 0; v < m_.size(); ++v) {
      if (!(g_[v].field() == field_) || g_[v].rows() != m_[v] || g_[v].cols() != m_[v]) {
        throw DomainError(ErrorCode::Mismatch, "top block at vertex '" + quiver_.vertex_name(v) + "' has the wrong shape");
      }
    }
    for (std::size_t a = 0; a < h_.size(); ++a) {
      const auto& arrow = quiver_.arrow(a);
      if (!(h_[a].field() == field_) || h_[a].rows() != m_[arrow.source] || h_[a].cols() != m_[arrow.target]) {
        throw DomainError(ErrorCode::Mismatch, "radical block of arrow '" + arrow.name + "' has the wrong shape");
      }
    }
  }

  /// g = 0 and h = 0.
  static DiffProj zero_differential(Quiver quiver, Field field, std::vector<std::size_t> tops) {
    std::vector<Mat> g, h;
    for (auto t : tops) g.emplace_back(field, t, t);
    for (const auto& a : quiver.arrows()) h.emplace_back(field, tops.at(a.source), tops.at(a.target));
    return DiffProj(std::move(quiver), std::move(field), std::move(tops), std::move(g), std::move(h));
  }

  static DiffProj zero_module(Quiver quiver, Field field) {
    std::vector<std::size_t> tops(quiver.vertex_count(), 0);
    return zero_differential(std::move(quiver), std::move(field), std::move(tops));
  }

  const Quiver& quiver() const { return quiver_; }
  const Field& field() const { return field_; }
  const std::vector<std::size_t>& tops() const { return m_; }
  std::size_t top(std::size_t v) const { return m_.at(v); }
  const Mat& g(std::size_t v) const { return g_.at(v); }
  const Mat& h(std::size_t a) const { return h_.at(a); }
  const std::vector<Mat>& g() const { return g_; }
  const std::vector<Mat>& h() const { return h_; }

  bool is_reduced() const {
    for (const auto& blk : g_) {
      if (!blk.is_zero()) return false;
    }
    return true;
  }

  bool is_zero() const {
    for (auto t : m_) {
      if (t != 0) return false;
    }
    return true;
  }

  /// dim M_j = m_j + sum over arrows into j of m_source.
  std::size_t space_dim(std::size_t j) const {
    std::size_t d = m_.at(j);
    for (const auto& a : quiver_.arrows()) {
      if (a.target == j) d += m_[a.source];
    }
    return d;
  }

  std::size_t total_dim() const {
    std::size_t s = 0;
    for (std::size_t v = 0; v < m_.size(); ++v) s += space_dim(v);
    return s;
  }

  bool operator==(const DiffProj& other) const {
    return quiver_ == other.quiver_ && field_ == other.field_ && m_ == other.m_ && g_ == other.g_ && h_ == other.h_;
  }

 private:
  Quiver quiver_;
  Field field_;
  std::vector<std::size_t> m_;
  std::vector<Mat> g_;
  std::vector<Mat> h_;
};

/// A module map f = (1 (x) gf) + r_hf between two DiffProj: gf_i : T_i -> T'_i,
/// hf_a : T_t(a) -> T'_s(a).
template <class Field>
struct DiffMorphism {
  std::vector<Matrix<Field>> gf;
  std::vector<Matrix<Field>> hf;

  bool operator==(const DiffMorphism&) const = default;
};

namespace detail {

template <class Field>
void require_compatible(const DiffProj<Field>& m, const DiffProj<Field>& n) {
  if (!(m.quiver() == n.quiver())) throw DomainError(ErrorCode::Mismatch, "modules over different quivers");
  if (!(m.field() == n.field())) throw DomainError(ErrorCode::Mismatch, "modules over different fields");
}

/// Offset of each arrow's summand inside M_t(a).
template <class Field>
std::vector<std::size_t> radical_offsets(const DiffProj<Field>& m) {
  const Quiver& q = m.quiver();
  std::vector<std::size_t> fill(m.tops());
  std::vector<std::size_t> out(q.arrow_count());
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    out[a] = fill[arrow.target];
    fill[arrow.target] += m.top(arrow.source);
  }
  return out;
}

}  // namespace detail

template <class Field>
DiffMorphism<Field> identity_morphism(const DiffProj<Field>& m) {
  DiffMorphism<Field> out;
  for (auto t : m.tops()) out.gf.push_back(Matrix<Field>::identity(m.field(), t));
  for (const auto& a : m.quiver().arrows()) out.hf.emplace_back(m.field(), m.top(a.source), m.top(a.target));
  return out;
}

/// Composite `after . before` for before : L -> M and after : M -> N, using
/// ((1(x)g) + r_h)((1(x)g') + r_h') = (1(x)gg') + r_(g_s h' + h g'_t).
template <class Field>
DiffMorphism<Field> compose(const Quiver& q, const DiffMorphism<Field>& after, const DiffMorphism<Field>& before) {
  DiffMorphism<Field> out;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) out.gf.push_back(after.gf.at(v) * before.gf.at(v));
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    out.hf.push_back(after.gf.at(arrow.source) * before.hf.at(a) + after.hf.at(a) * before.gf.at(arrow.target));
  }
  return out;
}

/// The differential of M as a morphism M -> M.
template <class Field>
DiffMorphism<Field> differential(const DiffProj<Field>& m) {
  return {m.g(), m.h()};
}

template <class Field>
bool is_differential_map(const DiffProj<Field>& m, const DiffProj<Field>& n, const DiffMorphism<Field>& f) {
  detail::require_compatible(m, n);
  const Quiver& q = m.quiver();
  return compose(q, differential(n), f) == compose(q, f, differential(m));
}

/// The vertex space M_j as a matrix action: top block g_j, arrow summand
/// blocks h_a (top -> summand) and g_s(a) (summand -> summand).
template <class Field>
Matrix<Field> assembled_map(const DiffProj<Field>& source, const DiffProj<Field>& target, const DiffMorphism<Field>& f,
                            std::size_t j) {
  const Quiver& q = source.quiver();
  auto src_off = detail::radical_offsets(source);
  auto tgt_off = detail::radical_offsets(target);
  Matrix<Field> out(source.field(), target.space_dim(j), source.space_dim(j));
  out.set_block(0, 0, f.gf.at(j));
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    if (arrow.target != j) continue;
    out.set_block(tgt_off[a], 0, f.hf.at(a));
    out.set_block(tgt_off[a], src_off[a], f.gf.at(arrow.source));
  }
  return out;
}

template <class Field>
Matrix<Field> assembled_differential(const DiffProj<Field>& m, std::size_t j) {
  return assembled_map(m, m, differential(m), j);
}

/// Raw module data: a representation of Q (vertex spaces and arrow actions)
/// together with one endomorphism block per vertex.
template <class Field>
struct RawModule {
  Rep<Field> module;
  std::vector<Matrix<Field>> endo;
};

/// The underlying Q-representation of M (arrow a moves the top summand of
/// M_s(a) onto the a-summand of M_t(a)) together with the assembled d.
template <class Field>
RawModule<Field> to_raw(const DiffProj<Field>& m) {
  const Quiver& q = m.quiver();
  auto off = detail::radical_offsets(m);
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) dims.push_back(m.space_dim(v));
  std::vector<Matrix<Field>> actions;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    Matrix<Field> act(m.field(), dims[arrow.target], dims[arrow.source]);
    act.set_block(off[a], 0, Matrix<Field>::identity(m.field(), m.top(arrow.source)));
    actions.push_back(std::move(act));
  }
  std::vector<Matrix<Field>> endo;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) endo.push_back(assembled_differential(m, v));
  return {Rep<Field>(q, m.field(), std::move(dims), std::move(actions)), std::move(endo)};
}

/// Ingests raw module data. Checks that length-two paths act by zero, that
/// the endomorphism squares to zero and commutes with every arrow, and that
/// the module is projective: with top dimensions t_i = dim M_i - dim rad M_i,
/// M is projective iff dim M_j = t_j + sum_{a : t(a) = j} t_s(a) for all j.
/// Top sections are the standard basis vectors picked as rref pivots.
template <class Field>
DiffProj<Field> from_raw(const RawModule<Field>& raw) {
  const Rep<Field>& mod = raw.module;
  const Quiver& q = mod.quiver();
  const Field& f = mod.field();
  if (raw.endo.size() != q.vertex_count()) throw DomainError(ErrorCode::Mismatch, "need one endomorphism block per vertex");
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (raw.endo[v].rows() != mod.dim(v) || raw.endo[v].cols() != mod.dim(v)) {
      throw DomainError(ErrorCode::Mismatch, "endomorphism block at '" + q.vertex_name(v) + "' has the wrong shape");
    }
  }

  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    for (std::size_t b = 0; b < q.arrow_count(); ++b) {
      if (q.arrow(a).target != q.arrow(b).source) continue;
      if (!(mod.map(b) * mod.map(a)).is_zero()) {
        throw DomainError(ErrorCode::NotAModule,
                          "path " + q.arrow(a).name + " then " + q.arrow(b).name + " acts nonzero");
      }
    }
  }
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (!(raw.endo[v] * raw.endo[v]).is_zero()) {
      throw DomainError(ErrorCode::NotDifferential, "D^2 != 0 at vertex '" + q.vertex_name(v) + "'");
    }
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    if (!(mod.map(a) * raw.endo[arrow.source] == raw.endo[arrow.target] * mod.map(a))) {
      throw DomainError(ErrorCode::NotDifferential, "D does not commute with arrow '" + arrow.name + "'");
    }
  }

  // Radical spanning sets and top dimensions.
  std::vector<Matrix<Field>> radical;
  std::vector<std::size_t> tops;
  for (std::size_t j = 0; j < q.vertex_count(); ++j) {
    Matrix<Field> span(f, mod.dim(j), 0);
    for (auto a : q.arrows_into(j)) span = hstack(span, mod.map(a));
    tops.push_back(mod.dim(j) - rank(span));
    radical.push_back(std::move(span));
  }
  for (std::size_t j = 0; j < q.vertex_count(); ++j) {
    std::size_t cover = tops[j];
    for (auto a : q.arrows_into(j)) cover += tops[q.arrow(a).source];
    if (cover != mod.dim(j)) {
      throw DomainError(ErrorCode::NotProjective,
                        "vertex '" + q.vertex_name(j) + "': dim " + std::to_string(mod.dim(j)) +
                            " but the projective cover of the top has dim " + std::to_string(cover));
    }
  }

  // Top sections U_j: standard vectors completing the radical.
  std::vector<Matrix<Field>> sections;
  for (std::size_t j = 0; j < q.vertex_count(); ++j) {
    const auto& span = radical[j];
    auto id = Matrix<Field>::identity(f, mod.dim(j));
    auto pivots = rref(hstack(span, id)).pivots;
    Matrix<Field> u(f, mod.dim(j), 0);
    for (auto p : pivots) {
      if (p >= span.cols()) u = hstack(u, id.column(p - span.cols()));
    }
    sections.push_back(std::move(u));
  }

  // Basis of M_j adapted to the projective decomposition.
  std::vector<Matrix<Field>> g;
  std::vector<Matrix<Field>> h(q.arrow_count(), Matrix<Field>(f, 0, 0));
  for (std::size_t j = 0; j < q.vertex_count(); ++j) {
    Matrix<Field> basis = sections[j];
    auto into = q.arrows_into(j);
    for (auto a : into) basis = hstack(basis, mod.map(a) * sections[q.arrow(a).source]);
    auto coords = inverse(basis) * raw.endo[j] * sections[j];
    g.push_back(coords.block(0, tops[j], 0, tops[j]));
    std::size_t row = tops[j];
    for (auto a : into) {
      std::size_t width = tops[q.arrow(a).source];
      h[a] = coords.block(row, width, 0, tops[j]);
      row += width;
    }
  }
  return DiffProj<Field>(q, f, std::move(tops), std::move(g), std::move(h));
}

struct Violation {
  std::string location;  ///< "vertex 1" or "arrow a"
  std::string what;
  std::string residual;  ///< the nonzero residual matrix, formatted
};

/// Checks g_i^2 = 0 at every vertex and g_s(a) h_a + h_a g_t(a) = 0 on every
/// arrow, i.e. d^2 = 0.
template <class Field>
std::vector<Violation> validate(const DiffProj<Field>& m) {
  std::vector<Violation> out;
  const Quiver& q = m.quiver();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    auto sq = m.g(v) * m.g(v);
    if (!sq.is_zero()) {
      std::ostringstream os;
      os << sq;
      out.push_back({"vertex " + q.vertex_name(v), "g^2 != 0", os.str()});
    }
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    auto r = m.g(arrow.source) * m.h(a) + m.h(a) * m.g(arrow.target);
    if (!r.is_zero()) {
      std::ostringstream os;
      os << r;
      out.push_back({"arrow " + arrow.name, "g_s h + h g_t != 0", os.str()});
    }
  }
  return out;
}

namespace detail {

template <class Field>
void require_valid(const DiffProj<Field>& m) {
  auto violations = validate(m);
  if (!violations.empty()) {
    throw DomainError(ErrorCode::NotDifferential,
                      violations.front().location + ": " + violations.front().what +
                          (violations.size() > 1 ? " (and " + std::to_string(violations.size() - 1) + " more)" : ""));
  }
}

}  // namespace detail

/// Same module, differential negated.
template <class Field>
DiffProj<Field> shift(const DiffProj<Field>& m) {
  std::vector<Matrix<Field>> g, h;
  for (const auto& x : m.g()) g.push_back(-x);
  for (const auto& x : m.h()) h.push_back(-x);
  return DiffProj<Field>(m.quiver(), m.field(), m.tops(), std::move(g), std::move(h));
}

/// Tops are concatenated per vertex (M first), blocks placed diagonally.
template <class Field>
DiffProj<Field> direct_sum(const DiffProj<Field>& m, const DiffProj<Field>& n) {
  detail::require_compatible(m, n);
  std::vector<std::size_t> tops;
  std::vector<Matrix<Field>> g, h;
  for (std::size_t v = 0; v < m.quiver().vertex_count(); ++v) {
    tops.push_back(m.top(v) + n.top(v));
    g.push_back(direct_sum(m.g(v), n.g(v)));
  }
  for (std::size_t a = 0; a < m.quiver().arrow_count(); ++a) h.push_back(direct_sum(m.h(a), n.h(a)));
  return DiffProj<Field>(m.quiver(), m.field(), std::move(tops), std::move(g), std::move(h));
}

/// m_i = 2 r_i with g_i = [[0, 0], [I, 0]] and h = 0; the homotopy
/// [[0, I], [0, 0]] contracts it.
template <class Field>
DiffProj<Field> contractible_standard(const Quiver& q, const Field& field, const std::vector<std::size_t>& mults) {
  if (mults.size() != q.vertex_count()) throw DomainError(ErrorCode::Mismatch, "one multiplicity per vertex");
  std::vector<std::size_t> tops;
  std::vector<Matrix<Field>> g;
  for (auto r : mults) {
    tops.push_back(2 * r);
    Matrix<Field> blk(field, 2 * r, 2 * r);
    blk.set_block(r, 0, Matrix<Field>::identity(field, r));
    g.push_back(std::move(blk));
  }
  std::vector<Matrix<Field>> h;
  for (const auto& a : q.arrows()) h.emplace_back(field, tops[a.source], tops[a.target]);
  return DiffProj<Field>(q, field, std::move(tops), std::move(g), std::move(h));
}

/// A module automorphism (1 - r_k) o (1 (x) S): per-vertex invertible base
/// changes S_i followed by a radical correction k_a : T_t(a) -> T_s(a).
template <class Field>
struct SplitWitness {
  std::vector<Matrix<Field>> base_change;
  std::vector<Matrix<Field>> correction;
};

/// Transports M along the automorphism described by `w`:
/// g -> S g S^-1, h -> S_s h S_t^-1, then h -> h + g_s k - k g_t.
template <class Field>
DiffProj<Field> conjugate(const DiffProj<Field>& m, const SplitWitness<Field>& w) {
  const Quiver& q = m.quiver();
  std::vector<Matrix<Field>> inv, g, h;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    inv.push_back(inverse(w.base_change.at(v)));
    g.push_back(w.base_change[v] * m.g(v) * inv[v]);
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    auto moved = w.base_change[arrow.source] * m.h(a) * inv[arrow.target];
    const auto& k = w.correction.at(a);
    h.push_back(moved + g[arrow.source] * k - k * g[arrow.target]);
  }
  return DiffProj<Field>(q, m.field(), m.tops(), std::move(g), std::move(h));
}

/// The automorphism of `w` as a morphism M -> conjugate(M, w).
template <class Field>
DiffMorphism<Field> witness_morphism(const Quiver& q, const SplitWitness<Field>& w) {
  DiffMorphism<Field> out;
  out.gf = w.base_change;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    out.hf.push_back(-(w.correction.at(a) * w.base_change.at(q.arrow(a).target)));
  }
  return out;
}

template <class Field>
struct SplitResult {
  DiffProj<Field> reduced;
  std::vector<std::size_t> contractible_mults;
  SplitWitness<Field> witness;
};

/// Splits M into a reduced part and a standard contractible part.
///
/// At each vertex g_i^2 = 0, so T_i = C + A + B with B = Im g_i, A a
/// complement of Ker g_i mapped onto B by g_i, and C a complement of B in
/// Ker g_i. In the basis (C, A, B) the top part is the identity A -> B.
/// Writing h_a in blocks h_XY (Y in T_t(a) to X in T_s(a)), the relation
/// g_s h + h g_t = 0 forces h_AY = 0 for Y != A, h_XB = 0 for X != B and
/// h_AA = -h_BB. The correction k changes h by g_s k - k g_t, i.e. adds k_AY
/// to h_BY and subtracts k_XB from h_XA, which clears every block but h_CC.
/// No iteration is needed since g^2 = 0 holds globally.
template <class Field>
SplitResult<Field> reduce(const DiffProj<Field>& m) {
  detail::require_valid(m);
  const Quiver& q = m.quiver();
  const Field& f = m.field();

  struct Blocks {
    std::size_t c, r;  // dim C, rank g (= dim A = dim B)
  };
  std::vector<Blocks> blocks;
  SplitWitness<Field> w;

  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    const auto& g = m.g(v);
    const std::size_t n = m.top(v);
    auto pivots = rref(g).pivots;
    const std::size_t r = pivots.size();
    Matrix<Field> a_part(f, n, 0), b_part(f, n, 0);
    auto id = Matrix<Field>::identity(f, n);
    for (auto p : pivots) {
      a_part = hstack(a_part, id.column(p));
      b_part = hstack(b_part, g.column(p));
    }
    auto kernel = kernel_basis(g);
    Matrix<Field> c_part(f, n, 0);
    for (auto p : rref(hstack(b_part, kernel)).pivots) {
      if (p >= r) c_part = hstack(c_part, kernel.column(p - r));
    }
    auto basis = hstack(hstack(c_part, a_part), b_part);
    w.base_change.push_back(inverse(basis));
    blocks.push_back({n - 2 * r, r});
  }

  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    const auto s = blocks[arrow.source], t = blocks[arrow.target];
    auto h = w.base_change[arrow.source] * m.h(a) * inverse(w.base_change[arrow.target]);
    // Row offsets in T_s and column offsets in T_t for the C, A, B blocks.
    const std::size_t sA = s.c, sB = s.c + s.r;
    const std::size_t tA = t.c, tB = t.c + t.r;
    Matrix<Field> k(f, m.top(arrow.source), m.top(arrow.target));
    k.set_block(sA, tB, h.block(sA, s.r, tA, t.r));    // k_AB = h_AA
    k.set_block(sA, 0, -h.block(sB, s.r, 0, t.c));     // k_AC = -h_BC
    k.set_block(0, tB, h.block(0, s.c, tA, t.r));      // k_CB = h_CA
    k.set_block(sA, tA, -h.block(sB, s.r, tA, t.r));   // k_AA = -h_BA
    w.correction.push_back(std::move(k));
  }

  auto split = conjugate(m, w);
  std::vector<std::size_t> tops, mults;
  std::vector<Matrix<Field>> g, h;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    tops.push_back(blocks[v].c);
    mults.push_back(blocks[v].r);
    g.emplace_back(f, blocks[v].c, blocks[v].c);
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    h.push_back(split.h(a).block(0, blocks[arrow.source].c, 0, blocks[arrow.target].c));
  }
  DiffProj<Field> reduced(q, f, std::move(tops), std::move(g), std::move(h));
  if (!(split == direct_sum(reduced, contractible_standard(q, f, mults)))) {
    throw InvariantViolation("reduce: conjugated module is not reduced (+) standard contractible");
  }
  return {std::move(reduced), std::move(mults), std::move(w)};
}

struct CohomologyDims {
  std::vector<std::size_t> per_vertex;
  std::size_t total = 0;
};

/// dim Ker D_j - rank D_j for the assembled differential at each vertex.
template <class Field>
CohomologyDims cohomology_dims(const DiffProj<Field>& m) {
  detail::require_valid(m);
  CohomologyDims out;
  for (std::size_t v = 0; v < m.quiver().vertex_count(); ++v) {
    auto d = assembled_differential(m, v);
    auto h = d.cols() - 2 * rank(d);
    out.per_vertex.push_back(h);
    out.total += h;
  }
  return out;
}

namespace detail {

/// Unknowns gf_i (n_i x m_i) then hf_a (n_s x m_t) for module maps M -> N.
template <class Field>
void add_morphism_unknowns(LinearSystem<Field>& sys, const DiffProj<Field>& m, const DiffProj<Field>& n) {
  const Quiver& q = m.quiver();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) sys.add_unknown(n.top(v), m.top(v));
  for (const auto& a : q.arrows()) sys.add_unknown(n.top(a.source), m.top(a.target));
}

/// f |-> sign_after * (delta f) + sign_before * (f d) in (top, radical)
/// components. With signs (+, -) this is the differential-map condition;
/// with (+, +) it is r |-> delta r + r d.
template <class Field>
LinearSystem<Field> commutator_system(const DiffProj<Field>& m, const DiffProj<Field>& n, bool anticommute) {
  const Quiver& q = m.quiver();
  const std::size_t nv = q.vertex_count();
  LinearSystem<Field> sys(m.field());
  add_morphism_unknowns(sys, m, n);
  const bool negate_before = !anticommute;
  for (std::size_t v = 0; v < nv; ++v) {
    auto eq = sys.add_equation(n.top(v), m.top(v));
    sys.add_left(eq, v, n.g(v));                         // delta_g gf
    sys.add_right(eq, v, m.g(v), negate_before);         // gf g
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    auto eq = sys.add_equation(n.top(arrow.source), m.top(arrow.target));
    // radical part of delta o f: delta_g_s hf + delta_h gf_t
    sys.add_left(eq, nv + a, n.g(arrow.source));
    sys.add_left(eq, arrow.target, n.h(a));
    // radical part of f o d: gf_s h + hf g_t
    sys.add_right(eq, arrow.source, m.h(a), negate_before);
    sys.add_right(eq, nv + a, m.g(arrow.target), negate_before);
  }
  return sys;
}

}  // namespace detail

/// Dimension of the space of module maps f : M -> N with delta f = f d.
template <class Field>
std::size_t diff_map_space_dim(const DiffProj<Field>& m, const DiffProj<Field>& n) {
  detail::require_compatible(m, n);
  auto sys = detail::commutator_system(m, n, false);
  return sys.unknown_count() - rank(sys.matrix());
}

/// Dimension of { r d + delta r : r a module map M -> N }.
template <class Field>
std::size_t null_homotopic_space_dim(const DiffProj<Field>& m, const DiffProj<Field>& n) {
  detail::require_compatible(m, n);
  return rank(detail::commutator_system(m, n, true).matrix());
}

/// Basis of the differential maps M -> N.
template <class Field>
std::vector<DiffMorphism<Field>> diff_map_basis(const DiffProj<Field>& m, const DiffProj<Field>& n) {
  detail::require_compatible(m, n);
  auto sys = detail::commutator_system(m, n, false);
  auto kernel = kernel_basis(sys.matrix());
  const std::size_t nv = m.quiver().vertex_count();
  std::vector<DiffMorphism<Field>> out;
  for (std::size_t k = 0; k < kernel.cols(); ++k) {
    auto parts = sys.unpack(kernel, k);
    DiffMorphism<Field> f;
    f.gf.assign(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>(nv));
    f.hf.assign(parts.begin() + static_cast<std::ptrdiff_t>(nv), parts.end());
    out.push_back(std::move(f));
  }
  return out;
}

/// dim of Hom in the homotopy category, by direct linear algebra on module
/// maps: differential maps modulo null-homotopic ones.
template <class Field>
std::size_t hom_homotopy_dim_bruteforce(const DiffProj<Field>& m, const DiffProj<Field>& n) {
  detail::require_valid(m);
  detail::require_valid(n);
  return diff_map_space_dim(m, n) - null_homotopic_space_dim(m, n);
}

/// The same dimension computed on the assembled modules: module maps are the
/// Q-representation morphisms of the underlying modules, and both conditions
/// are imposed on the assembled vertex matrices.
template <class Field>
std::size_t hom_homotopy_dim_assembled(const DiffProj<Field>& m, const DiffProj<Field>& n) {
  detail::require_compatible(m, n);
  detail::require_valid(m);
  detail::require_valid(n);
  const Field& f = m.field();
  auto rm = to_raw(m), rn = to_raw(n);
  auto basis = rep_hom_basis(rm.module, rn.module);
  const std::size_t nv = m.quiver().vertex_count();
  std::size_t entries = 0;
  for (std::size_t v = 0; v < nv; ++v) entries += rm.module.dim(v) * rn.module.dim(v);

  Matrix<Field> commutators(f, entries, basis.size()), homotopies(f, entries, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::size_t row = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      const auto& blk = basis[k].blocks[v];
      auto comm = rn.endo[v] * blk - blk * rm.endo[v];
      auto homo = rn.endo[v] * blk + blk * rm.endo[v];
      for (std::size_t i = 0; i < blk.rows(); ++i) {
        for (std::size_t j = 0; j < blk.cols(); ++j, ++row) {
          commutators(row, k) = comm(i, j);
          homotopies(row, k) = homo(i, j);
        }
      }
    }
  }
  return (basis.size() - rank(commutators)) - rank(homotopies);
}

}  // namespace kqj2

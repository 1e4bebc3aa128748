#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "kqj2/linear_system.hpp"
#include "kqj2/matrix.hpp"
#include "kqj2/quiver.hpp"

namespace kqj2 {

/// A finite-dimensional representation: one vector space per vertex and one
/// matrix per arrow, of shape dim(target) x dim(source).
template <class Field>
class Rep {
 public:
  using Mat = Matrix<Field>;

  Rep(Quiver quiver, Field field, std::vector<std::size_t> dims, std::vector<Mat> maps)
      : quiver_(std::move(quiver)), field_(std::move(field)), dims_(std::move(dims)), maps_(std::move(maps)) {
    if (dims_.size() != quiver_.vertex_count()) {
      throw DomainError(ErrorCode::Mismatch, "dimension vector length differs from vertex count");
    }
    if (maps_.size() != quiver_.arrow_count()) throw DomainError(ErrorCode::Mismatch, "need one map per arrow");
    for (std::size_t a = 0; a < maps_.size(); ++a) {
      const auto& arrow = quiver_.arrow(a);
      if (!(maps_[a].field() == field_) || maps_[a].rows() != dims_[arrow.target] ||
          maps_[a].cols() != dims_[arrow.source]) {
        throw DomainError(ErrorCode::Mismatch, "map of arrow '" + arrow.name + "' has the wrong shape");
      }
    }
  }

  /// All maps zero.
  static Rep zero_maps(Quiver quiver, Field field, std::vector<std::size_t> dims) {
    std::vector<Mat> maps;
    for (const auto& a : quiver.arrows()) maps.emplace_back(field, dims.at(a.target), dims.at(a.source));
    return Rep(std::move(quiver), std::move(field), std::move(dims), std::move(maps));
  }

  const Quiver& quiver() const { return quiver_; }
  const Field& field() const { return field_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t v) const { return dims_.at(v); }
  const std::vector<Mat>& maps() const { return maps_; }
  const Mat& map(std::size_t a) const { return maps_.at(a); }

  std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto d : dims_) s += d;
    return s;
  }

  bool operator==(const Rep& other) const {
    return quiver_ == other.quiver_ && field_ == other.field_ && dims_ == other.dims_ && maps_ == other.maps_;
  }

 private:
  Quiver quiver_;
  Field field_;
  std::vector<std::size_t> dims_;
  std::vector<Mat> maps_;
};

/// Per-vertex blocks of a morphism X -> Y, each of shape dim_Y(i) x dim_X(i).
template <class Field>
struct RepMorphism {
  std::vector<Matrix<Field>> blocks;

  bool operator==(const RepMorphism&) const = default;
};

namespace detail {

template <class Field>
void require_compatible(const Rep<Field>& x, const Rep<Field>& y) {
  if (!(x.quiver() == y.quiver())) throw DomainError(ErrorCode::Mismatch, "representations of different quivers");
  if (!(x.field() == y.field())) throw DomainError(ErrorCode::Mismatch, "representations over different fields");
}

/// theta |-> (theta_t X_a - Y_a theta_s)_a over all vertex-wise maps theta.
template <class Field>
LinearSystem<Field> intertwining_system(const Rep<Field>& x, const Rep<Field>& y) {
  require_compatible(x, y);
  const Quiver& q = x.quiver();
  LinearSystem<Field> sys(x.field());
  for (std::size_t v = 0; v < q.vertex_count(); ++v) sys.add_unknown(y.dim(v), x.dim(v));
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    auto eq = sys.add_equation(y.dim(arrow.target), x.dim(arrow.source));
    sys.add_right(eq, arrow.target, x.map(a));
    sys.add_left(eq, arrow.source, y.map(a), /*negate=*/true);
  }
  return sys;
}

}  // namespace detail

template <class Field>
bool is_intertwining(const Rep<Field>& x, const Rep<Field>& y, const RepMorphism<Field>& f) {
  detail::require_compatible(x, y);
  const Quiver& q = x.quiver();
  if (f.blocks.size() != q.vertex_count()) return false;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (f.blocks[v].rows() != y.dim(v) || f.blocks[v].cols() != x.dim(v)) return false;
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    if (!(f.blocks[arrow.target] * x.map(a) == y.map(a) * f.blocks[arrow.source])) return false;
  }
  return true;
}

/// Basis of Hom(X, Y): the kernel of the intertwining system.
template <class Field>
std::vector<RepMorphism<Field>> rep_hom_basis(const Rep<Field>& x, const Rep<Field>& y) {
  auto sys = detail::intertwining_system(x, y);
  auto kernel = kernel_basis(sys.matrix());
  std::vector<RepMorphism<Field>> out;
  out.reserve(kernel.cols());
  for (std::size_t k = 0; k < kernel.cols(); ++k) out.push_back({sys.unpack(kernel, k)});
  return out;
}

template <class Field>
std::size_t rep_hom_dim(const Rep<Field>& x, const Rep<Field>& y) {
  auto sys = detail::intertwining_system(x, y);
  return sys.unknown_count() - rank(sys.matrix());
}

/// dim Ext^1(X, Y) = dim E(X, Y) - rank of theta |-> (theta_t X_a - Y_a theta_s)_a,
/// where E(X, Y) is the space of all arrow-indexed maps X_s(a) -> Y_t(a).
template <class Field>
std::size_t rep_ext1_dim(const Rep<Field>& x, const Rep<Field>& y) {
  auto sys = detail::intertwining_system(x, y);
  return sys.equation_count() - rank(sys.matrix());
}

/// dim Hom and dim Ext^1 from a single rank computation.
template <class Field>
std::pair<std::size_t, std::size_t> rep_hom_ext_dims(const Rep<Field>& x, const Rep<Field>& y) {
  auto sys = detail::intertwining_system(x, y);
  auto r = rank(sys.matrix());
  return {sys.unknown_count() - r, sys.equation_count() - r};
}

inline long long euler_pairing(const Quiver& q, const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
  if (x.size() != q.vertex_count() || y.size() != q.vertex_count()) {
    throw DomainError(ErrorCode::Mismatch, "dimension vectors must be indexed by the vertices");
  }
  long long s = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) s += static_cast<long long>(x[v] * y[v]);
  for (const auto& a : q.arrows()) s -= static_cast<long long>(x[a.source] * y[a.target]);
  return s;
}

/// Sign twist: arrows have length one, so every arrow map is negated.
template <class Field>
Rep<Field> twist_sigma(const Rep<Field>& x) {
  std::vector<Matrix<Field>> maps;
  for (const auto& m : x.maps()) maps.push_back(-m);
  return Rep<Field>(x.quiver(), x.field(), x.dims(), std::move(maps));
}

template <class Field>
Rep<Field> simple(const Quiver& q, const Field& field, std::size_t vertex) {
  if (vertex >= q.vertex_count()) throw DomainError(ErrorCode::InvalidArgument, "vertex index out of range");
  std::vector<std::size_t> dims(q.vertex_count(), 0);
  dims[vertex] = 1;
  return Rep<Field>::zero_maps(q, field, std::move(dims));
}

/// kQ_0 as a representation: the sum of all simples.
template <class Field>
Rep<Field> semisimple_kQ0(const Quiver& q, const Field& field) {
  return Rep<Field>::zero_maps(q, field, std::vector<std::size_t>(q.vertex_count(), 1));
}

template <class Field>
Rep<Field> direct_sum(const Rep<Field>& x, const Rep<Field>& y) {
  detail::require_compatible(x, y);
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < x.quiver().vertex_count(); ++v) dims.push_back(x.dim(v) + y.dim(v));
  std::vector<Matrix<Field>> maps;
  for (std::size_t a = 0; a < x.quiver().arrow_count(); ++a) maps.push_back(direct_sum(x.map(a), y.map(a)));
  return Rep<Field>(x.quiver(), x.field(), std::move(dims), std::move(maps));
}

/// A path as its arrows in traversal order (first arrow first), together
/// with its endpoints; trivial paths have no arrows.
struct Path {
  std::size_t source;
  std::size_t target;
  std::vector<std::size_t> arrows;
};

/// All paths of length < max_length, ordered by (length, arrow sequence).
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t max_length) {
  std::vector<Path> out;
  if (max_length == 0) return out;
  std::vector<Path> layer;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) layer.push_back({v, v, {}});
  for (std::size_t len = 0; len < max_length && !layer.empty(); ++len) {
    // Trivial paths sort by vertex, the rest by arrow sequence.
    std::sort(layer.begin(), layer.end(), [](const Path& a, const Path& b) {
      if (a.arrows.empty() && b.arrows.empty()) return a.source < b.source;
      return a.arrows < b.arrows;
    });
    out.insert(out.end(), layer.begin(), layer.end());
    std::vector<Path> next;
    for (const auto& p : layer) {
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        if (q.arrow(a).source != p.target) continue;
        Path ext = p;
        ext.arrows.push_back(a);
        ext.target = q.arrow(a).target;
        next.push_back(std::move(ext));
      }
    }
    layer = std::move(next);
  }
  return out;
}

/// The module kQ / (paths of length >= N): at vertex j the basis is every
/// path ending at j of length < N, ordered by (length, arrow sequence). An
/// arrow a sends p to a.p when that path is still shorter than N, else to 0.
template <class Field>
Rep<Field> path_truncation(const Quiver& q, const Field& field, std::size_t max_length) {
  if (max_length < 1) throw DomainError(ErrorCode::InvalidArgument, "path truncation needs N >= 1");
  auto paths = enumerate_paths(q, max_length);
  std::vector<std::vector<std::size_t>> basis(q.vertex_count());
  std::vector<std::size_t> position(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    auto& b = basis[paths[i].target];
    position[i] = b.size();
    b.push_back(i);
  }
  std::vector<std::size_t> dims;
  for (const auto& b : basis) dims.push_back(b.size());

  auto find_path = [&](std::size_t source, const std::vector<std::size_t>& arrows) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < paths.size(); ++i) {
      if (paths[i].source == source && paths[i].arrows == arrows) return i;
    }
    return std::nullopt;
  };

  std::vector<Matrix<Field>> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    Matrix<Field> m(field, dims[arrow.target], dims[arrow.source]);
    for (std::size_t col = 0; col < basis[arrow.source].size(); ++col) {
      const Path& p = paths[basis[arrow.source][col]];
      auto extended = p.arrows;
      extended.push_back(a);
      if (auto hit = find_path(p.source, extended)) m(position[*hit], col) = field.one();
    }
    maps.push_back(std::move(m));
  }
  return Rep<Field>(q, field, std::move(dims), std::move(maps));
}

template <class Field>
struct Iso {
  RepMorphism<Field> witness;
};
struct NotIso {
  std::string reason;
};
struct Inconclusive {};

template <class Field>
using IsoVerdict = std::variant<Iso<Field>, NotIso, Inconclusive>;

/// Randomized isomorphism test. Iso carries a checked witness and NotIso is
/// certified by a dimension invariant; only Inconclusive is uncertain.
template <class Field>
IsoVerdict<Field> iso_probe(const Rep<Field>& x, const Rep<Field>& y, std::size_t trials = 8,
                            std::uint64_t seed = 0x5eed) {
  detail::require_compatible(x, y);
  if (x.dims() != y.dims()) return NotIso{"dimension vectors differ"};
  auto basis = rep_hom_basis(x, y);
  const auto hom_xy = basis.size();
  const auto hom_yx = rep_hom_dim(y, x);
  if (hom_xy != hom_yx) {
    return NotIso{"dim Hom(X,Y) = " + std::to_string(hom_xy) + " but dim Hom(Y,X) = " + std::to_string(hom_yx)};
  }
  const auto end_x = rep_hom_dim(x, x);
  if (hom_xy != end_x) {
    return NotIso{"dim Hom(X,Y) = " + std::to_string(hom_xy) + " but dim End(X) = " + std::to_string(end_x)};
  }
  if (hom_xy == 0 && x.total_dim() > 0) return NotIso{"Hom(X,Y) = 0"};

  const auto& f = x.field();
  const Quiver& q = x.quiver();
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    RepMorphism<Field> candidate;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) candidate.blocks.emplace_back(f, y.dim(v), x.dim(v));
    for (const auto& b : basis) {
      auto c = f.random(rng, 100);
      for (std::size_t v = 0; v < q.vertex_count(); ++v) candidate.blocks[v] = candidate.blocks[v] + scale(c, b.blocks[v]);
    }
    bool invertible = true;
    for (const auto& blk : candidate.blocks) invertible = invertible && is_invertible(blk);
    if (invertible) return Iso<Field>{std::move(candidate)};
  }
  return Inconclusive{};
}

}  // namespace kqj2

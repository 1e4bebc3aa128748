#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kqj2/errors.hpp"

namespace kqj2 {

struct Arrow {
  std::string name;
  std::size_t source;
  std::size_t target;

  bool operator==(const Arrow&) const = default;
};

/// Finite quiver with named vertices and arrows. Loops and parallel arrows
/// are allowed. Internal indices follow declaration order.
class Quiver {
 public:
  Quiver() = default;

  std::size_t add_vertex(const std::string& name) {
    if (name.empty()) throw DomainError(ErrorCode::InvalidArgument, "empty vertex name");
    if (vertex_index_.count(name)) throw DomainError(ErrorCode::DuplicateName, "vertex '" + name + "' declared twice");
    vertex_index_.emplace(name, vertices_.size());
    vertices_.push_back(name);
    return vertices_.size() - 1;
  }

  std::size_t add_arrow(const std::string& name, std::size_t source, std::size_t target) {
    if (name.empty()) throw DomainError(ErrorCode::InvalidArgument, "empty arrow name");
    if (arrow_index_.count(name)) throw DomainError(ErrorCode::DuplicateName, "arrow '" + name + "' declared twice");
    if (source >= vertices_.size() || target >= vertices_.size()) {
      throw DomainError(ErrorCode::UnknownName, "arrow '" + name + "' has an undeclared endpoint");
    }
    arrow_index_.emplace(name, arrows_.size());
    arrows_.push_back({name, source, target});
    return arrows_.size() - 1;
  }

  std::size_t add_arrow(const std::string& name, const std::string& source, const std::string& target) {
    auto s = find_vertex(source), t = find_vertex(target);
    if (!s) throw DomainError(ErrorCode::UnknownName, "unknown vertex '" + source + "'");
    if (!t) throw DomainError(ErrorCode::UnknownName, "unknown vertex '" + target + "'");
    return add_arrow(name, *s, *t);
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  bool empty() const { return vertices_.empty(); }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::string& vertex_name(std::size_t i) const { return vertices_.at(i); }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }

  std::optional<std::size_t> find_vertex(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_arrow(const std::string& name) const {
    auto it = arrow_index_.find(name);
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Arrows ending at `v`, in declaration order.
  std::vector<std::size_t> arrows_into(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < arrows_.size(); ++a) {
      if (arrows_[a].target == v) out.push_back(a);
    }
    return out;
  }

  std::vector<std::size_t> arrows_out_of(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < arrows_.size(); ++a) {
      if (arrows_[a].source == v) out.push_back(a);
    }
    return out;
  }

  bool operator==(const Quiver& other) const { return vertices_ == other.vertices_ && arrows_ == other.arrows_; }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, std::size_t> vertex_index_;
  std::map<std::string, std::size_t> arrow_index_;
};

/// Name of the reversed arrow: `a` <-> `a*`. An involution on names, so
/// opposite(opposite(Q)) == Q exactly.
inline std::string opposite_arrow_name(const std::string& name) {
  if (name.size() > 1 && name.back() == '*') return name.substr(0, name.size() - 1);
  return name + "*";
}

inline Quiver opposite(const Quiver& q) {
  Quiver out;
  for (const auto& v : q.vertices()) out.add_vertex(v);
  for (const auto& a : q.arrows()) out.add_arrow(opposite_arrow_name(a.name), a.target, a.source);
  return out;
}

/// Kahn's algorithm: acyclic iff every vertex can be peeled off.
inline bool is_acyclic(const Quiver& q) {
  std::vector<std::size_t> indegree(q.vertex_count(), 0);
  for (const auto& a : q.arrows()) ++indegree[a.target];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++removed;
    for (const auto& a : q.arrows()) {
      if (a.source == v && --indegree[a.target] == 0) ready.push_back(a.target);
    }
  }
  return removed == q.vertex_count();
}

/// Component label per vertex for the underlying undirected graph; labels are
/// numbered in order of each component's first vertex.
inline std::vector<std::size_t> component_labels(const Quiver& q) {
  const std::size_t none = q.vertex_count();
  std::vector<std::size_t> label(q.vertex_count(), none);
  std::size_t next = 0;
  for (std::size_t start = 0; start < q.vertex_count(); ++start) {
    if (label[start] != none) continue;
    std::vector<std::size_t> stack{start};
    label[start] = next;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (const auto& a : q.arrows()) {
        for (auto [from, to] : {std::pair{a.source, a.target}, std::pair{a.target, a.source}}) {
          if (from == v && label[to] == none) {
            label[to] = next;
            stack.push_back(to);
          }
        }
      }
    }
    ++next;
  }
  return label;
}

inline bool is_connected(const Quiver& q) {
  if (q.empty()) return false;
  auto labels = component_labels(q);
  return std::all_of(labels.begin(), labels.end(), [](std::size_t l) { return l == 0; });
}

/// Full subquivers on each connected component, keeping declaration order.
inline std::vector<Quiver> connected_components(const Quiver& q) {
  auto labels = component_labels(q);
  std::size_t count = 0;
  for (auto l : labels) count = std::max(count, l + 1);
  std::vector<Quiver> out(count);
  std::vector<std::size_t> local(q.vertex_count());
  for (std::size_t v = 0; v < q.vertex_count(); ++v) local[v] = out[labels[v]].add_vertex(q.vertex_name(v));
  for (const auto& a : q.arrows()) out[labels[a.source]].add_arrow(a.name, local[a.source], local[a.target]);
  return out;
}

inline bool is_basic_cycle(const Quiver& q) {
  if (!is_connected(q) || q.vertex_count() != q.arrow_count()) return false;
  std::vector<std::size_t> in(q.vertex_count(), 0), out(q.vertex_count(), 0);
  for (const auto& a : q.arrows()) {
    ++out[a.source];
    ++in[a.target];
  }
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (in[v] != 1 || out[v] != 1) return false;
  }
  return true;
}

enum class Verdict { Gorenstein, Selfinjective, NotVirtuallyGorenstein };
enum class Shape { Acyclic, BasicCycle, CyclicNonBasic };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Gorenstein: return "Gorenstein";
    case Verdict::Selfinjective: return "Selfinjective";
    case Verdict::NotVirtuallyGorenstein: return "NotVirtuallyGorenstein";
  }
  return "?";
}

inline const char* to_string(Shape s) {
  switch (s) {
    case Shape::Acyclic: return "acyclic";
    case Shape::BasicCycle: return "basic cycle";
    case Shape::CyclicNonBasic: return "cyclic non-basic";
  }
  return "?";
}

struct ComponentVerdict {
  Quiver component;
  Verdict verdict;
  Shape shape;
};

struct ClassificationVerdict {
  std::vector<ComponentVerdict> components;
};

/// Decides, per connected component, whether the dual-number extension of
/// kQ/J^2 is Gorenstein (acyclic quiver), selfinjective (basic cycle), or
/// not virtually Gorenstein (any other quiver with an oriented cycle).
inline ClassificationVerdict classify_algebra(const Quiver& q) {
  if (q.empty()) throw DomainError(ErrorCode::EmptyQuiver, "cannot classify the empty quiver");
  ClassificationVerdict out;
  for (auto& c : connected_components(q)) {
    if (is_acyclic(c)) {
      out.components.push_back({std::move(c), Verdict::Gorenstein, Shape::Acyclic});
    } else if (is_basic_cycle(c)) {
      out.components.push_back({std::move(c), Verdict::Selfinjective, Shape::BasicCycle});
    } else {
      out.components.push_back({std::move(c), Verdict::NotVirtuallyGorenstein, Shape::CyclicNonBasic});
    }
  }
  return out;
}

/// Length of the longest path; only meaningful for acyclic quivers.
inline std::size_t longest_path_length(const Quiver& q) {
  if (!is_acyclic(q)) throw DomainError(ErrorCode::NotAcyclic, "quiver has an oriented cycle");
  std::vector<std::size_t> best(q.vertex_count(), 0);
  // Relaxing |Q0| times suffices in a DAG.
  for (std::size_t round = 0; round < q.vertex_count(); ++round) {
    for (const auto& a : q.arrows()) best[a.target] = std::max(best[a.target], best[a.source] + 1);
  }
  std::size_t out = 0;
  for (auto b : best) out = std::max(out, b);
  return out;
}

}  // namespace kqj2

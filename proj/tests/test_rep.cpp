#include <catch_amalgamated.hpp>

#include <set>

#include "support/random_instances.hpp"

using namespace kqj2;
using namespace kqj2::testing;

namespace {

const RationalField QQ{};

template <class Field>
Rep<Field> rep1(const Quiver& q, const Field& f, std::vector<std::size_t> dims,
                std::vector<Matrix<Field>> maps) {
  return Rep<Field>(q, f, std::move(dims), std::move(maps));
}

Rep<RationalField> loop_rep(long long lambda) {
  return rep1(loop_quiver(), QQ, {1}, {Matrix<RationalField>::from_rows(QQ, {{lambda}})});
}

/// The triangle module with every space k and every arrow the identity.
template <class Field>
Rep<Field> triangle_x(const Field& f) {
  auto one = Matrix<Field>::from_rows(f, {{1}});
  return rep1(triangle_quiver(), f, {1, 1, 1}, {one, one, one});
}

struct BruteHomExt {
  std::size_t hom = 0;
  std::size_t ext = 0;
};

// Enumerates every tuple theta over F_p. Hom = log_p #{theta : Theta(theta) = 0};
// Ext^1 = dim E - log_p #image(Theta).
BruteHomExt brute_hom_ext(const Rep<PrimeField>& x, const Rep<PrimeField>& y) {
  const Quiver& q = x.quiver();
  const auto p = x.field().modulus();
  std::size_t unknowns = 0, e_dim = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) unknowns += x.dim(v) * y.dim(v);
  for (const auto& a : q.arrows()) e_dim += x.dim(a.source) * y.dim(a.target);
  std::size_t total = 1;
  for (std::size_t i = 0; i < unknowns; ++i) total *= p;
  std::size_t kernel = 0;
  std::set<std::vector<std::uint32_t>> image;
  std::vector<std::uint32_t> digits(unknowns, 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t k = n;
    for (auto& d : digits) {
      d = static_cast<std::uint32_t>(k % p);
      k /= p;
    }
    std::vector<Matrix<PrimeField>> theta;
    std::size_t pos = 0;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      Matrix<PrimeField> t(x.field(), y.dim(v), x.dim(v));
      for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) = digits[pos++];
      }
      theta.push_back(std::move(t));
    }
    std::vector<std::uint32_t> value;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& arrow = q.arrow(a);
      auto r = theta[arrow.target] * x.map(a) - y.map(a) * theta[arrow.source];
      value.insert(value.end(), r.data().begin(), r.data().end());
    }
    if (std::all_of(value.begin(), value.end(), [](auto c) { return c == 0; })) ++kernel;
    image.insert(std::move(value));
  }
  auto log_p = [p](std::size_t n) {
    std::size_t r = 0;
    for (; n > 1; n /= p) ++r;
    return r;
  };
  return {log_p(kernel), e_dim - log_p(image.size())};
}

}  // namespace

TEST_CASE("rep shape validation") {
  auto q = a2_quiver();
  CHECK_THROWS_AS(rep1(q, QQ, {1, 2}, {Matrix<RationalField>(QQ, 1, 1)}), DomainError);
  CHECK_THROWS_AS(rep1(q, QQ, {1}, {}), DomainError);
  auto ok = rep1(q, QQ, {1, 2}, {Matrix<RationalField>(QQ, 2, 1)});
  CHECK(ok.total_dim() == 3);
}

TEST_CASE("hom between simples") {
  auto q = a3_quiver();
  for (std::size_t v = 0; v < 3; ++v) {
    CHECK(rep_hom_dim(simple(q, QQ, v), simple(q, QQ, v)) == 1);
    CHECK(rep_hom_dim(simple(q, QQ, v), simple(q, QQ, (v + 1) % 3)) == 0);
  }
}

TEST_CASE("loop quiver hom and ext") {
  CHECK(rep_hom_dim(loop_rep(1), loop_rep(1)) == 1);
  CHECK(rep_ext1_dim(loop_rep(0), loop_rep(0)) == 1);
  CHECK(rep_ext1_dim(loop_rep(1), loop_rep(-1)) == 0);
  PrimeField f2(2);
  auto one = Matrix<PrimeField>::from_rows(f2, {{1}});
  auto x = rep1(loop_quiver(), f2, {1}, {one});
  CHECK(rep_ext1_dim(x, twist_sigma(x)) == 1);
}

TEST_CASE("projective of A2 has no extensions") {
  auto regular = path_truncation(a2_quiver(), QQ, 5);
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    auto y = random_rep(rng, a2_quiver(), QQ, 3);
    CHECK(rep_ext1_dim(regular, y) == 0);
  }
}

TEST_CASE("euler pairing examples") {
  CHECK(euler_pairing(loop_quiver(), {1}, {1}) == 0);
  CHECK(euler_pairing(a2_quiver(), {1, 0}, {0, 1}) == -1);
  CHECK(euler_pairing(triangle_quiver(), {1, 2, 3}, {0, 0, 0}) == 0);
}

TEST_CASE("sign twist") {
  auto q = triangle_quiver();
  auto zero = Rep<RationalField>::zero_maps(q, QQ, {1, 2, 1});
  CHECK(twist_sigma(zero) == zero);
  Rng rng(32);
  for (int t = 0; t < 20; ++t) {
    auto x = random_rep(rng, q, QQ, 3);
    CHECK(twist_sigma(twist_sigma(x)) == x);
  }
  PrimeField f2(2);
  auto x2 = random_rep(rng, q, f2, 3);
  CHECK(twist_sigma(x2) == x2);
}

TEST_CASE("the triangle module and its twist") {
  auto x = triangle_x(QQ);
  auto sx = twist_sigma(x);
  for (const auto& m : sx.maps()) CHECK(m == Matrix<RationalField>::from_rows(QQ, {{-1}}));
  CHECK(rep_hom_dim(x, sx) == 0);
  CHECK(std::holds_alternative<NotIso>(iso_probe(x, sx)));
  PrimeField f3(3);
  CHECK(rep_hom_dim(triangle_x(f3), twist_sigma(triangle_x(f3))) == 0);
  PrimeField f2(2);
  CHECK(twist_sigma(triangle_x(f2)) == triangle_x(f2));
  CHECK(std::holds_alternative<Iso<PrimeField>>(iso_probe(triangle_x(f2), twist_sigma(triangle_x(f2)))));
}

TEST_CASE("simples and the semisimple module") {
  auto s = simple(a2_quiver(), QQ, 0);
  CHECK(s.dims() == std::vector<std::size_t>{1, 0});
  auto ss = semisimple_kQ0(loop_quiver(), QQ);
  CHECK(ss.dims() == std::vector<std::size_t>{1});
  CHECK(ss.map(0).is_zero());
  Rng rng(33);
  auto q = triangle_quiver();
  for (int t = 0; t < 20; ++t) {
    auto x = random_rep(rng, q, QQ, 3);
    std::size_t sum = 0;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) sum += rep_hom_dim(simple(q, QQ, v), x);
    CHECK(rep_hom_dim(semisimple_kQ0(q, QQ), x) == sum);
  }
}

TEST_CASE("path truncation") {
  auto q = triangle_quiver();
  auto n1 = path_truncation(q, QQ, 1);
  CHECK(n1 == semisimple_kQ0(q, QQ));
  auto loop3 = path_truncation(loop_quiver(), QQ, 3);
  CHECK(loop3.dims() == std::vector<std::size_t>{3});
  CHECK(loop3.map(0) == Matrix<RationalField>::from_rows(QQ, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
  auto a2 = path_truncation(a2_quiver(), QQ, 2);
  CHECK(a2.dims() == std::vector<std::size_t>{1, 2});
  CHECK(a2.map(0) == Matrix<RationalField>::from_rows(QQ, {{0}, {1}}));
  CHECK_THROWS_AS(path_truncation(q, QQ, 0), DomainError);
  CHECK(path_truncation(q, QQ, 3) == path_truncation(q, QQ, 7));
}

TEST_CASE("iso probe") {
  auto q = triangle_quiver();
  Rng rng(34);
  for (int t = 0; t < 10; ++t) {
    auto x = random_rep(rng, q, QQ, 2);
    auto verdict = iso_probe(x, x);
    REQUIRE(std::holds_alternative<Iso<RationalField>>(verdict));
    CHECK(is_intertwining(x, x, {std::get<Iso<RationalField>>(verdict).witness}));
  }
  auto a = simple(a2_quiver(), QQ, 0), b = simple(a2_quiver(), QQ, 1);
  CHECK(std::holds_alternative<NotIso>(iso_probe(a, b)));
  // Same dimension vector, different modules.
  auto regular = path_truncation(a2_quiver(), QQ, 2);
  auto split = direct_sum(direct_sum(simple(a2_quiver(), QQ, 0), simple(a2_quiver(), QQ, 1)), simple(a2_quiver(), QQ, 1));
  CHECK(std::holds_alternative<NotIso>(iso_probe(regular, split)));
  // Conjugating a random rep by a random base change gives an isomorphic one.
  for (int t = 0; t < 10; ++t) {
    auto x = random_rep(rng, q, QQ, 2);
    std::vector<Matrix<RationalField>> s, maps;
    for (auto d : x.dims()) s.push_back(random_invertible(rng, QQ, d));
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      maps.push_back(s[q.arrow(a).target] * x.map(a) * inverse(s[q.arrow(a).source]));
    }
    auto y = rep1(q, QQ, x.dims(), maps);
    CHECK(std::holds_alternative<Iso<RationalField>>(iso_probe(x, y)));
  }
}

TEST_CASE("hom basis elements intertwine") {
  Rng rng(35);
  for (int t = 0; t < 40; ++t) {
    auto q = random_quiver(rng, 4, 5);
    auto x = random_rep(rng, q, QQ, 3);
    auto y = random_rep(rng, q, QQ, 3);
    auto basis = rep_hom_basis(x, y);
    CHECK(basis.size() == rep_hom_dim(x, y));
    for (const auto& f : basis) CHECK(is_intertwining(x, y, f));
  }
}

TEST_CASE("hom and ext agree with exhaustive enumeration over F2 and F3") {
  Rng rng(36);
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField f(p);
    int done = 0;
    while (done < 60) {
      auto q = random_quiver(rng, 3, 4);
      auto x = random_rep(rng, q, f, 2);
      auto y = random_rep(rng, q, f, 2);
      std::size_t unknowns = 0;
      for (std::size_t v = 0; v < q.vertex_count(); ++v) unknowns += x.dim(v) * y.dim(v);
      if (unknowns > (p == 2 ? 10u : 7u)) continue;
      auto brute = brute_hom_ext(x, y);
      CHECK(rep_hom_dim(x, y) == brute.hom);
      CHECK(rep_ext1_dim(x, y) == brute.ext);
      ++done;
    }
  }
}

TEST_CASE("euler identity, ext bound and additivity") {
  Rng rng(37);
  PrimeField f5(5);
  for (int t = 0; t < 60; ++t) {
    auto q = random_quiver(rng, 4, 6);
    auto x = random_rep(rng, q, f5, 3);
    auto y = random_rep(rng, q, f5, 3);
    auto z = random_rep(rng, q, f5, 2);
    auto [hom, ext] = rep_hom_ext_dims(x, y);
    CHECK(static_cast<long long>(hom) - static_cast<long long>(ext) == euler_pairing(q, x.dims(), y.dims()));
    std::size_t e_dim = 0;
    for (const auto& a : q.arrows()) e_dim += x.dim(a.source) * y.dim(a.target);
    CHECK(ext <= e_dim);
    CHECK(rep_hom_dim(direct_sum(x, z), y) == rep_hom_dim(x, y) + rep_hom_dim(z, y));
    CHECK(rep_ext1_dim(x, direct_sum(y, z)) == rep_ext1_dim(x, y) + rep_ext1_dim(x, z));
  }
}

TEST_CASE("mismatched quivers are rejected") {
  auto x = simple(a2_quiver(), QQ, 0);
  auto y = simple(a3_quiver(), QQ, 0);
  CHECK_THROWS_AS(rep_hom_dim(x, y), DomainError);
}

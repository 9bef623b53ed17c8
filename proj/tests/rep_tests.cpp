#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "arknit/field.hpp"
#include "arknit/rep.hpp"
#include "test_util.hpp"

using namespace arknit;

namespace {

const char* kA3 = "1;2;3; a:2->1; b:3->2";
const char* kTriangle = "1;2;3; a:3->2; b:2->1; c:3->1";

}  // namespace

TEST_CASE("projective dimensions on A3") {
  Quiver q = Quiver::parse_dsl(kA3);
  QQ f;
  CHECK(projective_rep(q, f, 0).dims() == std::vector<int>{1, 0, 0});
  CHECK(projective_rep(q, f, 1).dims() == std::vector<int>{1, 1, 0});
  CHECK(projective_rep(q, f, 2).dims() == std::vector<int>{1, 1, 1});
  CHECK(injective_rep(q, f, 0).dims() == std::vector<int>{1, 1, 1});
  CHECK(injective_rep(q, f, 1).dims() == std::vector<int>{0, 1, 1});
  CHECK(injective_rep(q, f, 2).dims() == std::vector<int>{0, 0, 1});
}

TEST_CASE("projective dimensions on the triangle quiver") {
  Quiver q = Quiver::parse_dsl(kTriangle);
  QQ f;
  CHECK(projective_rep(q, f, 2).dims() == std::vector<int>{2, 1, 1});
  CHECK(projective_rep(q, f, 1).dims() == std::vector<int>{1, 1, 0});
  CHECK(injective_rep(q, f, 0).dims() == std::vector<int>{1, 1, 2});
}

TEST_CASE("path action on a projective") {
  Quiver q = Quiver::parse_dsl(kA3);
  QQ f;
  Rep<QQ> p3 = projective_rep(q, f, 2);
  Path ba{q.arrow_index("b"), q.arrow_index("a")};
  Matrix<QQ> m = p3.path_action(2, ba);
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 1);
  CHECK(m.at(0, 0) == f.one());
  CHECK_THROWS_AS(p3.path_action(0, ba), CheckError);
}

TEST_CASE("morphism constructor enforces naturality") {
  Quiver q = Quiver::parse_dsl("1;2; a:2->1");
  QQ f;
  Rep<QQ> p2 = projective_rep(q, f, 1);  // dims (1,1), identity arrow map
  std::vector<Matrix<QQ>> good{Matrix<QQ>::identity(f, 1),
                               Matrix<QQ>::identity(f, 1)};
  CHECK_NOTHROW(RepMorphism<QQ>(p2, p2, good));
  std::vector<Matrix<QQ>> bad{Matrix<QQ>::identity(f, 1),
                              Matrix<QQ>::identity(f, 1).scaled(f.from_int(2))};
  CHECK_THROWS_AS(RepMorphism<QQ>(p2, p2, bad), CheckError);
}

TEST_CASE("morphism algebra") {
  Quiver q = Quiver::parse_dsl(kA3);
  QQ f;
  Rep<QQ> p3 = projective_rep(q, f, 2);
  RepMorphism<QQ> id = RepMorphism<QQ>::identity(p3);
  CHECK(id * id == id);
  CHECK((id - id).is_zero());
  CHECK(id.scaled(f.from_int(3)) == id + id + id);
  RepMorphism<QQ> z = RepMorphism<QQ>::zero(p3, p3);
  CHECK((id * z).is_zero());
}

TEST_CASE("hom from a projective picks out the fiber dimension") {
  std::mt19937 rng(101u);
  QQ f;
  for (const char* text : {kA3, kTriangle}) {
    Quiver q = Quiver::parse_dsl(text);
    for (int trial = 0; trial < 20; ++trial) {
      Rep<QQ> m = testutil::random_rep(q, f, rng);
      for (int i = 0; i < q.n_vertices(); ++i) {
        CHECK(hom_dim(projective_rep(q, f, i), m) == m.dim(i));
        CHECK(hom_dim(m, injective_rep(q, f, i)) == m.dim(i));
        CHECK(ext1_dim(projective_rep(q, f, i), m) == 0);
        CHECK(ext1_dim(m, injective_rep(q, f, i)) == 0);
      }
    }
  }
}

TEST_CASE("hom_space returns a basis of checked morphisms") {
  std::mt19937 rng(102u);
  QQ f;
  Quiver q = Quiver::parse_dsl(kA3);
  Rep<QQ> m = testutil::random_rep(q, f, rng);
  Rep<QQ> n = testutil::random_rep(q, f, rng);
  auto basis = hom_space(m, n);
  CHECK(static_cast<int>(basis.size()) == hom_dim(m, n));
  // The path b.a runs 3 -> 1, so it induces P_1 -> P_3 and nothing back.
  CHECK(hom_dim(projective_rep(q, f, 0), projective_rep(q, f, 2)) == 1);
  CHECK(hom_dim(projective_rep(q, f, 2), projective_rep(q, f, 0)) == 0);
  auto maps = hom_space(projective_rep(q, f, 0), projective_rep(q, f, 2));
  REQUIRE(maps.size() == 1);
  CHECK_FALSE(maps[0].is_zero());
}

TEST_CASE("ext1 of the A3 simple at 2 against P_1") {
  Quiver q = Quiver::parse_dsl(kA3);
  QQ f;
  Rep<QQ> s2 = simple_rep(q, f, 1);
  Rep<QQ> p1 = projective_rep(q, f, 0);
  CHECK(hom_dim(s2, p1) == 0);
  CHECK(euler_form(q, s2.dims(), p1.dims()) == -1);
  CHECK(ext1_dim(s2, p1) == 1);
}

TEST_CASE("hom minus ext matches the Euler form") {
  std::mt19937 rng(103u);
  for (const char* text : {kA3, kTriangle}) {
    Quiver q = Quiver::parse_dsl(text);
    GF f(5);
    for (int trial = 0; trial < 25; ++trial) {
      Rep<GF> m = testutil::random_rep(q, f, rng);
      Rep<GF> n = testutil::random_rep(q, f, rng);
      long long lhs = hom_dim(m, n) - ext1_dim(m, n);
      CHECK(lhs == euler_form(q, m.dims(), n.dims()));
    }
  }
}

TEST_CASE("direct sum bookkeeping") {
  Quiver q = Quiver::parse_dsl(kA3);
  QQ f;
  std::vector<Rep<QQ>> parts{projective_rep(q, f, 0), projective_rep(q, f, 2),
                             injective_rep(q, f, 1)};
  DirectSum<QQ> s = direct_sum(q, f, parts);
  CHECK(s.rep.dims() == std::vector<int>{2, 2, 2});
  for (int k = 0; k < 3; ++k) {
    auto in_k = s.inclusion(k);
    auto pr_k = s.projection(k);
    CHECK(pr_k * in_k == RepMorphism<QQ>::identity(parts[k]));
    for (int l = 0; l < 3; ++l)
      if (l != k) CHECK((s.projection(l) * in_k).is_zero());
  }
}

TEST_CASE("random morphisms are natural by construction") {
  std::mt19937 rng(104u);
  Quiver q = Quiver::parse_dsl(kTriangle);
  GF f(7);
  for (int trial = 0; trial < 10; ++trial) {
    Rep<GF> m = testutil::random_rep(q, f, rng);
    Rep<GF> n = testutil::random_rep(q, f, rng);
    CHECK_NOTHROW(testutil::random_morphism(m, n, rng));
  }
}

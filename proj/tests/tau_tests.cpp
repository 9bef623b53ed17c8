#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "arknit/field.hpp"
#include "arknit/tau.hpp"
#include "test_util.hpp"

using namespace arknit;

namespace {

const char* kA3 = "1;2;3; a:2->1; b:3->2";
const char* kTriangle = "1;2;3; a:3->2; b:2->1; c:3->1";
const char* kD4 = "0;1;2;3; a:1->0; b:2->0; c:3->0";

template <class F>
bool contains_iso(const Rep<F>& m, const Rep<F>& n) {
  if (m.dims() != n.dims()) return false;
  for (const auto& h : hom_space(m, n)) {
    bool inv = true;
    for (int v = 0; v < m.quiver().n_vertices() && inv; ++v)
      inv = rref(h.mat(v)).rank() == m.dim(v);
    if (inv) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("dual representation is an involution") {
  std::mt19937 rng(301u);
  Quiver q = Quiver::parse_dsl(kTriangle);
  GF f(5);
  for (int trial = 0; trial < 10; ++trial) {
    Rep<GF> m = testutil::random_rep(q, f, rng);
    Rep<GF> dd = dual_rep(dual_rep(m));
    CHECK(dd == m);
  }
}

TEST_CASE("minimal presentation reconstructs the module") {
  std::mt19937 rng(302u);
  for (const char* text : {kA3, kTriangle, kD4}) {
    Quiver q = Quiver::parse_dsl(text);
    QQ f;
    for (int trial = 0; trial < 8; ++trial) {
      Rep<QQ> m = testutil::random_rep(q, f, rng);
      MinPresentation<QQ> pres = min_presentation(q, f, m);
      Rep<QQ> back = rep_cokernel(pres.delta).rep;
      CHECK(back.dims() == m.dims());
      for (int v = 0; v < q.n_vertices(); ++v)
        CHECK(rref(pres.delta.mat(v)).rank() ==
              pres.delta.mat(v).cols());  // differential is injective
    }
  }
}

TEST_CASE("presentation of a projective has no relations") {
  Quiver q = Quiver::parse_dsl(kA3);
  QQ f;
  MinPresentation<QQ> pres = min_presentation(q, f, projective_rep(q, f, 2));
  CHECK(pres.p0.vertices == std::vector<int>{2});
  CHECK(pres.p1.vertices.empty());
}

TEST_CASE("tau-minus of projectives on A3") {
  Quiver q = Quiver::parse_dsl(kA3);
  QQ f;
  CHECK(tau_minus(projective_rep(q, f, 0)).dims() ==
        std::vector<int>{0, 1, 0});
  CHECK(tau_minus(projective_rep(q, f, 1)).dims() ==
        std::vector<int>{0, 1, 1});
  CHECK(tau_minus(projective_rep(q, f, 2)).dims() ==
        std::vector<int>{0, 0, 0});  // P_3 = I_1 is injective
}

TEST_CASE("tau-minus kills injectives") {
  for (const char* text : {kA3, kTriangle, kD4}) {
    Quiver q = Quiver::parse_dsl(text);
    GF f(7);
    for (int v = 0; v < q.n_vertices(); ++v)
      CHECK(tau_minus(injective_rep(q, f, v)).is_zero());
  }
}

TEST_CASE("tau kills projectives and inverts tau-minus") {
  for (const char* text : {kA3, kTriangle, kD4}) {
    Quiver q = Quiver::parse_dsl(text);
    QQ f;
    for (int v = 0; v < q.n_vertices(); ++v) {
      Rep<QQ> p = projective_rep(q, f, v);
      CHECK(tau(p).is_zero());
      Rep<QQ> tm = tau_minus(p);
      if (tm.is_zero()) continue;
      CHECK(contains_iso(p, tau(tm)));
    }
  }
}

TEST_CASE("tau-minus of P_1 on the triangle quiver") {
  Quiver q = Quiver::parse_dsl(kTriangle);
  QQ f;
  CHECK(tau_minus(projective_rep(q, f, 0)).dims() ==
        std::vector<int>{2, 2, 1});
}

TEST_CASE("tau of the A3 simple at 2") {
  Quiver q = Quiver::parse_dsl(kA3);
  QQ f;
  CHECK(tau(simple_rep(q, f, 1)).dims() == std::vector<int>{1, 0, 0});
  CHECK(tau_minus(simple_rep(q, f, 1)).dims() == std::vector<int>{0, 0, 1});
}

TEST_CASE("tau-minus respects identities and zero maps") {
  Quiver q = Quiver::parse_dsl(kA3);
  QQ f;
  Rep<QQ> p1 = projective_rep(q, f, 0);
  Rep<QQ> p2 = projective_rep(q, f, 1);
  auto id_t = tau_minus_mor(RepMorphism<QQ>::identity(p1));
  CHECK(id_t == RepMorphism<QQ>::identity(tau_minus(p1)));
  auto zero_t = tau_minus_mor(RepMorphism<QQ>::zero(p1, p2));
  CHECK(zero_t.is_zero());
  CHECK(zero_t.dom().dims() == tau_minus(p1).dims());
  CHECK(zero_t.cod().dims() == tau_minus(p2).dims());
}

TEST_CASE("tau-minus morphisms are functorial") {
  std::mt19937 rng(303u);
  for (const char* text : {kA3, kTriangle}) {
    Quiver q = Quiver::parse_dsl(text);
    GF f(5);
    for (int trial = 0; trial < 6; ++trial) {
      Rep<GF> m = testutil::random_rep(q, f, rng, 2);
      Rep<GF> n = testutil::random_rep(q, f, rng, 2);
      Rep<GF> p = testutil::random_rep(q, f, rng, 2);
      RepMorphism<GF> fm = testutil::random_morphism(m, n, rng);
      RepMorphism<GF> gm = testutil::random_morphism(n, p, rng);
      CHECK(tau_minus_mor(gm * fm) == tau_minus_mor(gm) * tau_minus_mor(fm));
    }
  }
}

TEST_CASE("tau-minus of a nonzero irreducible map stays nonzero") {
  Quiver q = Quiver::parse_dsl(kA3);
  QQ f;
  // rho along arrow a: P_1 -> P_2.
  auto maps = hom_space(projective_rep(q, f, 0), projective_rep(q, f, 1));
  REQUIRE(maps.size() == 1);
  RepMorphism<QQ> t = tau_minus_mor(maps[0]);
  CHECK(t.dom().dims() == std::vector<int>{0, 1, 0});
  CHECK(t.cod().dims() == std::vector<int>{0, 1, 1});
  CHECK_FALSE(t.is_zero());
}

TEST_CASE("lifts do not leak into the induced map") {
  std::mt19937 rng(304u);
  std::mt19937 fuzz(305u);
  for (const char* text : {kA3, kTriangle, kD4}) {
    Quiver q = Quiver::parse_dsl(text);
    QQ f;
    for (int trial = 0; trial < 5; ++trial) {
      Rep<QQ> m = testutil::random_rep(q, f, rng, 2);
      Rep<QQ> n = testutil::random_rep(q, f, rng, 2);
      RepMorphism<QQ> fm = testutil::random_morphism(m, n, rng);
      RepMorphism<QQ> plain = tau_minus_mor(fm);
      RepMorphism<QQ> fuzzed = tau_minus_mor(fm, &fuzz);
      CHECK(plain == fuzzed);
      CHECK(tau_mor(fm) == tau_mor(fm, &fuzz));
    }
  }
}

TEST_CASE("tau and tau-minus morphisms compose to conjugation by the iso") {
  // tau(tau_minus(f)) has the same matrices as f up to the canonical
  // identification; at least functoriality and dimensions are checked.
  Quiver q = Quiver::parse_dsl(kD4);
  QQ f;
  Rep<QQ> p1 = projective_rep(q, f, 1);
  Rep<QQ> p0 = projective_rep(q, f, 0);
  auto maps = hom_space(p1, p0);
  REQUIRE(maps.size() == 1);
  RepMorphism<QQ> t = tau_minus_mor(maps[0]);
  RepMorphism<QQ> back = tau_mor(t);
  CHECK(back.dom().dims() == p1.dims());
  CHECK(back.cod().dims() == p0.dims());
  CHECK_FALSE(back.is_zero());
}

TEST_CASE("unique arrow homs on trees") {
  for (const char* text : {kA3, kD4}) {
    Quiver q = Quiver::parse_dsl(text);
    QQ f;
    for (int a = 0; a < q.n_arrows(); ++a) {
      Rep<QQ> ptgt = projective_rep(q, f, q.arrow(a).tgt);
      Rep<QQ> psrc = projective_rep(q, f, q.arrow(a).src);
      CHECK(hom_dim(ptgt, psrc) == 1);
    }
  }
}

TEST_CASE("coxeter oracle on A2") {
  Quiver q = Quiver::parse_dsl("1;2; a:2->1");
  CHECK(coxeter_oracle(q, {1, 0}) == std::vector<long long>{0, 1});
  CHECK(coxeter_oracle(q, {0, 1}) ==
        std::vector<long long>{-1, -1});  // injective: flagged negative
  CHECK(coxeter_tau_oracle(q, {0, 1}) == std::vector<long long>{1, 0});
}

TEST_CASE("coxeter oracle flags injectives on A3") {
  Quiver q = Quiver::parse_dsl(kA3);
  QQ f;
  for (int v = 0; v < 3; ++v) {
    auto d = injective_rep(q, f, v).dims();
    auto out = coxeter_oracle(q, d);
    bool has_negative = false;
    for (long long x : out) has_negative |= x < 0;
    CHECK(has_negative);
  }
}

TEST_CASE("coxeter oracle matches tau-minus dimensions") {
  for (const char* text : {kA3, kTriangle, kD4}) {
    Quiver q = Quiver::parse_dsl(text);
    QQ f;
    for (int v = 0; v < q.n_vertices(); ++v) {
      Rep<QQ> p = projective_rep(q, f, v);
      auto predicted = coxeter_oracle(q, p.dims());
      bool negative = false;
      for (long long x : predicted) negative |= x < 0;
      Rep<QQ> tm = tau_minus(p);
      if (negative) {
        CHECK(tm.is_zero());
      } else {
        for (int w = 0; w < q.n_vertices(); ++w)
          CHECK(predicted[w] == tm.dim(w));
      }
    }
  }
}

TEST_CASE("coxeter matrices are mutually inverse") {
  std::mt19937 rng(306u);
  Quiver q = Quiver::parse_dsl(kD4);
  std::uniform_int_distribution<int> entry(0, 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> d(q.n_vertices());
    for (int& x : d) x = entry(rng);
    auto fwd = coxeter_tau_oracle(q, d);
    std::vector<int> mid(fwd.begin(), fwd.end());
    auto back = coxeter_oracle(q, mid);
    std::vector<long long> expect(d.begin(), d.end());
    CHECK(back == expect);
  }
}

TEST_CASE("tau-minus iterates walk the A3 preprojective component") {
  Quiver q = Quiver::parse_dsl(kA3);
  QQ f;
  Rep<QQ> m = projective_rep(q, f, 0);
  std::vector<std::vector<int>> orbit{m.dims()};
  while (true) {
    m = tau_minus(m);
    if (m.is_zero()) break;
    orbit.push_back(m.dims());
  }
  std::vector<std::vector<int>> expect{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(orbit == expect);
}

#include <doctest.h>

#include "mcq/circle.hpp"
#include "mcq/geometry.hpp"
#include "mcq/gl2.hpp"
#include "mcq/integer.hpp"
#include "mcq/lp.hpp"
#include "mcq/matrix.hpp"
#include "mcq/projrational.hpp"
#include "mcq/quadsurd.hpp"
#include "mcq/rational.hpp"
#include "util.hpp"

using namespace mcq;
using testutil::XorShift64;

TEST_CASE("integer helpers") {
  CHECK(isqrt(Integer(0)) == 0);
  CHECK(isqrt(Integer(35)) == 5);
  CHECK(isqrt(Integer(36)) == 6);
  CHECK(is_perfect_square(Integer(49)));
  CHECK(!is_perfect_square(Integer(48)));

  Integer d, s;
  squarefree_decompose(Integer(8), d, s);
  CHECK(d == 2);
  CHECK(s == 2);
  squarefree_decompose(Integer(1), d, s);
  CHECK(d == 1);
  CHECK(s == 1);
  squarefree_decompose(Integer(360), d, s);  // 360 = 10 * 36
  CHECK(d == 10);
  CHECK(s == 6);
  // large: (2^2) * 1000003 (prime)
  squarefree_decompose(Integer(4) * 1000003, d, s);
  CHECK(d == 1000003);
  CHECK(s == 2);

  XorShift64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Integer v(rng.range(1, 100000));
    squarefree_decompose(v, d, s);
    CHECK(d * s * s == v);
    Integer d2, s2;
    squarefree_decompose(d, d2, s2);  // d is squarefree
    CHECK(s2 == 1);
  }
}

TEST_CASE("rational strings") {
  CHECK(rat_str(make_rational(6, -4)) == "-3/2");
  CHECK(rat_str(make_rational(5, 5)) == "1");
  CHECK(rat_parse("-3/2") == make_rational(-3, 2));
  CHECK(rat_parse("7") == Rational(7));
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("x/y"), std::invalid_argument);
}

TEST_CASE("projective rationals") {
  ProjRational inf = ProjRational::infinity();
  CHECK(inf.is_infinity());
  CHECK(ProjRational(3, -6) == ProjRational(-1, 2));
  CHECK(ProjRational(0, 5) == ProjRational(0, 1));
  CHECK(ProjRational(2, 0).is_infinity());
  CHECK(proj_parse("inf").is_infinity());
  CHECK(proj_parse("-5/10") == ProjRational(-1, 2));
  // order: finite by value, infinity greatest
  CHECK(ProjRational(1, 2) < ProjRational(2, 3));
  CHECK(ProjRational(100, 1) < inf);
  CHECK(!(inf < inf));
}

TEST_CASE("surd sign against decimal-interval oracle") {
  XorShift64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Integer A(rng.range(-50, 50)), B(rng.range(-50, 50));
    Integer D(rng.range(1, 60));
    Integer d, s;
    squarefree_decompose(D, d, s);
    // library precondition: D squarefree; fold the square into B
    int got = surd_sign(A, B * s, d);
    int want = testutil::interval_surd_sign(A, B * s, d);
    CAPTURE(A.get_str());
    CAPTURE(B.get_str());
    CAPTURE(D.get_str());
    CHECK(got == want);
  }
  // exact zeros
  CHECK(surd_sign(Integer(-4), Integer(2), Integer(4)) == 0);  // -4 + 2*2
  CHECK(surd_sign(Integer(0), Integer(0), Integer(5)) == 0);
}

TEST_CASE("two-field surd sign against decimal-interval oracle") {
  XorShift64 rng(13);
  int checked = 0;
  for (int i = 0; i < 800; ++i) {
    Integer A(rng.range(-30, 30)), B(rng.range(-30, 30)), C(rng.range(-30, 30));
    Integer D1(rng.range(2, 80)), D2(rng.range(2, 80));
    Integer d1, s1, d2, s2;
    squarefree_decompose(D1, d1, s1);
    squarefree_decompose(D2, d2, s2);
    if (d1 == d2 || d1 == 1 || d2 == 1) continue;  // different-field precondition
    ++checked;
    int got = surd_sign2(A, B * s1, d1, C * s2, d2);
    int want = testutil::interval_surd_sign2(A, B * s1, d1, C * s2, d2);
    CAPTURE(A.get_str());
    CHECK(got == want);
  }
  CHECK(checked > 300);
}

TEST_CASE("quadsurd canonical form") {
  QuadSurd x(Integer(2), Integer(2), Integer(4), Integer(8));
  // (2 + 2*sqrt(8))/4 = (1 + 2*sqrt(2))/2
  CHECK(x.a == 1);
  CHECK(x.b == 2);
  CHECK(x.c == 2);
  CHECK(x.D == 2);

  QuadSurd r(Integer(3), Integer(0), Integer(-3), Integer(7));
  CHECK(r.is_rational());
  CHECK(r.rational_value() == -1);
  CHECK(r.D == 1);

  // root collapses to an integer
  QuadSurd y(Integer(1), Integer(1), Integer(1), Integer(9));
  CHECK(y.is_rational());
  CHECK(y.rational_value() == 4);

  CHECK_THROWS_AS(QuadSurd(Integer(1), Integer(1), Integer(0), Integer(2)),
                  std::invalid_argument);
}

TEST_CASE("surd field arithmetic") {
  QuadSurd phi(Integer(1), Integer(1), Integer(2), Integer(5));
  QuadSurd psi(Integer(1), Integer(-1), Integer(2), Integer(5));
  // conjugate roots of x^2 - x - 1: sum 1, product -1
  QuadSurd sum = phi.add_same_field(psi);
  REQUIRE(sum.is_rational());
  CHECK(sum.rational_value() == 1);
  QuadSurd prod = phi.mul_same_field(psi);
  REQUIRE(prod.is_rational());
  CHECK(prod.rational_value() == -1);
  // phi^2 = phi + 1
  CHECK(phi.mul_same_field(phi) == phi + Rational(1));

  QuadSurd rt2(Integer(0), Integer(1), Integer(1), Integer(2));
  QuadSurd two = rt2.mul_same_field(rt2);
  REQUIRE(two.is_rational());
  CHECK(two.rational_value() == 2);

  // rational factors scale
  QuadSurd half(make_rational(1, 2));
  CHECK(phi.mul_same_field(half) == phi * make_rational(1, 2));
  CHECK(half.mul_same_field(phi) == phi * make_rational(1, 2));

  QuadSurd rt5(Integer(0), Integer(1), Integer(1), Integer(5));
  CHECK_THROWS_AS(rt2.mul_same_field(rt5), std::domain_error);
  CHECK_THROWS_AS(rt2.add_same_field(rt5), std::domain_error);
}

TEST_CASE("golden ratio comparisons") {
  // phi = (1 + sqrt(5))/2: between 13/8 and 8/5, closer checks via the
  // independent decimal expansion of sqrt(5).
  QuadSurd phi(Integer(1), Integer(1), Integer(2), Integer(5));
  CHECK(cmp(phi, make_rational(13, 8)) < 0);
  CHECK(cmp(phi, make_rational(8, 5)) > 0);

  // 20 decimal digits of phi from integer sqrt, as an oracle for cmp.
  Integer scale = testutil::pow10(20);
  Integer phi_floor = (scale + isqrt(Integer(5) * scale * scale)) / 2;
  Rational lo = make_rational(phi_floor, scale);
  Rational hi = make_rational(phi_floor + 1, scale);
  CHECK(cmp(phi, lo) > 0);
  CHECK(cmp(phi, hi) < 0);

  QuadSurd psi(Integer(1), Integer(-1), Integer(2), Integer(5));
  CHECK(cmp(psi, phi) < 0);
  CHECK(cmp(phi, phi) == 0);
  // cross-field: sqrt(2) + 1 vs sqrt(5): 2.414... vs 2.236...
  QuadSurd a(Integer(1), Integer(1), Integer(1), Integer(2));
  QuadSurd b(Integer(0), Integer(1), Integer(1), Integer(5));
  CHECK(cmp(a, b) > 0);
}

TEST_CASE("quadsurd random comparison vs oracle") {
  XorShift64 rng(17);
  for (int i = 0; i < 300; ++i) {
    QuadSurd x(Integer(rng.range(-20, 20)), Integer(rng.range(-20, 20)),
               Integer(rng.range(1, 20)), Integer(rng.range(2, 40)));
    QuadSurd y(Integer(rng.range(-20, 20)), Integer(rng.range(-20, 20)),
               Integer(rng.range(1, 20)), Integer(rng.range(2, 40)));
    // x - y = A/cxy + ... reduce to a two-root interval evaluation:
    // sign(x - y) with x = (a1+b1 r1)/c1, y = (a2+b2 r2)/c2 equals
    // sign(a1 c2 - a2 c1 + b1 c2 r1 - b2 c1 r2).
    Integer A = x.a * y.c - y.a * x.c;
    Integer B = x.b * y.c;
    Integer C = -(y.b * x.c);
    int want = testutil::interval_surd_sign2(A, B, x.D, C, y.D);
    CHECK(cmp(x, y) == want);
  }
}

TEST_CASE("mobius on surds") {
  // RL = [[2,1],[1,1]] fixes (1 +- sqrt(5))/2.
  Mat2 RL = word_to_matrix("RL");
  CHECK(RL.str() == "[[2,1],[1,1]]");
  QuadSurd phi(Integer(1), Integer(1), Integer(2), Integer(5));
  CHECK(mobius(RL, phi) == phi);
  QuadSurd psi(Integer(1), Integer(-1), Integer(2), Integer(5));
  CHECK(mobius(RL, psi) == psi);
  // S swaps the two golden fixed points.
  Mat2 S = Mat2::gen_S();
  CHECK(mobius(S, phi) == psi);
  CHECK(mobius(S, psi) == phi);
  // translation acts by +1
  Mat2 T = Mat2::gen_T();
  QuadSurd phi1 = mobius(T, phi);
  CHECK(cmp(phi1, phi + Rational(1)) == 0);
}

TEST_CASE("mat2 basics") {
  CHECK(word_to_matrix("U").apply(ProjRational(0, 1)) == ProjRational(1, 1));
  CHECK(word_to_matrix("U").apply(ProjRational(1, 1)).is_infinity());
  CHECK(word_to_matrix("U").apply(ProjRational::infinity()) == ProjRational(0, 1));
  CHECK(word_to_matrix("UUU").is_identity_psl());
  CHECK(word_to_matrix("SS").is_identity_psl());
  CHECK(word_to_matrix("Ll").is_identity_psl());
  CHECK_THROWS_AS(word_to_matrix("LX"), std::invalid_argument);

  Mat2 m = word_to_matrix("LLRLR");
  CHECK((m * m.inverse()).is_identity_psl());
  CHECK(m.det() == 1);
}

TEST_CASE("st-word decomposition round trips") {
  XorShift64 rng(23);
  const char letters[] = {'L', 'R', 'S', 'T', 'U', 'l', 'r', 't', 'u'};
  for (int i = 0; i < 200; ++i) {
    std::string w;
    int len = static_cast<int>(rng.below(12));
    for (int j = 0; j < len; ++j) w += letters[rng.below(sizeof(letters))];
    Mat2 m = word_to_matrix(w);
    std::string st = matrix_to_st_word(m);  // throws on mismatch
    CHECK(word_to_matrix(st).psl_equal(m));
  }
}

TEST_CASE("circle order and ccw") {
  CirclePt zero = ProjRational(0, 1);
  CirclePt one = ProjRational(1, 1);
  CirclePt inf = ProjRational::infinity();
  CirclePt phi = QuadSurd(Integer(1), Integer(1), Integer(2), Integer(5));
  CirclePt neg = ProjRational(-3, 2);

  CHECK(ccw(zero, one, inf));
  CHECK(ccw(one, inf, zero));
  CHECK(ccw(inf, zero, one));
  CHECK(!ccw(one, zero, inf));
  CHECK(ccw(zero, phi, inf));   // 0 < phi < inf
  CHECK(ccw(inf, neg, zero));   // wrap through infinity
  CHECK(in_open_arc(phi, one, inf));
  CHECK(!in_open_arc(phi, inf, one));
  CHECK(in_closed_arc(one, one, inf));

  // rational surd equals the cusp with the same value
  CirclePt two_as_surd = QuadSurd(Rational(2));
  CHECK(circle_eq(two_as_surd, CirclePt(ProjRational(2, 1))));
}

TEST_CASE("interleaving") {
  CirclePt zero = ProjRational(0, 1);
  CirclePt inf = ProjRational::infinity();
  CirclePt phi = QuadSurd(Integer(1), Integer(1), Integer(2), Integer(5));
  CirclePt psi = QuadSurd(Integer(1), Integer(-1), Integer(2), Integer(5));
  bool shared = false;
  CHECK(interleaved(zero, inf, phi, psi, &shared));  // psi < 0 < phi < inf
  CHECK(!shared);
  CHECK(!interleaved(zero, inf, phi, CirclePt(QuadSurd(Integer(2), Integer(1),
                                                       Integer(2), Integer(5))),
                     &shared));
  CHECK(interleaved(phi, psi, zero, inf));
  CHECK(!interleaved(zero, inf, CirclePt(ProjRational(1, 1)),
                     CirclePt(ProjRational(2, 1)), &shared));
  interleaved(zero, inf, zero, CirclePt(ProjRational(5, 1)), &shared);
  CHECK(shared);
}

TEST_CASE("interaction matrix determinants") {
  CHECK(det_bareiss(ones_two_matrix(2)) == -3);
  CHECK(det_bareiss(ones_two_matrix(3)) == 5);
  for (int b = 1; b <= 8; ++b) {
    Rational want(2 * b - 1);
    if (b % 2 == 0) want = -want;
    CHECK(det_bareiss(ones_two_matrix(b)) == want);
  }
  // removing slot a is the same matrix one size down
  for (int b = 2; b <= 6; ++b)
    for (int a = 0; a < b; ++a)
      CHECK(det_bareiss(ones_two_matrix_punctured(b, a)) ==
            det_bareiss(ones_two_matrix(b - 1)));
}

TEST_CASE("bareiss vs cofactor expansion") {
  XorShift64 rng(31);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 60; ++trial) {
      Mat A(n, Vec(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = testutil::random_rational(rng, 9);
      CHECK(det_bareiss(A) == det_cofactor(A));
    }
  }
}

TEST_CASE("matrix inverse and solve") {
  XorShift64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng.below(5));
    Mat A(n, Vec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A[i][j] = testutil::random_rational(rng, 9);
    auto inv = mat_inverse(A);
    if (det_bareiss(A) == 0) {
      CHECK(!inv);
      continue;
    }
    REQUIRE(inv);
    CHECK(mat_mul(A, *inv) == mat_identity(n));
    Vec b(n);
    for (int i = 0; i < n; ++i) b[i] = testutil::random_rational(rng, 9);
    auto x = solve_linear(A, b);
    REQUIRE(x);
    CHECK(mat_vec(A, *x) == b);
  }
}

TEST_CASE("barycentric coordinates") {
  // triangle in the plane
  std::vector<Vec> tri = {{Rational(0), Rational(0)},
                          {Rational(1), Rational(0)},
                          {Rational(0), Rational(1)}};
  auto lam = barycentric(tri, Vec{make_rational(1, 3), make_rational(1, 3)});
  REQUIRE(lam);
  CHECK((*lam)[0] == make_rational(1, 3));
  CHECK((*lam)[1] == make_rational(1, 3));
  CHECK((*lam)[2] == make_rational(1, 3));

  // a segment in R^2: off-hull points rejected
  std::vector<Vec> seg = {{Rational(0), Rational(0)}, {Rational(1), Rational(1)}};
  CHECK(barycentric(seg, Vec{make_rational(1, 2), make_rational(1, 2)}));
  CHECK(!barycentric(seg, Vec{make_rational(1, 2), make_rational(1, 3)}));

  // dependent vertex set rejected
  std::vector<Vec> dep = {{Rational(0), Rational(0)},
                          {Rational(1), Rational(1)},
                          {Rational(2), Rational(2)}};
  CHECK(!barycentric(dep, Vec{make_rational(1, 2), make_rational(1, 2)}));

  // random reconstruction: lambda >= 0, sum 1
  XorShift64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    int d = 2 + static_cast<int>(rng.below(3));
    std::vector<Vec> verts;
    for (int i = 0; i <= d; ++i) {
      Vec v(d);
      for (int r = 0; r < d; ++r) v[r] = testutil::random_rational(rng, 6);
      verts.push_back(v);
    }
    Vec w(d + 1);
    Rational tot = 0;
    for (int i = 0; i <= d; ++i) {
      w[i] = Rational(rng.range(0, 10));
      tot += w[i];
    }
    if (sgn(tot) == 0) continue;
    Vec p(d, Rational(0));
    for (int i = 0; i <= d; ++i)
      p = vec_add(p, vec_scale(w[i] / tot, verts[i]));
    auto got = barycentric(verts, p);
    if (!got) continue;  // degenerate random simplex
    for (int i = 0; i <= d; ++i) CHECK((*got)[i] == w[i] / tot);
  }
}

TEST_CASE("exact simplex solver") {
  // max x + 2y st x + y = 1, x,y >= 0 -> 2 at (0,1)
  {
    Mat A = {{Rational(1), Rational(1)}};
    Vec b = {Rational(1)};
    Vec c = {Rational(1), Rational(2)};
    LPResult r = lp_max(A, b, c);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.value == 2);
    CHECK(r.x[0] == 0);
    CHECK(r.x[1] == 1);
  }
  // infeasible: x + y = -1
  {
    Mat A = {{Rational(1), Rational(1)}};
    Vec b = {Rational(-1)};
    Vec c = {Rational(0), Rational(0)};
    CHECK(lp_max(A, b, c).status == LPStatus::Infeasible);
    CHECK(!lp_feasible(A, b));
  }
  // unbounded: no constraints
  {
    Mat A;
    Vec b;
    Vec c = {Rational(1)};
    CHECK(lp_max(A, b, c).status == LPStatus::Unbounded);
  }
  // redundant rows stay consistent
  {
    Mat A = {{Rational(1), Rational(1)}, {Rational(2), Rational(2)}};
    Vec b = {Rational(1), Rational(2)};
    Vec c = {Rational(3), Rational(1)};
    LPResult r = lp_max(A, b, c);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.value == 3);
  }
  // classic cycling-prone instance; Bland's rule must terminate
  {
    // max 10 x1 - 57 x2 - 9 x3 - 24 x4 with two degenerate rows + slack
    Mat A = {
        {make_rational(1, 2), make_rational(-11, 2), make_rational(-5, 2),
         Rational(9), Rational(1), Rational(0), Rational(0)},
        {make_rational(1, 2), make_rational(-3, 2), make_rational(-1, 2),
         Rational(1), Rational(0), Rational(1), Rational(0)},
        {Rational(1), Rational(0), Rational(0), Rational(0), Rational(0),
         Rational(0), Rational(1)},
    };
    Vec b = {Rational(0), Rational(0), Rational(1)};
    Vec c = {Rational(10), Rational(-57), Rational(-9), Rational(-24),
             Rational(0), Rational(0), Rational(0)};
    LPResult r = lp_max(A, b, c);
    REQUIRE(r.status == LPStatus::Optimal);
    CHECK(r.value == 1);  // optimum x1 = 1, x3 = 1 (known answer)
  }
}

TEST_CASE("hull and interior predicates on triangles") {
  using V = std::vector<Vec>;
  auto q = [](long a, long b, long c, long d) {
    return Vec{make_rational(a, b), make_rational(c, d)};
  };
  V t1 = {q(0, 1, 0, 1), q(1, 1, 0, 1), q(0, 1, 1, 1)};
  V t2 = {q(1, 1, 0, 1), q(0, 1, 1, 1), q(1, 1, 1, 1)};  // shares an edge
  V t3 = {q(2, 1, 0, 1), q(3, 1, 0, 1), q(2, 1, 1, 1)};  // far away
  V t4 = {q(1, 4, 1, 4), q(1, 1, 1, 1), q(1, 4, 1, 2)};  // pokes into t1

  CHECK(!interiors_intersect(t1, t2));
  CHECK(convex_hulls_intersect(t1, t2));
  CHECK(!convex_hulls_intersect(t1, t3));
  CHECK(!interiors_intersect(t1, t3));
  CHECK(interiors_intersect(t1, t4));

  CHECK(simplex_contains_point(t1, q(1, 4, 1, 4)));
  CHECK(simplex_contains_point(t1, q(0, 1, 0, 1)));
  CHECK(!simplex_contains_point(t1, q(3, 4, 3, 4)));

  CHECK(boundaries_meet_in_common_hull(t1, t2));
  CHECK(boundaries_meet_in_common_hull(t1, t3));
  CHECK(!boundaries_meet_in_common_hull(t1, t4));

  // segment inside triangle edge: relative interiors of a facet pair
  V seg = {q(1, 4, 0, 1), q(1, 2, 0, 1)};
  V edge = {q(0, 1, 0, 1), q(1, 1, 0, 1)};
  CHECK(interiors_intersect(seg, edge));
  CHECK(simplex_contains_simplex(t1, seg));
}

TEST_CASE("diameter and volume helpers") {
  std::vector<Vec> t = {{Rational(0), Rational(0)},
                        {Rational(3), Rational(0)},
                        {Rational(0), Rational(4)}};
  CHECK(diameter_sq(t) == 25);
  CHECK(simplex_det_abs(std::vector<Vec>{{Rational(1), Rational(0)},
                                         {Rational(1), Rational(1)}}) == 1);
  Vec bc = barycenter(t);
  CHECK(bc[0] == 1);
  CHECK(bc[1] == make_rational(4, 3));
}

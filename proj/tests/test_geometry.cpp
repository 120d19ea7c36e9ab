#include <gtest/gtest.h>

#include <random>

#include "mds/mds.hpp"
#include "oracles.hpp"

using namespace mds;

namespace {

Main2Params random_main2(std::mt19937_64& rng, std::int64_t m) {
  Main2Params p{m, 0, 0};
  p.alpha = oracle::interior(rng, 0, p.alpha_upper(), 89);
  p.beta = oracle::interior(rng, p.beta_lower(), p.beta_upper(), 83);
  return p;
}

}  // namespace

TEST(Curves, SmallXi) {
  EXPECT_EQ(to_string(xi(1)), "1 - x*y^2");
  EXPECT_EQ(to_string(xi(2)), "1 + x - 3*x*y + x^2*y^3");
  EXPECT_THROW(xi(0), Error);
}

TEST(Curves, RecursionsAndLineRestriction) {
  for (std::int64_t m = 1; m <= 8; ++m) {
    EXPECT_TRUE(check_recursion_b(m));
    EXPECT_TRUE(check_recursion_c(m));
    EXPECT_TRUE(check_recursion_b(m, PrimeField(3)));
    EXPECT_TRUE(check_line_restriction(m));
  }
}

TEST(Curves, EisensteinCertificates) {
  for (std::int64_t m = 1; m <= 8; ++m) {
    const auto c = eisenstein_certificate(m);
    EXPECT_TRUE(c.holds()) << m;
    EXPECT_EQ(c.conditions.size(), static_cast<std::size_t>(m + 7));
  }
  EXPECT_EQ(eisenstein_certificate(1).transformed, "-y^2 + x");
  EXPECT_TRUE(eisenstein_certificate(3, PrimeField(5)).holds());
}

TEST(Curves, ParallelogramCriterion) {
  const auto f = parse_poly("y + x + x^2");
  const auto r = parallelogram_check(f, {1, 0}, {-1, 1}, {0, 0}, 2, 1);
  EXPECT_TRUE(r.support_in_parallelogram);
  EXPECT_TRUE(r.not_divisible_by_x_or_y);
  EXPECT_TRUE(r.basis);
  EXPECT_FALSE(r.prescribed_zeros);
  EXPECT_FALSE(r.holds());
  EXPECT_TRUE(parallelogram_irreducible(parse_poly("x + y"), {1, 0}, {0, 1}, {0, 0}, 1, 1));
}

TEST(Blowup, ClassAndSelfIntersection) {
  const auto d = main2_triangle(1, Rational(1, 9), Rational(5, 14));
  const auto r = is_negative_curve(xi(1), d);
  EXPECT_EQ(r.cls, (NumericClass{1, 1}));
  EXPECT_EQ(r.self_intersection, Rational(-4, 63));
  EXPECT_TRUE(r.negative);
  EXPECT_FALSE(r.zero_curve);
  EXPECT_THROW(class_of(QPoly(RationalField{}), d), Error);
}

TEST(Blowup, ZeroCurveOnBoundary) {
  // 2 Area = m^2 gives self-intersection 0
  const auto d = main1_triangle(2, Rational(1, 3), Rational(0));
  const auto r = is_negative_curve(xi(2), d);
  EXPECT_EQ(r.self_intersection, 0);
  EXPECT_TRUE(r.zero_curve);
}

TEST(Blowup, VerticalSegment) {
  const auto d = main1_triangle(2, Rational(24, 101), Rational(5, 101));
  EXPECT_EQ(vertical_segment_height(d), Rational(385, 202));
  EXPECT_THROW(vertical_segment_height(RationalTriangle({0, 0}, {0, 1}, {1, 0})), Error);
}

TEST(BlowupProperty, DegreeIntervalIsAdditive) {
  std::mt19937_64 rng(41);
  const auto base = fgh();
  for (int s = 0; s < 20; ++s) {
    const auto p = random_main2(rng, 1 + s % 3);
    const auto d = main2_triangle(p.m, p.alpha, p.beta);
    const std::vector<QPoly> polys{xi(p.m), xi(p.m + 1), base.f, base.h, base.g};
    for (const auto& a : polys)
      for (const auto& b : polys) EXPECT_EQ(degree_interval(a * b, d), degree_interval(a, d) + degree_interval(b, d));
  }
}

TEST(BlowupProperty, IntersectionIsBilinearAndSymmetric) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> c(-20, 20);
  const RationalTriangle d({0, 0}, {Rational(7, 3), 0}, {1, 2});
  for (int s = 0; s < 50; ++s) {
    const NumericClass a{Rational(c(rng), 7), Rational(c(rng))}, b{Rational(c(rng), 5), Rational(c(rng))},
        e{Rational(c(rng)), Rational(c(rng), 3)};
    const Rational t(c(rng), 11);
    EXPECT_EQ(intersect(a, b, d), intersect(b, a, d));
    EXPECT_EQ(intersect(a + b, e, d), intersect(a, e, d) + intersect(b, e, d));
    EXPECT_EQ(intersect(t * a, e, d), t * intersect(a, e, d));
  }
}

TEST(BlowupProperty, ClassOfProductIsSum) {
  std::mt19937_64 rng(43);
  const auto base = fgh();
  for (int s = 0; s < 10; ++s) {
    const auto p = random_main2(rng, 1 + s % 3);
    const auto d = main2_triangle(p.m, p.alpha, p.beta);
    const auto a = xi(p.m), b = base.f * base.h;
    EXPECT_LE(class_of(a * b, d).h, class_of(a, d).h + class_of(b, d).h);
    EXPECT_EQ(class_of(a * b, d).e, class_of(a, d).e + class_of(b, d).e);
  }
}

TEST(Sections, ConstraintMatrix) {
  const auto d = main2_triangle(1, Rational(1, 9), Rational(5, 14));
  const SectionProblem problem(parallel_triangle(d, 0, 1), 2, {0, 0});
  EXPECT_EQ(constraint_matrix(problem), (IntMatrix{{1, 1, 1}, {0, 1, 1}, {0, 0, 1}}));
  EXPECT_EQ(constraint_rows(3), (std::vector<LatticePoint>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}));
  EXPECT_THROW(SectionProblem(d, 1, {5, 5}), Error);
}

TEST(SectionsProperty, KernelDimensionAgreesAtGoodPrimes) {
  std::mt19937_64 rng(44);
  for (int s = 0; s < 12; ++s) {
    const auto p = random_main2(rng, 1 + s % 3);
    const auto dp = parallel_triangle(main2_triangle(p.m, p.alpha, p.beta), 0, 2 * p.m);
    const SectionProblem problem(dp, p.m + 1, {0, 0});
    const auto m = constraint_matrix(problem);
    const auto q = section_space(problem, RationalField{});
    EXPECT_EQ(q.dimension() + oracle::rank_q(m), q.points.size());
    for (std::uint64_t pr : {2u, 3u, 5u, 7u})
      if (good_prime(m, pr)) EXPECT_EQ(section_space(problem, PrimeField(pr)).dimension(), q.dimension());
    for (std::size_t k = 0; k < q.dimension(); ++k)
      EXPECT_GE(oracle::multiplicity(q.polynomial(k)), p.m + 1);
  }
}

TEST(Sections, HcWitnessAndSemigroup) {
  for (std::int64_t m = 1; m <= 3; ++m) {
    const Rational beta(1, m + 2), alpha = Rational(1) / ((m + 2) * (m + 2));
    const auto dp = parallel_triangle(main2_triangle(m, alpha, beta), 0, m);
    const auto r1 = hc_member(1, dp, m + 1, {0, 0}, RationalField{});
    ASSERT_TRUE(r1.member);
    EXPECT_EQ(r1.reason, HcReason::WitnessFound);
    EXPECT_EQ(*r1.witness, xi(m + 1));
    // products of witnesses witness the sum
    const auto sq = *r1.witness * *r1.witness;
    EXPECT_TRUE(check_witness(sq, SectionProblem(scaled(dp, 2), 2 * (m + 1), {0, 0})).holds());
    EXPECT_TRUE(hc_member(2, dp, m + 1, {0, 0}, RationalField{}).member);
  }
}

TEST(Sections, HcAbsentForExampleFamily) {
  const auto e = example_family(1);
  const auto dp = parallel_triangle(e.triangle, 0, 1);
  for (std::int64_t l = 1; l <= 3; ++l) {
    const auto r = hc_member(l, dp, 2, {0, 0}, RationalField{});
    EXPECT_FALSE(r.member) << l;
    EXPECT_FALSE(r.witness.has_value());
  }
  EXPECT_EQ(hc_member(1, dp, 2, {0, 0}, PrimeField(3)).member, false);
}

TEST(Zeta, SplitAndValidJ) {
  EXPECT_EQ(split_prime(2, 19).k, 6);
  EXPECT_EQ(split_prime(2, 19).l, 1);
  const auto e = example_family(2);
  EXPECT_FALSE(find_j(2, 5, e.alpha, e.beta).has_value());
  EXPECT_EQ(find_j(2, 19, e.alpha, e.beta), 4);
  try {
    build_zeta_p(2, 17, e.alpha, e.beta);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NoValidJ);
  }
  EXPECT_THROW(build_zeta_p(1, 9, e.alpha, e.beta), Error);
}

TEST(Zeta, MatchesDirectSum) {
  for (std::int64_t m = 1; m <= 2; ++m) {
    const auto e = example_family(m);
    for (std::int64_t p : {3, 7, 11, 13}) {
      const auto j = find_j(m, p, e.alpha, e.beta);
      if (!j) continue;
      const auto z = build_zeta_p(m, p, e.alpha, e.beta);
      EXPECT_EQ(z.zeta, oracle::naive_zeta(m, p, *j));
      EXPECT_GE(oracle::multiplicity(z.zeta), p * (m + 1));
    }
  }
}

TEST(DeltaBar, ReportAndValidator) {
  const auto e = example_family(3);
  const auto r = delta_bar_report(3, e.alpha, e.beta);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.x_right, 12 + Rational(1, 5));
  EXPECT_NO_THROW(delta_bar_validator(3, e.alpha, e.beta));
}

TEST(Certify, Main1) {
  const auto c = certify_main1(2, Rational(24, 101), Rational(5, 101));
  EXPECT_TRUE(c.verdict());
  EXPECT_EQ(c.weights, (WpsWeights{{77, 101, 5}}));
  const auto bad = certify_main1(2, 1, Rational(5, 101));
  EXPECT_FALSE(bad.verdict());
  EXPECT_THROW(bad.require(), Error);
}

TEST(Certify, Main2ExampleFamily) {
  Main2Options opts;
  opts.primes = {2, 3, 5, 7, 11};
  const auto e = example_family(1);
  const auto c = certify_main2({1, e.alpha, e.beta}, opts);
  EXPECT_TRUE(c.verdict());
  EXPECT_EQ(c.prime_threshold, 2);
  EXPECT_EQ(c.caveats.size(), 3u);
  const auto out = certify_main2({1, e.alpha, Rational(1, 3)}, opts);
  EXPECT_FALSE(out.verdict());
  EXPECT_EQ(out.premises.size(), 1u);
}

TEST(Certify, SmallBeta) {
  EXPECT_TRUE(certify_remark(2, Rational(1, 16), Rational(1, 4)).verdict());
  EXPECT_FALSE(certify_remark(2, Rational(1, 16), Rational(1, 3)).verdict());
}

TEST(Certify, ExampleFamilyClosedForm) {
  for (std::int64_t m = 1; m <= 7; ++m) EXPECT_TRUE(example_family(m).matches()) << m;
}

TEST(Certify, ScanOrderAndOutcomes) {
  ScanOptions opts;
  opts.main2.primes = {2, 3};
  opts.threads = 3;
  const auto rows = scan(1, {Rational(1, 9), Rational(1, 20)}, {Rational(5, 14), Rational(1, 3), Rational(1, 2)}, opts);
  ASSERT_EQ(rows.size(), 6u);
  const std::vector<std::string> want{"non-MDS-certified", "MDS-certified", "uncertified",
                                      "non-MDS-certified", "MDS-certified", "uncertified"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].index, i);
    EXPECT_EQ(rows[i].outcome, want[i]) << i;
  }
  EXPECT_EQ(rows[3].alpha, Rational(1, 20));
  EXPECT_EQ(scan_tsv(rows).substr(0, 5), "index");
}

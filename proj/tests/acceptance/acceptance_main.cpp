#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "mds/mds.hpp"

using namespace mds;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && pass) detail = what;
    pass = pass && cond;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0) o.expect(s < limit_s, "runtime over limit");
  if (!o.pass) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << s << " s";
  if (limit_s > 0) line << ", limit " << limit_s << " s";
  line << ")";
  if (!o.detail.empty()) line << ": " << o.detail;
  std::cout << line.str() << std::endl;
}

RationalTriangle main2_prime(std::int64_t m, const Rational& a, const Rational& b) {
  return parallel_triangle(main2_triangle(m, a, b), 0, m);
}

/// Random point strictly inside the main2 bounds.
Main2Params sample_main2(std::mt19937_64& rng, std::int64_t m) {
  Main2Params p{m, 0, 0};
  p.alpha = oracle::interior(rng, 0, p.alpha_upper(), 997);
  p.beta = oracle::interior(rng, p.beta_lower(), p.beta_upper(), 991);
  return p;
}

}  // namespace

int main() {
  std::cout << "acceptance suite: exact arithmetic, tolerance 0 for every comparison" << std::endl;

  criterion(1, "xi family: recursions over Q and F_p, multiplicity, Newton polygon, xi_2 text", 5.0, [] {
    Outcome o;
    o.expect(to_string(xi(2)) == "1 + x - 3*x*y + x^2*y^3", "xi_2 text is " + to_string(xi(2)));
    for (std::int64_t m = 1; m <= 14; ++m) {
      const auto tag = " at m=" + std::to_string(m);
      o.expect(check_recursion_b(m), "recursion b over Q" + tag);
      o.expect(check_recursion_c(m), "recursion c over Q" + tag);
      for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
        const PrimeField F(p);
        o.expect(check_recursion_b(m, F), "recursion b over F_" + std::to_string(p) + tag);
        o.expect(check_recursion_c(m, F), "recursion c over F_" + std::to_string(p) + tag);
      }
      o.expect(multiplicity_at_t0(xi(m)) == m, "multiplicity" + tag);
      std::vector<LatticePoint> want = m == 1 ? std::vector<LatticePoint>{{0, 0}, {1, 2}}
                                              : std::vector<LatticePoint>{{0, 0}, {m - 1, 0}, {m, m + 1}};
      o.expect(newton_polygon(xi(m)) == want, "Newton polygon" + tag);
    }
    return o;
  });

  criterion(2, "example-family weights P(9,28,59) .. P(49,344,11703)", 1.0, [] {
    Outcome o;
    const std::array<std::array<int, 3>, 5> want{{{9, 28, 59}, {16, 65, 459}, {25, 126, 1769}, {36, 217, 4997}, {49, 344, 11703}}};
    for (std::int64_t m = 1; m <= 5; ++m) {
      const auto e = example_family(m);
      const auto w = wps_weights(normal_fan_rays(e.triangle));
      std::array<Integer, 3> sorted = w.w;
      std::sort(sorted.begin(), sorted.end());
      const auto& x = want[m - 1];
      o.expect(sorted[0] == x[0] && sorted[1] == x[1] && sorted[2] == x[2], "weights at m=" + std::to_string(m));
    }
    return o;
  });

  criterion(3, "intersection numbers: P(5,77,101) C.C = -19/101, C.D = 0 in both configurations", 0, [] {
    Outcome o;
    const auto fig = main1_triangle(2, Rational(24, 101), Rational(5, 101));
    const auto w = wps_weights(normal_fan_rays(fig));
    std::array<Integer, 3> sorted = w.w;
    std::sort(sorted.begin(), sorted.end());
    o.expect(sorted == std::array<Integer, 3>{5, 77, 101}, "P(5,77,101) weights");
    const auto cc = is_negative_curve(xi(2), fig).self_intersection;
    o.expect(cc == Rational(-19, 101), "C.C = " + to_string(cc));
    o.expect(cc == 2 * area(fig) - 4, "C.C differs from 2 Area - m^2");

    std::mt19937_64 rng(20261019);
    const RationalField q;
    const auto line = QPoly::constant(q, 1) - QPoly::monomial(q, {0, 1});
    for (int s = 0; s < 20; ++s) {
      const std::int64_t m = 1 + s % 5;
      // alpha (m+1) + beta m <= 1 is 2 Area <= m^2
      const Rational alpha = oracle::uniform(rng, 0, Rational(1, m + 1), 101);
      const Rational beta = oracle::uniform(rng, 0, (1 - alpha * (m + 1)) / m, 103);
      const auto delta = main1_triangle(m, alpha, beta);
      const auto tag = " at (" + std::to_string(m) + ", " + to_string(alpha) + ", " + to_string(beta) + ")";
      o.expect(2 * area(delta) <= m * m, "sample not admissible" + tag);
      o.expect(contains(delta, newton_polygon(xi(m))), "xi_m outside Delta" + tag);
      const auto c = class_of(xi(m), delta), d = class_of(line, delta);
      o.expect(intersect(c, d, delta) == 0, "main1 C.D != 0" + tag);
    }
    for (std::int64_t m = 1; m <= 5; ++m) {
      const auto e = example_family(m);
      const auto c = class_of(xi(m), e.triangle);
      const NumericClass d{Rational(m) / (Rational(m - 1) + e.alpha + e.beta), m + 1};
      o.expect(area(main2_prime(m, e.alpha, e.beta)) == d.h * d.h * area(e.triangle), "D inconsistent with Delta'");
      o.expect(intersect(c, d, e.triangle) == 0, "main2 C.D != 0 at m=" + std::to_string(m));
    }
    return o;
  });

  criterion(4, "degree-interval labels for 20 random admissible main2 parameters", 0, [] {
    Outcome o;
    std::mt19937_64 rng(4);
    const auto base = fgh();
    const RationalField q;
    for (int s = 0; s < 20; ++s) {
      const auto p = sample_main2(rng, 1 + s % 4);
      const std::int64_t m = p.m;
      const Rational &a = p.alpha, &b = p.beta;
      const auto delta = main2_triangle(m, a, b);
      const auto x = QPoly::monomial(q, {1, 0});
      const auto xm = xi(m), xn = xi(m + 1);
      const Rational top = m + ((m + 2) * b - 1) / (m + 1);
      const std::vector<std::pair<QPoly, DegreeInterval>> labels{
          {xm, {-a, m - 1 + b}},
          {xn, {0, top}},
          {base.f * xm, {-a, top}},
          {QPoly::monomial(q, {m, 0}) * pow(base.h, m + 1), {-a, Rational(m)}},
          {x * base.h * xm, {(1 - (m + 2) * a) / (m + 1), m + b}},
          {pow(base.f, m + 1), {0, m + b}},
      };
      const char* names[] = {"xi_m", "xi_{m+1}", "f xi_m", "x^m h^{m+1}", "x h xi_m", "f^{m+1}"};
      for (std::size_t k = 0; k < labels.size(); ++k) {
        const auto got = degree_interval(labels[k].first, delta);
        o.expect(got == labels[k].second, std::string(names[k]) + " gives [" + to_string(got.a) + ", " + to_string(got.b) +
                                              "] at m=" + std::to_string(m) + ", alpha=" + to_string(a) + ", beta=" + to_string(b));
      }
    }
    return o;
  });

  criterion(5, "HC negative certificate: m=1 l=1 dimension 0 by hand, l=1,2 absent; m=2 l=2 absent", 10.0, [] {
    Outcome o;
    const Rational a(1, 9), b(5, 14);
    const auto dp = main2_prime(1, a, b);

    const auto pts = oracle::lattice_points(dp);
    o.expect(pts.size() == 3, "expected 3 lattice points, found " + std::to_string(pts.size()));
    // rows (0,0), (1,0), (0,1): coefficient of u^r v^s in (1+u)^i (1+v)^j
    const std::vector<std::pair<int, int>> rows{{0, 0}, {1, 0}, {0, 1}};
    oracle::Dense u(3, std::vector<Integer>(3));
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < pts.size() && c < 3; ++c)
        u[r][c] = binomial(Integer(pts[c].i), rows[r].first) * binomial(Integer(pts[c].j), rows[r].second);
    const auto sol = oracle::back_substitute(u, {0, 0, 0});
    o.expect(sol.has_value(), "constraint system is not unipotent upper triangular");
    if (sol) o.expect(*sol == std::vector<Rational>{0, 0, 0}, "nonzero solution");

    const auto space = section_space(SectionProblem(dp, 2, {0, 0}), RationalField{});
    o.expect(space.dimension() == 0, "library section space dimension " + std::to_string(space.dimension()));
    o.expect(space.points == pts, "library lattice points differ from enumeration");

    for (std::int64_t l : {1, 2})
      o.expect(!hc_member(l, dp, 2, {0, 0}, RationalField{}).member, "m=1: l=" + std::to_string(l) + " found in HC_Q");
    const auto e2 = example_family(2);
    o.expect(!hc_member(2, main2_prime(2, e2.alpha, e2.beta), 3, {0, 0}, RationalField{}).member, "m=2: l=2 found in HC_Q");
    return o;
  });

  criterion(6, "zeta_p for m=1,2 (example parameters), primes <= 100 above p0", 60.0, [] {
    Outcome o;
    std::ostringstream report;
    for (std::int64_t m = 1; m <= 2; ++m) {
      const auto e = example_family(m);
      const auto delta = main2_triangle(m, e.alpha, e.beta);
      const auto primes = primes_below(101);
      std::vector<std::int64_t> no_j;
      std::vector<std::pair<std::int64_t, std::optional<ZetaResult>>> runs;
      for (auto p : primes) {
        try {
          runs.push_back({p, build_zeta_p(m, p, e.alpha, e.beta)});
        } catch (const Error& err) {
          if (err.code() != ErrorCode::NoValidJ) throw;
          runs.push_back({p, std::nullopt});
          no_j.push_back(p);
        }
      }
      std::int64_t p0 = 0;
      for (std::size_t i = runs.size(); i-- > 0 && runs[i].second;) p0 = runs[i].first;
      o.expect(p0 > 0, "no threshold for m=" + std::to_string(m));
      for (const auto& [p, z] : runs) {
        if (p < p0) continue;
        const auto tag = " at m=" + std::to_string(m) + ", p=" + std::to_string(p);
        o.expect(z.has_value(), "NoValidJ above p0" + tag);
        if (!z) continue;
        const auto d = degree_interval(z->zeta, delta);
        o.expect(d.within({0, Rational(p * m)}), "degree outside [0, pm]" + tag);
        o.expect(multiplicity_at_t0(z->zeta) >= p * (m + 1), "multiplicity below p(m+1)" + tag);
        o.expect(z->zeta.coefficient({0, 0}) != 0, "zero constant term" + tag);
        if (p <= 13) o.expect(z->zeta == oracle::naive_zeta(m, p, z->j), "differs from the direct sum" + tag);
      }
      report << "m=" << m << " p0=" << p0 << " NoValidJ below/at:";
      for (auto p : no_j) report << " " << p;
      report << (m == 1 ? "; " : "");
    }
    o.detail = report.str();
    return o;
  });

  criterion(7, "Delta_bar validator for m=1..6 with example parameters", 5.0, [] {
    Outcome o;
    for (std::int64_t m = 1; m <= 6; ++m) {
      const auto e = example_family(m);
      const auto r = delta_bar_report(m, e.alpha, e.beta);
      for (const auto& c : r.clauses) o.expect(c.pass, c.name + " at m=" + std::to_string(m));
      o.expect(r.x_right < r.x_left, "x_R >= x_L at m=" + std::to_string(m));
      const RationalPoint apex{Rational(m * (m + 1)), Rational(m * (m + 2))};
      const auto delta1 = parallel_triangle(main2_triangle(m, e.alpha, e.beta), 0, m * m);
      o.expect(!contains(delta1, apex), "apex inside Delta_1 at m=" + std::to_string(m));
      delta_bar_validator(m, e.alpha, e.beta);
    }
    return o;
  });

  criterion(8, "admissible region: alpha + beta < 1/(m+1) on samples and boundary points", 0, [] {
    Outcome o;
    std::mt19937_64 rng(8);
    for (std::int64_t m = 1; m <= 10; ++m) {
      const auto tag = " at m=" + std::to_string(m);
      for (int s = 0; s < 50; ++s) {
        const auto p = sample_main2(rng, m);
        o.expect(p.admissible(), "sample outside bounds" + tag);
        o.expect(p.alpha + p.beta < Rational(1, m + 1), "alpha + beta >= 1/(m+1)" + tag);
      }
      const Rational m1 = m + 1, m2 = m + 2;
      auto edge = [&](const Rational& a) {
        Main2Params p{m, a, 0};
        return a + p.beta_upper();
      };
      const Rational quoted = m2 / (m1 * m1 + m2 * (1 + m1 * m2 * m2));
      const Rational peak = m2 / (m1 * m1 + m2 * (m1 * m1 + m2));
      for (const Rational& a : {Rational(0), quoted, peak, Main2Params{m, 0, 0}.alpha_upper()})
        o.expect(edge(a) < Rational(1, m + 1), "alpha + beta_upper(alpha) >= 1/(m+1) at alpha=" + to_string(a) + tag);
      // d/dalpha (alpha + beta_upper) = 1 - 1/((1-(m+2)alpha) D)^2 with D = 1 + 1/(m+1) + 1/(m+1)^2 - alpha/(1-(m+2)alpha)
      const Rational lin = 1 - m2 * peak;
      o.expect(lin * (1 + 1 / m1 + 1 / (m1 * m1) - peak / lin) == 1, "derivative does not vanish at the peak" + tag);
      o.expect(edge(peak) >= edge(quoted), "quoted point exceeds the peak" + tag);
    }
    return o;
  });

  criterion(9, "SNF and field independence on 200 random integer matrices", 0, [] {
    Outcome o;
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> dim(1, 8), entry(-6, 6), sparse(0, 3);
    const std::uint64_t primes[] = {2, 3, 5, 7, 101};
    for (int s = 0; s < 200; ++s) {
      const std::size_t r = dim(rng), c = s % 3 == 0 ? r : dim(rng);
      IntMatrix a(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) a(i, j) = sparse(rng) == 0 ? 0 : entry(rng);
      if (s % 7 == 0 && r > 1)
        for (std::size_t j = 0; j < c; ++j) a(r - 1, j) = a(0, j) * 2;
      const auto snf = smith_normal_form(a);
      const auto tag = " on sample " + std::to_string(s);
      for (std::size_t k = 0; k + 1 < snf.divisors.size(); ++k) {
        const auto& d0 = snf.divisors[k];
        const auto& d1 = snf.divisors[k + 1];
        o.expect(d0 >= 0 && (d0 == 0 ? d1 == 0 : d1 % d0 == 0), "divisibility chain" + tag);
      }
      const std::size_t rq = oracle::rank_q(a);
      o.expect(snf.rank == rq, "SNF rank differs from oracle" + tag);
      o.expect(rank(a, RationalField{}) == rq, "rank over Q differs from oracle" + tag);
      if (r == c) {
        Integer prod = 1;
        for (const auto& d : snf.divisors) prod *= d;
        const Integer dt = oracle::det(a);
        o.expect(prod == (dt < 0 ? Integer(-dt) : dt), "divisor product != |det|" + tag);
      }
      for (auto p : primes) {
        const std::size_t rp = oracle::rank_p(a, p);
        o.expect(rank(a, PrimeField(p)) == rp, "rank over F_p differs from oracle" + tag);
        if (good_prime(a, p))
          o.expect(kernel(a, PrimeField(p)).dimension() == kernel(a, RationalField{}).dimension(),
                   "kernel dimension depends on a good prime" + tag);
      }
    }
    return o;
  });

  criterion(10, "small-beta configuration: xi_{m+1} has degree [0,m] and witnesses 1 in HC_Q", 0, [] {
    Outcome o;
    for (std::int64_t m = 1; m <= 6; ++m) {
      const Rational beta(1, m + 2), alpha = Rational(1) / ((m + 2) * (m + 2));
      const auto delta = main2_triangle(m, alpha, beta);
      const auto tag = " at m=" + std::to_string(m);
      o.expect(degree_interval(xi(m + 1), delta) == DegreeInterval{0, Rational(m)}, "degree interval" + tag);
      const auto r = hc_member(1, parallel_triangle(delta, 0, m), m + 1, {0, 0}, RationalField{});
      o.expect(r.member, "1 not in HC_Q" + tag);
      o.expect(r.witness && *r.witness == xi(m + 1), "witness is not xi_{m+1}" + tag);
    }
    return o;
  });

  std::cout << (failures ? "FAILED: " + std::to_string(failures) + " criteria" : std::string("all criteria passed")) << std::endl;
  return failures ? 1 : 0;
}

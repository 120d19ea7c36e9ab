#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mds/blowup.hpp"
#include "mds/curves.hpp"
#include "mds/error.hpp"
#include "mds/lattice_geom.hpp"
#include "mds/laurent.hpp"
#include "mds/number.hpp"
#include "mds/sections.hpp"

namespace mds {

struct Premise {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct ZetaOutcome {
  std::int64_t p = 0;
  std::string status;  // "built", "NoValidJ" or an error code name
  std::optional<std::int64_t> j;
  std::size_t terms = 0;
  std::optional<DegreeInterval> degree;
  std::int64_t multiplicity = 0;
};

struct Certificate {
  std::string kind;     // "MDS" or "non-MDS"
  std::string theorem;  // which configuration was certified
  std::int64_t m = 0;
  Rational alpha;
  Rational beta;
  std::vector<PrimitiveRay> rays;
  std::optional<WpsWeights> weights;
  std::vector<Premise> premises;
  std::vector<std::string> caveats;
  std::vector<ZetaOutcome> zeta;
  std::optional<std::int64_t> prime_threshold;

  bool verdict() const {
    return !premises.empty() && std::all_of(premises.begin(), premises.end(), [](const Premise& p) { return p.pass; });
  }

  const Premise* first_failure() const {
    for (const auto& p : premises)
      if (!p.pass) return &p;
    return nullptr;
  }

  /// Throws PremiseFailed naming the first failing premise.
  const Certificate& require() const {
    if (const auto* p = first_failure())
      throw Error(ErrorCode::PremiseFailed, p->name + ": expected " + p->expected + ", got " + p->actual);
    return *this;
  }
};

namespace detail {

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

inline std::string class_text(const NumericClass& c) { return "(" + to_string(c.h) + ", " + to_string(c.e) + ")"; }

inline std::string interval_text(const DegreeInterval& d) { return "[" + to_string(d.a) + ", " + to_string(d.b) + "]"; }

inline void attach_fan(Certificate& cert, const RationalTriangle& delta) {
  const auto rays = normal_fan_rays(delta);
  cert.rays.assign(rays.begin(), rays.end());
  try {
    cert.weights = wps_weights(rays);
  } catch (const Error& e) {
    cert.caveats.push_back("toric surface is not a weighted projective plane (" + std::string(e.what()) + ")");
  }
}

inline Premise irreducibility_premise(std::int64_t m) {
  try {
    const auto c = eisenstein_certificate(m);
    return {"xi_" + std::to_string(m) + " irreducible (Eisenstein at x for x*xi(x,y/x))", "certificate holds",
            std::to_string(c.conditions.size()) + " conditions hold", true};
  } catch (const Error& e) {
    return {"xi_" + std::to_string(m) + " irreducible (Eisenstein at x for x*xi(x,y/x))", "certificate holds", e.what(), false};
  }
}

}  // namespace detail

/// Configuration with vertices (0,0), (m-1+alpha,-beta), (m,m+1); V(1-y)
/// supplies the curve disjoint from C.
inline Certificate certify_main1(std::int64_t m, const Rational& alpha, const Rational& beta) {
  using detail::bool_text;
  require_positive_m(m);
  const auto delta = main1_triangle(m, alpha, beta);
  const RationalField q;
  const auto xi_m = xi(m);

  Certificate cert;
  cert.kind = "MDS";
  cert.theorem = "main1";
  cert.m = m;
  cert.alpha = alpha;
  cert.beta = beta;
  detail::attach_fan(cert, delta);

  const auto hull = newton_polygon(xi_m);
  const bool inside = contains(delta, hull);
  cert.premises.push_back({"(i) Newton polygon of xi_m lies in Delta", "true", bool_text(inside), inside});

  const Rational twice_area = 2 * area(delta);
  cert.premises.push_back({"(ii) 2 Area(Delta) <= m^2", "<= " + std::to_string(m * m), to_string(twice_area), twice_area <= m * m});

  const auto c = class_of(xi_m, delta);
  const NumericClass expected_c{1, m};
  cert.premises.push_back({"(iii) class of xi_m", detail::class_text(expected_c), detail::class_text(c), c == expected_c});

  Premise p4{"(iv) C.D = 0 for D = V(1-y)", "0", "", false};
  try {
    const Rational h = vertical_segment_height(delta);
    const auto d = class_of(QPoly::constant(q, 1) - QPoly::monomial(q, {0, 1}), delta);
    const Rational cd = intersect(c, d, delta);
    p4.actual = to_string(cd) + " (h = " + to_string(h) + ", D = " + detail::class_text(d) + ")";
    p4.pass = cd == 0 && d == NumericClass{1 / h, 1};
  } catch (const Error& e) {
    p4.actual = e.what();
  }
  cert.premises.push_back(p4);

  const bool line = check_line_restriction(m);
  cert.premises.push_back({"(v) xi_m(x,1) = (-1)^m (x-1)^m", "true", bool_text(line), line});
  cert.premises.push_back(detail::irreducibility_premise(m));
  if (twice_area == m * m) cert.caveats.push_back("C.C = 0: C is a zero curve");
  return cert;
}

struct Main2Params {
  std::int64_t m = 1;
  Rational alpha;
  Rational beta;

  Rational alpha_upper() const { return Rational(1) / (1 + (m + 1) + (m + 1) * (m + 1)); }
  Rational beta_lower() const { return Rational(1) / (m + 2); }
  Rational beta_upper() const {
    const Rational m1 = m + 1;
    return 1 - 1 / (1 + 1 / m1 + 1 / (m1 * m1) - alpha / (1 - (m + 2) * alpha));
  }
  bool admissible() const {
    return m >= 1 && alpha > 0 && alpha < alpha_upper() && beta > beta_lower() && beta < beta_upper();
  }
};

struct Main2Options {
  std::vector<std::int64_t> primes;  // empty: all primes below 100
  std::int64_t l_check = 0;          // 0: 2m
};

inline std::vector<std::int64_t> primes_below(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p < n; ++p)
    if (is_prime(static_cast<std::uint64_t>(p))) out.push_back(p);
  return out;
}

/// Configuration with vertices (-alpha,0), (m-1+beta,0), (m,m+1).
inline Certificate certify_main2(const Main2Params& params, const Main2Options& options = {}) {
  using detail::bool_text;
  const std::int64_t m = params.m;
  require_positive_m(m);
  const Rational& alpha = params.alpha;
  const Rational& beta = params.beta;

  Certificate cert;
  cert.kind = "non-MDS";
  cert.theorem = "main2";
  cert.m = m;
  cert.alpha = alpha;
  cert.beta = beta;

  const bool ok_bounds = params.admissible();
  cert.premises.push_back({"(i) parameter bounds",
                           "0 < alpha < " + to_string(params.alpha_upper()) + ", " + to_string(params.beta_lower()) + " < beta < upper(alpha)",
                           "alpha = " + to_string(alpha) + ", beta = " + to_string(beta) + ", upper(alpha) = " + to_string(params.beta_upper()),
                           ok_bounds});
  if (!ok_bounds) return cert;

  const auto delta = main2_triangle(m, alpha, beta);
  detail::attach_fan(cert, delta);
  const auto xi_m = xi(m);

  const auto neg = is_negative_curve(xi_m, delta);
  const bool lt = alpha + beta < Rational(1, m + 1);
  const NumericClass expected_c{1, m};
  cert.premises.push_back({"(ii) alpha + beta < 1/(m+1) and C.C < 0",
                           "alpha + beta < " + to_string(Rational(1, m + 1)) + ", C = " + detail::class_text(expected_c) + ", C.C < 0",
                           "alpha + beta = " + to_string(alpha + beta) + ", C = " + detail::class_text(neg.cls) + ", C.C = " + to_string(neg.self_intersection),
                           lt && neg.cls == expected_c && neg.self_intersection < 0});

  const Rational base_len = Rational(m - 1) + alpha + beta;
  const NumericClass d{Rational(m) / base_len, m + 1};
  const auto delta_prime = parallel_triangle(delta, 0, m);
  const Rational cd = intersect(neg.cls, d, delta);
  const bool d_consistent = area(delta_prime) == d.h * d.h * area(delta);
  cert.premises.push_back({"(iii) C.D = 0 for D = (m/(m-1+alpha+beta), m+1)", "0",
                           to_string(cd) + " (D = " + detail::class_text(d) + ")", cd == 0 && d_consistent});

  const std::int64_t l_check = options.l_check > 0 ? options.l_check : 2 * m;
  std::ostringstream hc_actual;
  bool hc_absent = true;
  for (std::int64_t l = 1; l <= std::max(l_check, m); ++l) {
    const auto r = hc_member(l, delta_prime, m + 1, {0, 0}, RationalField{});
    hc_actual << (l > 1 ? ", " : "") << l << ":" << (r.member ? "member" : "absent") << "(dim " << r.kernel_dimension << ")";
    hc_absent = hc_absent && !r.member;
  }
  cert.premises.push_back({"(iv) l not in HC_Q for l = 1.." + std::to_string(std::max(l_check, m)) + " (includes l = m)",
                           "absent for all l", hc_actual.str(), hc_absent});

  const auto primes = options.primes.empty() ? primes_below(100) : options.primes;
  for (auto p : primes) {
    ZetaOutcome z;
    z.p = p;
    try {
      const auto r = build_zeta_p(m, p, alpha, beta);
      z.status = "built";
      z.j = r.j;
      z.terms = r.zeta.size();
      z.degree = r.degree;
      z.multiplicity = r.multiplicity;
    } catch (const Error& e) {
      z.status = std::string(to_string(e.code()));
    }
    cert.zeta.push_back(z);
  }
  // Threshold: smallest tested prime from which every tested prime has a valid j.
  for (std::size_t i = cert.zeta.size(); i-- > 0;) {
    if (cert.zeta[i].status == "NoValidJ") break;
    cert.prime_threshold = cert.zeta[i].p;
  }
  bool zeta_ok = cert.prime_threshold.has_value();
  std::ostringstream zeta_actual;
  std::size_t built = 0;
  for (const auto& z : cert.zeta) {
    if (cert.prime_threshold && z.p >= *cert.prime_threshold) {
      zeta_ok = zeta_ok && z.status == "built";
      built += z.status == "built";
    }
  }
  zeta_actual << built << " built at or above p0 = " << (cert.prime_threshold ? std::to_string(*cert.prime_threshold) : "none");
  cert.premises.push_back({"(v) zeta_p passes all post-checks for tested primes >= p0", "all built", zeta_actual.str(), zeta_ok});

  const auto bar = delta_bar_report(m, alpha, beta);
  std::string bar_actual = "all clauses hold";
  for (const auto& c : bar.clauses)
    if (!c.pass) {
      bar_actual = "fails: " + c.name;
      break;
    }
  cert.premises.push_back({"(vi) Delta_bar validator", "all clauses hold", bar_actual, bar.pass()});
  cert.premises.push_back(detail::irreducibility_premise(m));
  cert.premises.push_back(detail::irreducibility_premise(m + 1));

  cert.caveats.push_back("zeta_p evidence covers finitely many primes; the hypothesis needs all p >> 0");
  cert.caveats.push_back("verdict relies on the HC bound: HC_k nonempty iff m in HC_k, given p in HC_Fp for p >> 0");
  cert.caveats.push_back("stronger bound (HC_k nonempty iff 1 in HC_k) not checked");
  return cert;
}

/// Same triangle shape as main2 with 0 <= beta <= 1/(m+2) and small area;
/// xi_{m+1} gives a section of D avoiding the fixed point.
inline Certificate certify_remark(std::int64_t m, const Rational& alpha, const Rational& beta) {
  using detail::bool_text;
  require_positive_m(m);

  Certificate cert;
  cert.kind = "MDS";
  cert.theorem = "remark";
  cert.m = m;
  cert.alpha = alpha;
  cert.beta = beta;

  const bool ok_beta = beta >= 0 && beta <= Rational(1, m + 2) && alpha >= 0;
  cert.premises.push_back({"(i) alpha >= 0, 0 <= beta <= 1/(m+2)", "true",
                           "alpha = " + to_string(alpha) + ", beta = " + to_string(beta), ok_beta});
  if (!ok_beta) return cert;

  const auto delta = main2_triangle(m, alpha, beta);
  detail::attach_fan(cert, delta);
  const auto xi_m = xi(m);
  const auto xi_next = xi(m + 1);

  const bool inside = contains(delta, newton_polygon(xi_m));
  cert.premises.push_back({"(ii) Newton polygon of xi_m lies in Delta", "true", bool_text(inside), inside});

  const Rational twice_area = 2 * area(delta);
  cert.premises.push_back({"(iii) 2 Area(Delta) <= m^2", "<= " + std::to_string(m * m), to_string(twice_area), twice_area <= m * m});

  const auto c = class_of(xi_m, delta);
  const NumericClass d{Rational(m) / (Rational(m - 1) + alpha + beta), m + 1};
  const Rational cd = intersect(c, d, delta);
  cert.premises.push_back({"(iv) C = (1, m) and C.D = 0", "(1, m), 0", detail::class_text(c) + ", " + to_string(cd),
                           c == NumericClass{1, m} && cd == 0});

  const auto di = degree_interval(xi_next, delta);
  cert.premises.push_back({"(v) xi_{m+1} lies in degree [0, m]", "within [0, " + std::to_string(m) + "]",
                           detail::interval_text(di), di.within({0, Rational(m)})});

  const auto delta_prime = parallel_triangle(delta, 0, m);
  const SectionProblem problem(delta_prime, m + 1, RationalPoint(0, 0));
  const auto w = check_witness(xi_next, problem);
  cert.premises.push_back({"(vi) xi_{m+1} is a section of D not vanishing at P", "true",
                           "support " + bool_text(w.support_in_triangle) + ", multiplicity " + std::to_string(w.multiplicity) +
                               ", constant term " + bool_text(w.vertex_coefficient_nonzero),
                           w.holds()});
  cert.premises.push_back(detail::irreducibility_premise(m));
  if (twice_area == m * m) cert.caveats.push_back("C.C = 0: C is a zero curve");
  return cert;
}

struct ExampleFamily {
  std::int64_t m = 0;
  Rational alpha;
  Rational beta;
  RationalTriangle triangle{{0, 0}, {1, 0}, {0, 1}};
  std::array<PrimitiveRay, 3> rays{PrimitiveRay(1, 0), PrimitiveRay(0, 1), PrimitiveRay(-1, -1)};
  WpsWeights weights;
  WpsWeights closed_form;

  bool matches() const { return weights == closed_form; }
};

inline ExampleFamily example_family(std::int64_t m) {
  require_positive_m(m);
  const Integer s = m + 2;
  ExampleFamily out;
  out.m = m;
  out.alpha = Rational(1) / (s * s);
  out.beta = make_rational(s * s + 1, s * s * s + 1);
  out.triangle = main2_triangle(m, out.alpha, out.beta);
  out.rays = normal_fan_rays(out.triangle);
  out.weights = wps_weights(out.rays);
  out.closed_form = {{s * s, s * s * s + 1, s * s * s * (m * m + 2 * m - 1) + m * m + 3 * m + 1}};
  return out;
}

struct ScanOptions {
  Main2Options main2;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct ScanRow {
  std::size_t index = 0;
  std::int64_t m = 0;
  Rational alpha;
  Rational beta;
  bool admissible = false;
  std::optional<Rational> self_intersection;
  std::string outcome;
  std::string detail;
};

/// One cell: main2 certifier inside its bounds, the remark certifier for
/// beta <= 1/(m+2), otherwise uncertified.
inline ScanRow scan_cell(std::size_t index, std::int64_t m, const Rational& alpha, const Rational& beta, const ScanOptions& options) {
  ScanRow row;
  row.index = index;
  row.m = m;
  row.alpha = alpha;
  row.beta = beta;
  try {
    const Main2Params params{m, alpha, beta};
    row.admissible = params.admissible();
    row.self_intersection = is_negative_curve(xi(m), main2_triangle(m, alpha, beta)).self_intersection;
    Certificate cert;
    if (row.admissible) {
      cert = certify_main2(params, options.main2);
      row.outcome = cert.verdict() ? "non-MDS-certified" : "non-MDS-failed";
    } else if (alpha >= 0 && beta >= 0 && beta <= Rational(1, m + 2)) {
      cert = certify_remark(m, alpha, beta);
      row.outcome = cert.verdict() ? "MDS-certified" : "MDS-failed";
    } else {
      row.outcome = "uncertified";
      row.detail = "outside both certified regions";
      return row;
    }
    if (const auto* p = cert.first_failure()) row.detail = p->name + ": " + p->actual;
  } catch (const Error& e) {
    row.outcome = "error";
    row.detail = e.what();
  }
  return row;
}

/// Cells run on a worker pool; rows come back in grid order (alpha major).
inline std::vector<ScanRow> scan(std::int64_t m, const std::vector<Rational>& alphas, const std::vector<Rational>& betas,
                                 const ScanOptions& options = {}) {
  require_positive_m(m);
  const std::size_t n = alphas.size() * betas.size();
  std::vector<ScanRow> rows(n);
  if (n == 0) return rows;
  unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;)
      rows[i] = scan_cell(i, m, alphas[i / betas.size()], betas[i % betas.size()], options);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

inline std::string scan_tsv(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  out << "index\tm\talpha\tbeta\tadmissible\tself_intersection\toutcome\tdetail\n";
  for (const auto& r : rows)
    out << r.index << '\t' << r.m << '\t' << to_string(r.alpha) << '\t' << to_string(r.beta) << '\t'
        << (r.admissible ? "true" : "false") << '\t' << (r.self_intersection ? to_string(*r.self_intersection) : "-") << '\t'
        << r.outcome << '\t' << r.detail << '\n';
  return out.str();
}

}  // namespace mds

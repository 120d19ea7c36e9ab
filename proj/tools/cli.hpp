#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mds/mds.hpp"

namespace mds::cli {

/// Exit statuses: computed, certificate/premise failure, input error.
enum Exit : int { kOk = 0, kFailed = 1, kInputError = 2 };

inline int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::PremiseFailed:
    case ErrorCode::CertificateFails:
    case ErrorCode::NoValidJ:
    case ErrorCode::PostVerificationFailed:
    case ErrorCode::ValidationFailed:
    case ErrorCode::NotAWps:
      return kFailed;
    default:
      return kInputError;
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string weights_text(const WpsWeights& w) {
  return "P(" + to_string(w.w[0]) + "," + to_string(w.w[1]) + "," + to_string(w.w[2]) + ")";
}

inline std::string point_text(const RationalPoint& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

inline std::string rays_text(const std::vector<PrimitiveRay>& rays) {
  std::string s;
  for (const auto& r : rays) s += (s.empty() ? "" : " ") + ("(" + to_string(r.u1) + "," + to_string(r.u2) + ")");
  return s;
}

inline std::string render_certificate(const Certificate& c) {
  std::ostringstream out;
  out << c.kind << " certificate (" << c.theorem << "), m=" << c.m << ", alpha=" << to_string(c.alpha)
      << ", beta=" << to_string(c.beta) << '\n';
  if (!c.rays.empty()) out << "rays: " << rays_text(c.rays) << '\n';
  if (c.weights) out << "weights: " << weights_text(*c.weights) << '\n';
  for (const auto& p : c.premises)
    out << (p.pass ? "[pass] " : "[FAIL] ") << p.name << ": expected " << p.expected << "; actual " << p.actual << '\n';
  for (const auto& z : c.zeta) {
    out << "  zeta_p p=" << z.p << ": " << z.status;
    if (z.j) out << " j=" << *z.j << " terms=" << z.terms << " multiplicity=" << z.multiplicity;
    if (z.degree) out << " degree=[" << to_string(z.degree->a) << ", " << to_string(z.degree->b) << "]";
    out << '\n';
  }
  if (c.prime_threshold) out << "observed prime threshold p0: " << *c.prime_threshold << '\n';
  for (const auto& cv : c.caveats) out << "caveat: " << cv << '\n';
  out << "verdict: " << (c.verdict() ? "pass" : "fail") << '\n';
  return out.str();
}

struct Options {
  bool json = false;
  std::string triangle, triangle_file;
  std::string poly, poly_file;
  std::string field = "Q";
  std::string rays;
  std::int64_t m = 0;
  std::int64_t p = 0;
  std::int64_t l = 1;
  std::int64_t n = -1;
  std::int64_t order = 0;
  std::int64_t l_check = 0;
  std::string alpha, beta;
  std::string vertex;
  std::string c1, c2;
  std::string csv;
  std::string primes;
  std::string alphas, betas;
  unsigned threads = 0;
  bool with_poly = false;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Exact computations for blowups of weighted projective planes at a general point", "mds"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_flag("--json", o_.json, "Emit JSON instead of text");
    build(app);

    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? kOk : kInputError;
    }

    try {
      return action_();
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      return exit_for(e.code());
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kInputError;
    }
  }

 private:
  void emit(const json& j) { out_ << j.dump(2) << '\n'; }

  RationalTriangle triangle() const {
    if (!o_.triangle_file.empty()) return parse_triangle(read_file(o_.triangle_file));
    if (o_.triangle.empty()) throw Error(ErrorCode::InvalidArgument, "a triangle is required (--triangle or --triangle-file)");
    return parse_triangle(o_.triangle);
  }

  AnyPoly poly() const {
    const auto spec = parse_field_spec(o_.field);
    if (!o_.poly_file.empty()) return parse_any_poly(read_file(o_.poly_file), spec);
    if (o_.poly.empty()) throw Error(ErrorCode::InvalidArgument, "a polynomial is required (--poly or --poly-file)");
    return parse_any_poly(o_.poly, spec);
  }

  /// Explicit --alpha/--beta, or the example-family values for m.
  std::pair<Rational, Rational> params(bool required) const {
    if (o_.alpha.empty() != o_.beta.empty()) throw Error(ErrorCode::InvalidArgument, "give both --alpha and --beta");
    if (!o_.alpha.empty()) return {parse_rational(o_.alpha), parse_rational(o_.beta)};
    if (required) throw Error(ErrorCode::InvalidArgument, "--alpha and --beta are required");
    const auto e = example_family(o_.m);
    return {e.alpha, e.beta};
  }

  std::vector<std::int64_t> prime_list() const {
    std::vector<std::int64_t> out;
    for (const auto& q : parse_rational_list(o_.primes)) {
      if (!is_integer(q) || q < 2) throw Error(ErrorCode::InvalidArgument, "bad prime " + to_string(q));
      out.push_back(static_cast<std::int64_t>(num(q)));
    }
    return out;
  }

  void add_triangle_opts(CLI::App* s) {
    s->add_option("--triangle", o_.triangle, "Three vertices \"x,y x,y x,y\" or the JSON form");
    s->add_option("--triangle-file", o_.triangle_file, "File holding a triangle (text or JSON)");
  }

  void add_poly_opts(CLI::App* s) {
    s->add_option("--poly", o_.poly, "Polynomial text such as \"1 + x - 3*x*y\" or JSON");
    s->add_option("--poly-file", o_.poly_file, "File holding a polynomial (text or JSON)");
    s->add_option("--field", o_.field, "Q or Fp:<prime>");
  }

  void add_params(CLI::App* s) {
    s->add_option("--alpha", o_.alpha, "Rational alpha");
    s->add_option("--beta", o_.beta, "Rational beta");
  }

  void build(CLI::App& app) {
    auto* xi_cmd = app.add_subcommand("xi", "Print xi_m");
    xi_cmd->add_option("--m", o_.m, "Multiplicity m >= 1")->required();
    xi_cmd->add_option("--field", o_.field, "Q or Fp:<prime>");
    xi_cmd->callback([this] { action_ = [this] { return cmd_xi(); }; });

    auto* tri = app.add_subcommand("triangle", "Triangle queries");
    tri->require_subcommand(1);
    auto* info = tri->add_subcommand("info", "Area, lattice points, normal fan, weights");
    add_triangle_opts(info);
    info->callback([this] { action_ = [this] { return cmd_triangle_info(); }; });

    auto* w = app.add_subcommand("weights", "Weights of the weighted projective plane");
    add_triangle_opts(w);
    w->add_option("--rays", o_.rays, "Three rays \"a,b c,d e,f\" instead of a triangle");
    w->callback([this] { action_ = [this] { return cmd_weights(); }; });

    auto* cls = app.add_subcommand("class", "Numeric class and self-intersection of V(f)");
    add_poly_opts(cls);
    add_triangle_opts(cls);
    cls->callback([this] { action_ = [this] { return cmd_class(); }; });

    auto* inter = app.add_subcommand("intersect", "Intersection number of two classes \"h,e\"");
    inter->add_option("--c1", o_.c1, "First class h,e")->required();
    inter->add_option("--c2", o_.c2, "Second class h,e")->required();
    add_triangle_opts(inter);
    inter->callback([this] { action_ = [this] { return cmd_intersect(); }; });

    auto* deg = app.add_subcommand("degree-interval", "Degree interval of f relative to a triangle");
    add_poly_opts(deg);
    add_triangle_opts(deg);
    deg->callback([this] { action_ = [this] { return cmd_degree(); }; });

    auto* sec = app.add_subcommand("sections", "Section space: constraint matrix, SNF and kernel");
    add_triangle_opts(sec);
    sec->add_option("--order", o_.order, "Required vanishing order at t0")->required();
    sec->add_option("--vertex", o_.vertex, "Distinguished vertex x,y (default: first vertex)");
    sec->add_option("--field", o_.field, "Q or Fp:<prime>");
    sec->add_option("--csv", o_.csv, "Write the constraint matrix as CSV to this file");
    sec->callback([this] { action_ = [this] { return cmd_sections(); }; });

    auto* hc = app.add_subcommand("hc", "Membership of l in HC_K");
    hc->add_option("--l", o_.l, "Multiple l >= 1")->required();
    hc->add_option("--m", o_.m, "Use the non-MDS configuration for this m");
    add_params(hc);
    add_triangle_opts(hc);
    hc->add_option("--n", o_.n, "Multiplicity of D at E (explicit triangle only)");
    hc->add_option("--vertex", o_.vertex, "Distinguished vertex x,y (explicit triangle only)");
    hc->add_option("--field", o_.field, "Q or Fp:<prime>");
    hc->callback([this] { action_ = [this] { return cmd_hc(); }; });

    auto* z = app.add_subcommand("zeta-p", "Build and verify zeta_p over F_p");
    z->add_option("--m", o_.m, "m >= 1")->required();
    z->add_option("--p", o_.p, "Prime p")->required();
    add_params(z);
    z->add_flag("--poly", o_.with_poly, "Include the polynomial itself");
    z->callback([this] { action_ = [this] { return cmd_zeta(); }; });

    auto* c1 = app.add_subcommand("certify-main1", "MDS certificate for (0,0), (m-1+alpha,-beta), (m,m+1)");
    c1->add_option("--m", o_.m, "m >= 1")->required();
    c1->add_option("--alpha", o_.alpha, "Rational alpha")->required();
    c1->add_option("--beta", o_.beta, "Rational beta")->required();
    c1->callback([this] { action_ = [this] { return cmd_main1(); }; });

    auto* c2 = app.add_subcommand("certify-main2", "Non-MDS certificate for (-alpha,0), (m-1+beta,0), (m,m+1)");
    c2->add_option("--m", o_.m, "m >= 1")->required();
    add_params(c2);
    c2->add_option("--primes", o_.primes, "Comma-separated primes for zeta_p (default: all below 100)");
    c2->add_option("--l-check", o_.l_check, "Check HC absence for l = 1..L (default 2m)");
    c2->callback([this] { action_ = [this] { return cmd_main2(); }; });

    auto* rem = app.add_subcommand("certify-remark", "MDS certificate for beta <= 1/(m+2) via xi_{m+1}");
    rem->add_option("--m", o_.m, "m >= 1")->required();
    rem->add_option("--alpha", o_.alpha, "Rational alpha")->required();
    rem->add_option("--beta", o_.beta, "Rational beta")->required();
    rem->callback([this] { action_ = [this] { return cmd_remark(); }; });

    auto* db = app.add_subcommand("delta-bar", "Validate the auxiliary triangle used against m in HC_Q");
    db->add_option("--m", o_.m, "m >= 1")->required();
    add_params(db);
    db->callback([this] { action_ = [this] { return cmd_delta_bar(); }; });

    auto* eis = app.add_subcommand("eisenstein", "Irreducibility certificate for xi_m");
    eis->add_option("--m", o_.m, "m >= 1")->required();
    eis->add_option("--field", o_.field, "Q or Fp:<prime>");
    eis->callback([this] { action_ = [this] { return cmd_eisenstein(); }; });

    auto* ex = app.add_subcommand("example-family", "Closed-form parameters, fan and weights");
    ex->add_option("--m", o_.m, "m >= 1")->required();
    ex->callback([this] { action_ = [this] { return cmd_example(); }; });

    auto* sc = app.add_subcommand("scan", "Certify every cell of an (alpha, beta) grid");
    sc->add_option("--m", o_.m, "m >= 1")->required();
    sc->add_option("--alphas", o_.alphas, "Comma-separated rationals")->required();
    sc->add_option("--betas", o_.betas, "Comma-separated rationals")->required();
    sc->add_option("--threads", o_.threads, "Worker threads (0: hardware)");
    sc->add_option("--primes", o_.primes, "Primes for zeta_p in non-MDS cells");
    sc->add_option("--l-check", o_.l_check, "HC absence bound in non-MDS cells");
    sc->callback([this] { action_ = [this] { return cmd_scan(); }; });
  }

  int cmd_xi() {
    return std::visit(
        [&](const auto& f) {
          const auto p = xi(o_.m, f);
          if (o_.json)
            emit(poly_json(p));
          else
            out_ << to_string(p) << '\n';
          return int(kOk);
        },
        parse_field_spec(o_.field));
  }

  int cmd_triangle_info() {
    const auto t = triangle();
    const auto pts = lattice_points(t);
    const auto rays = normal_fan_rays(t);
    std::optional<WpsWeights> w;
    std::string not_wps;
    try {
      w = wps_weights(rays);
    } catch (const Error& e) {
      not_wps = e.what();
    }
    if (o_.json) {
      json j = triangle_json(t);
      j["area"] = rational_json(area(t));
      j["lattice_points"] = pts.size();
      j["rays"] = json::array({ray_json(rays[0]), ray_json(rays[1]), ray_json(rays[2])});
      j["weights"] = w ? weights_json(*w) : json(nullptr);
      emit(j);
      return kOk;
    }
    out_ << "vertices: " << point_text(t.vertex(0)) << " " << point_text(t.vertex(1)) << " " << point_text(t.vertex(2)) << '\n';
    out_ << "area: " << to_string(area(t)) << '\n';
    out_ << "lattice points: " << pts.size() << '\n';
    out_ << "rays: " << rays_text({rays.begin(), rays.end()}) << '\n';
    out_ << "weights: " << (w ? weights_text(*w) : not_wps) << '\n';
    return kOk;
  }

  int cmd_weights() {
    std::array<PrimitiveRay, 3> rays{PrimitiveRay(1, 0), PrimitiveRay(0, 1), PrimitiveRay(-1, -1)};
    if (!o_.rays.empty()) {
      std::istringstream in(o_.rays);
      std::vector<PrimitiveRay> rs;
      for (std::string tok; in >> tok;) {
        const auto p = parse_point(tok);
        if (!p.is_lattice()) throw Error(ErrorCode::ParseError, "ray coordinates must be integers");
        rs.emplace_back(num(p.x), num(p.y));
      }
      if (rs.size() != 3) throw Error(ErrorCode::ParseError, "expected three rays");
      rays = {rs[0], rs[1], rs[2]};
    } else {
      rays = normal_fan_rays(triangle());
    }
    const auto w = wps_weights(rays);
    if (o_.json)
      emit(weights_json(w));
    else
      out_ << weights_text(w) << '\n';
    return kOk;
  }

  int cmd_class() {
    const auto t = triangle();
    const auto r = std::visit([&](const auto& f) { return is_negative_curve(f, t); }, poly());
    if (o_.json) {
      emit(negativity_json(r));
      return kOk;
    }
    out_ << "class: h = " << to_string(r.cls.h) << ", e = " << to_string(r.cls.e) << '\n';
    out_ << "self-intersection: " << to_string(r.self_intersection) << '\n';
    out_ << "negative: " << (r.negative ? (r.zero_curve ? "yes (zero curve)" : "yes") : "no") << '\n';
    return kOk;
  }

  int cmd_intersect() {
    const Rational v = intersect(parse_class(o_.c1), parse_class(o_.c2), triangle());
    if (o_.json)
      emit({{"value", rational_json(v)}});
    else
      out_ << to_string(v) << '\n';
    return kOk;
  }

  int cmd_degree() {
    const auto t = triangle();
    const auto d = std::visit([&](const auto& f) { return degree_interval(f, t); }, poly());
    if (o_.json)
      emit(interval_json(d));
    else
      out_ << "[" << to_string(d.a) << ", " << to_string(d.b) << "]\n";
    return kOk;
  }

  int cmd_sections() {
    const auto t = triangle();
    const RationalPoint v = o_.vertex.empty() ? t.vertex(0) : parse_point(o_.vertex);
    const SectionProblem problem(t, o_.order, v);
    const auto m = constraint_matrix(problem);
    if (!o_.csv.empty()) {
      std::ofstream f(o_.csv);
      if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + o_.csv);
      f << matrix_csv(m);
    }
    const auto snf = smith_normal_form(m);
    return std::visit(
        [&](const auto& field) {
          const auto space = section_space(problem, field);
          if (o_.json) {
            json basis = json::array();
            for (std::size_t k = 0; k < space.dimension(); ++k) basis.push_back(poly_json(space.polynomial(k)));
            json pts = json::array();
            for (const auto& q : space.points) pts.push_back(json::array({q.i, q.j}));
            emit({{"field", field.name()},
                  {"order", o_.order},
                  {"lattice_points", pts},
                  {"matrix", matrix_json(m)},
                  {"snf", snf_json(snf)},
                  {"kernel_dimension", space.dimension()},
                  {"basis", basis}});
            return int(kOk);
          }
          out_ << "lattice points: " << space.points.size() << '\n';
          out_ << "constraints: " << m.rows() << " x " << m.cols() << '\n';
          out_ << "SNF rank: " << snf.rank << '\n';
          out_ << "kernel dimension over " << field.name() << ": " << space.dimension() << '\n';
          for (std::size_t k = 0; k < space.dimension(); ++k) out_ << "  " << to_string(space.polynomial(k)) << '\n';
          return int(kOk);
        },
        parse_field_spec(o_.field));
  }

  int cmd_hc() {
    RationalTriangle delta_prime{{0, 0}, {1, 0}, {0, 1}};
    std::int64_t n = o_.n;
    RationalPoint vertex{0, 0};
    if (o_.m > 0 && o_.triangle.empty() && o_.triangle_file.empty()) {
      const auto [a, b] = params(false);
      delta_prime = parallel_triangle(main2_triangle(o_.m, a, b), 0, o_.m);
      if (n < 0) n = o_.m + 1;
    } else {
      delta_prime = triangle();
      if (n < 0) throw Error(ErrorCode::InvalidArgument, "--n is required with an explicit triangle");
      vertex = o_.vertex.empty() ? delta_prime.vertex(0) : parse_point(o_.vertex);
    }
    return std::visit(
        [&](const auto& field) {
          const auto r = hc_member(o_.l, delta_prime, n, vertex, field);
          if (o_.json) {
            emit(hc_json(r));
            return int(kOk);
          }
          out_ << "l=" << r.l << " field=" << r.field << " member=" << (r.member ? "true" : "false")
               << " reason=" << to_string(r.reason) << " kernel_dimension=" << r.kernel_dimension << '\n';
          if (r.witness) out_ << "witness: " << to_string(*r.witness) << '\n';
          return int(kOk);
        },
        parse_field_spec(o_.field));
  }

  int cmd_zeta() {
    const auto [a, b] = params(false);
    const auto z = build_zeta_p(o_.m, o_.p, a, b);
    if (o_.json) {
      emit(zeta_json(z, o_.with_poly));
      return kOk;
    }
    out_ << "p=" << z.p << " k=" << z.k << " l=" << z.l << " j=" << z.j << '\n';
    out_ << "terms: " << z.zeta.size() << '\n';
    out_ << "degree: [" << to_string(z.degree.a) << ", " << to_string(z.degree.b) << "] within [0, " << z.p * z.m << "]\n";
    out_ << "multiplicity: " << z.multiplicity << " >= " << z.p * (z.m + 1) << '\n';
    out_ << "constant term: " << z.constant_term << '\n';
    if (o_.with_poly) out_ << to_string(z.zeta) << '\n';
    return kOk;
  }

  int report(const Certificate& c) {
    if (o_.json)
      emit(certificate_json(c));
    else
      out_ << render_certificate(c);
    return c.verdict() ? kOk : kFailed;
  }

  int cmd_main1() {
    const auto [a, b] = params(true);
    return report(certify_main1(o_.m, a, b));
  }

  int cmd_main2() {
    const auto [a, b] = params(false);
    Main2Options opts;
    opts.primes = prime_list();
    opts.l_check = o_.l_check;
    return report(certify_main2({o_.m, a, b}, opts));
  }

  int cmd_remark() {
    const auto [a, b] = params(true);
    return report(certify_remark(o_.m, a, b));
  }

  int cmd_delta_bar() {
    const auto [a, b] = params(false);
    const auto r = delta_bar_report(o_.m, a, b);
    if (o_.json) {
      emit(delta_bar_json(r));
    } else {
      out_ << "x_L = " << to_string(r.x_left) << ", x_R = " << to_string(r.x_right) << ", height = " << to_string(r.height) << '\n';
      for (const auto& c : r.clauses)
        out_ << (c.pass ? "[pass] " : "[FAIL] ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
    }
    return r.pass() ? kOk : kFailed;
  }

  int cmd_eisenstein() {
    return std::visit(
        [&](const auto& field) {
          const auto c = eisenstein_certificate(o_.m, field);
          if (o_.json) {
            emit(irreducibility_json(c));
            return int(kOk);
          }
          out_ << "x*xi_" << c.m << "(x,y/x) = " << c.transformed << " over " << c.field << '\n';
          for (const auto& x : c.conditions) out_ << (x.holds ? "[pass] " : "[FAIL] ") << x.name << '\n';
          return int(kOk);
        },
        parse_field_spec(o_.field));
  }

  int cmd_example() {
    const auto e = example_family(o_.m);
    if (o_.json) {
      emit(example_family_json(e));
    } else {
      out_ << "alpha = " << to_string(e.alpha) << ", beta = " << to_string(e.beta) << '\n';
      out_ << "rays: " << rays_text({e.rays.begin(), e.rays.end()}) << '\n';
      out_ << "weights: " << weights_text(e.weights) << '\n';
      out_ << "closed form: " << weights_text(e.closed_form) << (e.matches() ? " (match)" : " (MISMATCH)") << '\n';
    }
    return e.matches() ? kOk : kFailed;
  }

  int cmd_scan() {
    ScanOptions opts;
    opts.threads = o_.threads;
    opts.main2.primes = prime_list();
    opts.main2.l_check = o_.l_check;
    const auto rows = scan(o_.m, parse_rational_list(o_.alphas), parse_rational_list(o_.betas), opts);
    if (o_.json) {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(scan_row_json(r));
      emit(arr);
    } else {
      out_ << scan_tsv(rows);
    }
    return kOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  Options o_;
  std::function<int()> action_;
};

/// Entry point shared by the binary and the tests; args exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(args);
}

}  // namespace mds::cli

#include "polyint/cli.hpp"

#include "polyint/axial.hpp"
#include "polyint/errors.hpp"
#include "polyint/io.hpp"
#include "polyint/parallel.hpp"
#include "polyint/phase.hpp"
#include "polyint/recovery.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#ifndef POLYINT_VERSION
#define POLYINT_VERSION "0.0.0"
#endif

namespace polyint::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string body_path;
  std::string omega;
  int grid = 0;  // 0: command default
  int nodes = 0;
  double tol = 1e-7;
  int max_degree = -1;
  std::string r;
  std::string alpha;
  std::string out;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  int k = -1;
  std::string x;
  int points = 9;
};

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

// Everything that can change the results; --out and --workers cannot.
std::string config_digest(const RunConfig& c, const std::string& body_text) {
  const std::string canon = fmt::format(
      "command={}\nbody={}\nomega={}\ngrid={}\nnodes={}\ntol={:.17g}\nmax_degree={}\nr={}\n"
      "alpha={}\nseed={}\nk={}\nx={}\npoints={}\n",
      c.command, sha256_hex(body_text), c.omega, c.grid, c.nodes, c.tol, c.max_degree, c.r,
      c.alpha, c.seed, c.k, c.x, c.points);
  return "sha256:" + sha256_hex(canon);
}

void setup_logging() {
  static const bool once = [] {
    auto logger = spdlog::stderr_logger_mt("polyint");
    spdlog::set_default_logger(logger);
    return true;
  }();
  (void)once;
  const char* env = std::getenv("POLYINT_LOG");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

json vec_json(const Vec& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json mat_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i).transpose()));
  return rows;
}

json fit_json(const Vec& omega, const PolyFit& f) {
  return {{"omega", vec_json(omega)},
          {"degree", f.degree},
          {"coefficients", f.coefficients},
          {"residual", f.residual},
          {"verdict", std::string(to_string(f.verdict))}};
}

json rational_json(const ComplexRational& c) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const std::complex<long double> v = c.value();
  return {{"re", static_cast<double>(v.real())},
          {"im", static_cast<double>(v.imag())},
          {"re_num", numerator(c.re).str()},
          {"re_den", denominator(c.re).str()},
          {"im_num", numerator(c.im).str()},
          {"im_den", denominator(c.im).str()}};
}

class Session {
 public:
  Session(RunConfig cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {}

  int dispatch() {
    body_text_ = cfg_.body_path.empty() ? std::string() : io::read_file(cfg_.body_path);
    digest_ = config_digest(cfg_, body_text_);
    section_.seed = cfg_.seed;
    if (cfg_.workers) set_worker_count(cfg_.workers);
    spdlog::info("{} {} ({})", cfg_.command, cfg_.body_path, digest_);
    const std::string& c = cfg_.command;
    if (c == "vsec") return vsec();
    if (c == "fit") return fit();
    if (c == "exponent") return exponent();
    if (c == "recover") return recover();
    if (c == "phase") return phase();
    if (c == "invert") return invert();
    if (c == "axial") return axial();
    if (c == "checks") return checks();
    throw InputError("unknown command " + c);
  }

 private:
  ConvexBody body() const {
    if (cfg_.body_path.empty()) throw InputError("--body is required");
    return io::parse_body(body_text_, cfg_.body_path);
  }

  Vec omega(const ConvexBody& b) const {
    if (cfg_.omega.empty()) return Vec::Unit(b.dim(), b.dim() - 1);
    Vec w = io::parse_vector(cfg_.omega, true);
    if (w.size() != b.dim())
      throw InputError(fmt::format("--omega has {} components, body has dimension {}", w.size(), b.dim()));
    return w;
  }

  int nodes(int fallback) const { return cfg_.nodes > 0 ? cfg_.nodes : fallback; }
  int grid(int fallback) const { return cfg_.grid > 0 ? cfg_.grid : fallback; }

  FitParams fit_params(int fallback_nodes) const {
    FitParams p;
    p.nodes = nodes(fallback_nodes);
    p.max_degree = cfg_.max_degree;
    p.tol = cfg_.tol;
    return p;
  }

  json header() const {
    return {{"name", "polyint"}, {"version", POLYINT_VERSION}, {"command", cfg_.command},
            {"config_digest", digest_}, {"seed", cfg_.seed}};
  }

  std::string csv_header() const {
    return fmt::format("# polyint {} {} config={} seed={}\n", POLYINT_VERSION, cfg_.command, digest_, cfg_.seed);
  }

  void emit(const std::string& text) {
    if (cfg_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(cfg_.out, std::ios::binary);
    if (!f) throw InputError(fmt::format("cannot write '{}'", cfg_.out));
    f << text;
  }

  void emit(json doc) {
    json full = {{"tool", header()}};
    for (auto& [key, value] : doc.items()) full[key] = value;
    emit(full.dump(2) + "\n");
  }

  int vsec() {
    const ConvexBody b = body();
    const Vec w = omega(b);
    const SectionCurve c = section_curve(b, w, nodes(64), section_);
    std::string text = csv_header();
    for (int j = 1; j <= b.dim(); ++j) text += fmt::format("omega_{},", j);
    text += "t,V,est_error\n";
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
      for (int j = 0; j < b.dim(); ++j) text += io::num(w[j]) + ",";
      text += fmt::format("{},{},{}\n", io::num(c.nodes[i]), io::num(c.values[i]), io::num(c.est_error[i]));
    }
    emit(text);
    return ok;
  }

  int fit() {
    const ConvexBody b = body();
    const FitParams p = fit_params(64);
    if (cfg_.grid > 0 || cfg_.k >= 0) {
      if (cfg_.k < 0) throw InputError("--k is required with --grid for coefficient fields");
      const CoefficientField f = coefficient_field(b, cfg_.k, sphere_grid(b.dim(), grid(512)), p, section_);
      std::string text = csv_header();
      text += "k,";
      for (int j = 1; j <= b.dim(); ++j) text += fmt::format("omega_{},", j);
      text += "a_k,flag\n";
      for (std::size_t i = 0; i < f.omegas.size(); ++i) {
        text += fmt::format("{},", f.k);
        for (int j = 0; j < b.dim(); ++j) text += io::num(f.omegas[i][j]) + ",";
        text += fmt::format("{},{}\n", io::num(f.values[i]), to_string(f.flags[i]));
      }
      emit(text);
      return ok;
    }
    const Vec w = omega(b);
    const SectionCurve c = section_curve(b, w, p.nodes, section_);
    const PolyFit f = fit_polynomial(c, p.resolved_max_degree(b.dim()), p.tol);
    json doc = fit_json(w, f);
    doc["threshold"] = f.threshold;
    doc["source"] = std::string(to_string(c.source));
    doc["est_error"] = c.max_error();
    if (f.verdict == Verdict::polynomial) {
      const VanishingReport v = endpoint_vanishing(f, c, (b.dim() - 1) / 2);
      doc["endpoint_vanishing"] = {{"order", v.order}, {"worst", v.worst}, {"passed", v.passed}};
    }
    emit(doc);
    return ok;
  }

  int exponent() {
    const ConvexBody b = body();
    const Vec w = omega(b);
    const SectionCurve c = section_curve(b, w, std::max(nodes(256), 256), section_);
    emit(json{{"omega", vec_json(w)},
              {"plus", endpoint_exponent(c, End::plus)},
              {"minus", endpoint_exponent(c, End::minus)},
              {"expected", 0.5 * (b.dim() - 1)}});
    return ok;
  }

  int recover() {
    const ConvexBody b = body();
    RecoveryOptions opts;
    opts.fit = fit_params(32);
    opts.section = section_;
    try {
      const Recovery r = recover_ellipsoid(b, sphere_grid(b.dim(), grid(512)), opts);
      emit(json{{"status", "recovered"},
                {"center", vec_json(r.params.center)},
                {"semi_axes", vec_json(r.params.semi_axes)},
                {"rotation", mat_json(r.params.rotation)},
                {"residual", r.residual},
                {"m0_spread", r.m0_spread},
                {"volume", r.volume}});
      return ok;
    } catch (const RejectionError& e) {
      emit(json{{"status", "rejected"}, {"reason", e.what()}});
      err_ << "rejected: " << e.what() << "\n";
      return rejected;
    }
  }

  int phase() {
    const ConvexBody b = body();
    const Vec w = omega(b);
    const FitParams p = fit_params(64);
    const SectionCurve c = section_curve(b, w, p.nodes, section_);
    const PolyFit f = fit_polynomial(c, p.resolved_max_degree(b.dim()), p.tol);
    if (f.verdict != Verdict::polynomial) {
      emit(json{{"status", "rejected"},
                {"reason", fmt::format("section curve is {}; no finite expansion", to_string(f.verdict))},
                {"fit", fit_json(w, f)}});
      err_ << "rejected: section curve is not polynomial\n";
      return rejected;
    }
    const PhaseExpansion e = phase_expansion(f.coefficients, c.h_minus, c.h_plus);
    bool round_trip = false;
    try {
      const PiecewisePolynomial inv = inverse_expansion(e);
      std::vector<Rational> exact;
      for (double a : f.coefficients) exact.push_back(to_rational(a));
      round_trip = inv.pieces.front().coeffs == exact;
    } catch (const RejectionError&) {
      round_trip = false;
    }
    json qp = json::array();
    json qm = json::array();
    for (const auto& q : e.q_plus) qp.push_back(rational_json(q));
    for (const auto& q : e.q_minus) qm.push_back(rational_json(q));
    json table = json::array();
    const std::vector<double> rs = io::parse_list(cfg_.r.empty() ? "0.5,5,50,500" : cfg_.r);
    for (double r : rs) {
      const std::complex<double> ex = eval_expansion(e, r);
      const std::complex<double> sl = fourier_chi(b, w, r, FourierMethod::slice, section_);
      json row = {{"r", r}, {"expansion_re", ex.real()}, {"expansion_im", ex.imag()},
                  {"slice_re", sl.real()}, {"slice_im", sl.imag()}, {"abs_diff", std::abs(ex - sl)}};
      if (b.dim() <= 3) {
        const std::complex<double> bd = fourier_chi(b, w, r, FourierMethod::boundary, section_);
        row["boundary_re"] = bd.real();
        row["boundary_im"] = bd.imag();
      }
      table.push_back(row);
    }
    emit(json{{"status", "ok"},
              {"fit", fit_json(w, f)},
              {"expansion", {{"h_plus", c.h_plus}, {"h_minus", c.h_minus}, {"q_plus", qp}, {"q_minus", qm}}},
              {"round_trip", round_trip},
              {"validation", table}});
    return ok;
  }

  int invert() {
    const ConvexBody b = body();
    if (b.dim() != 3) throw InputError("invert needs a body in R^3");
    const SectionFamily fam = sample_family(b, sphere_grid(3, grid(2048)), nodes(16), section_);
    if (!cfg_.x.empty()) {
      const Vec x = io::parse_vector(cfg_.x);
      if (x.size() != 3) throw InputError("--x needs three coordinates");
      const BackProjection bp = back_project(fam, x);
      emit(json{{"x", vec_json(x)}, {"value", bp.value}, {"interior_term", bp.interior_term},
                {"boundary_term", bp.boundary_term}, {"inside", contains(b, x)},
                {"accuracy_warning", bp.accuracy_warning}, {"note", bp.note}});
      return ok;
    }
    if (cfg_.points < 2) throw InputError("--points must be at least 2");
    const int P = cfg_.points;
    const double half = 1.25 * b.bounding_radius();
    std::vector<Vec> xs;
    for (int i = 0; i < P; ++i)
      for (int j = 0; j < P; ++j)
        for (int k = 0; k < P; ++k) {
          Vec x(3);
          x << -half + 2.0 * half * i / (P - 1), -half + 2.0 * half * j / (P - 1), -half + 2.0 * half * k / (P - 1);
          xs.push_back(b.center() + x);
        }
    std::vector<BackProjection> res(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { res[i] = back_project(fam, xs[i]); });
    std::string text = csv_header();
    text += "x,y,z,value,interior_term,boundary_term,inside\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
      text += fmt::format("{},{},{},{},{},{},{}\n", io::num(xs[i][0]), io::num(xs[i][1]), io::num(xs[i][2]),
                          io::num(res[i].value), io::num(res[i].interior_term),
                          io::num(res[i].boundary_term), contains(b, xs[i]) ? 1 : 0);
    emit(text);
    return ok;
  }

  int axial() {
    const ConvexBody b = body();
    AxialOptions opts;
    if (!cfg_.alpha.empty()) {
      const io::AlphaRange a = io::parse_alpha(cfg_.alpha);
      opts.alpha_min = a.min;
      opts.alpha_max = a.max;
      opts.samples = a.samples;
    }
    opts.fit = fit_params(64);
    const AxialReport r = axial_verdict(b, opts);
    json ell = nullptr;
    if (r.ellipsoid)
      ell = {{"center", vec_json(r.ellipsoid->center)},
             {"semi_axes", vec_json(r.ellipsoid->semi_axes)},
             {"rotation", mat_json(r.ellipsoid->rotation)}};
    emit(json{{"exponent", r.exponent},
              {"N_fit", r.n_fit},
              {"verdict", r.consistent ? "consistent" : "inconsistent"},
              {"limit_constant", r.limit_constant},
              {"limit_oracle", r.limit_oracle},
              {"axis_identity_error", r.axis_identity_error},
              {"axis_fit", fit_json(b.rotation().col(2), r.axis_fit)},
              {"transverse_fit", fit_json(b.rotation().col(0), r.transverse_fit)},
              {"ellipsoid", ell}});
    return r.consistent ? ok : rejected;
  }

  int checks() {
    const ConvexBody b = body();
    const int n = b.dim();
    const SphereGrid g = sphere_grid(n, grid(512));
    const FitParams p = fit_params(32);
    json list = json::array();
    bool all = true;
    auto record = [&](const std::string& name, double value, double tol, const std::string& note = "") {
      const bool skipped = !note.empty() && std::isnan(value);
      const bool passed = skipped || value <= tol;
      all = all && passed;
      json row = {{"name", name}, {"value", skipped ? json(nullptr) : json(value)}, {"tol", tol},
                  {"passed", passed}};
      if (!note.empty()) row["note"] = note;
      list.push_back(row);
    };
    const double nan = std::numeric_limits<double>::quiet_NaN();

    double anti = 0.0;
    for (const Vec& w : g.points) {
      const Vec minus = -w;
      anti = std::max(anti, std::abs(support(b, minus).upper + support(b, w).lower));
    }
    record("antipodal_support", anti, 1e-10);

    std::mt19937_64 rng(cfg_.seed);
    double even = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Vec w = random_direction(n, rng);
      const SectionCurve c = section_curve(b, w, std::max(p.nodes, 65), section_);
      const double m0 = moments_from_curve(c).m0;
      lo = std::min(lo, m0);
      hi = std::max(hi, m0);
      if (i < 10) {
        const Vec minus = -w;
        for (std::size_t j = 1; j + 1 < c.nodes.size(); j += 4)
          even = std::max(even, std::abs(section_volume(b, minus, -c.nodes[j], section_) - c.values[j]) /
                                    c.max_value());
      }
    }
    record("evenness", even, 1e-6);
    record("cavalieri", (hi - lo) / b.volume(), 1e-5);

    // One curve decides whether the family is worth fitting.
    const Vec w = omega(b);
    const SectionCurve c = section_curve(b, w, nodes(64), section_);
    const PolyFit f = fit_polynomial(c, p.resolved_max_degree(n), p.tol);
    const std::vector<PolyFit> fits =
        f.verdict == Verdict::polynomial ? fit_family(b, g, p, section_) : std::vector<PolyFit>{f};
    bool polynomial = true;
    int top = 0;
    for (const PolyFit& f : fits) {
      polynomial = polynomial && f.verdict == Verdict::polynomial;
      top = std::max(top, f.degree);
    }
    auto field_of = [&](int k) {
      CoefficientField f;
      f.k = k;
      f.dim = n;
      f.omegas = g.points;
      for (const PolyFit& fit : fits)
        f.values.push_back(k <= fit.degree ? fit.coefficients[k] : 0.0);
      f.flags.assign(fits.size(), FieldFlag::fitted);
      return f;
    };
    const std::string not_poly = "skipped: some direction is not polynomial";
    for (int k = 0; k <= top; ++k) {
      if (!polynomial) {
        record(fmt::format("parity_a{}", k), nan, 1e-9, not_poly);
        break;
      }
      const CoefficientField f = field_of(k);
      double scale = 0.0;
      for (double v : f.values) scale = std::max(scale, std::abs(v));
      record(fmt::format("parity_a{}", k), parity_check(f).max_deviation / std::max(scale, 1.0), 1e-9);
    }
    if (!polynomial) {
      record("lemma_orthogonality", nan, 1e-5, not_poly);
    } else {
      for (int k = n; k <= std::max(n, top); ++k) {
        const CoefficientField f = field_of(k);
        SpherePolynomial one = SpherePolynomial::constant(n, 1.0);
        record(fmt::format("lemma_a{}_p1", k), std::abs(moment_orthogonality(f, one)), 1e-5);
        if (k - n + 1 >= 1) {
          std::vector<int> pw(n, 0);
          pw[0] = 1;
          SpherePolynomial x1(n);
          x1.add(1.0, pw);
          record(fmt::format("lemma_a{}_p_omega1", k), std::abs(moment_orthogonality(f, x1)), 1e-5);
        }
      }
    }

    if (f.verdict != Verdict::polynomial) {
      record("expansion_round_trip", nan, 0.0, "skipped: curve is not polynomial");
    } else {
      const PhaseExpansion e = phase_expansion(f.coefficients, c.h_minus, c.h_plus);
      std::vector<Rational> exact;
      for (double a : f.coefficients) exact.push_back(to_rational(a));
      record("expansion_round_trip", inverse_expansion(e).pieces.front().coeffs == exact ? 0.0 : 1.0, 0.0);
    }
    emit(json{{"checks", list}, {"passed", all}});
    return all ? ok : rejected;
  }

  RunConfig cfg_;
  std::ostream& out_;
  std::ostream& err_;
  std::string body_text_;
  std::string digest_;
  SectionOptions section_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  setup_logging();
  RunConfig cfg;
  CLI::App app{"Section volumes, polynomial diagnostics and finite phase expansions of convex bodies",
               "polyint"};
  app.set_version_flag("--version", POLYINT_VERSION);
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--body", cfg.body_path, "body JSON file")->required();
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--seed", cfg.seed, "seed for stochastic quadrature");
    sub->add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
  };
  auto direction = [&](CLI::App* sub) { sub->add_option("--omega", cfg.omega, "direction x,y,z (normalized)"); };
  auto fitting = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "relative fit tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-degree", cfg.max_degree, "largest fitted degree (default 2n+6)");
  };
  auto node_count = [&](CLI::App* sub) { sub->add_option("--nodes", cfg.nodes, "nodes per section curve")->check(CLI::Range(8, 1 << 16)); };
  auto grid_size = [&](CLI::App* sub) { sub->add_option("--grid", cfg.grid, "direction grid size")->check(CLI::Range(2, 1 << 22)); };

  auto* vsec = app.add_subcommand("vsec", "section-volume curve as CSV");
  common(vsec); direction(vsec); node_count(vsec);
  auto* fit = app.add_subcommand("fit", "polynomial fit report, or a coefficient field with --grid --k");
  common(fit); direction(fit); node_count(fit); fitting(fit); grid_size(fit);
  fit->add_option("--k", cfg.k, "coefficient index for the field CSV");
  auto* exponent = app.add_subcommand("exponent", "endpoint exponents of V");
  common(exponent); direction(exponent); node_count(exponent);
  auto* recover = app.add_subcommand("recover", "ellipsoid recovery from low-degree section data");
  common(recover); node_count(recover); fitting(recover); grid_size(recover);
  auto* phase = app.add_subcommand("phase", "finite phase expansion with a validation table");
  common(phase); direction(phase); node_count(phase); fitting(phase);
  phase->add_option("--r", cfg.r, "frequencies r1,r2,...");
  auto* invert = app.add_subcommand("invert", "back-projection over a point lattice (n = 3)");
  common(invert); node_count(invert); grid_size(invert);
  invert->add_option("--x", cfg.x, "single point x,y,z instead of a lattice");
  invert->add_option("--points", cfg.points, "lattice points per axis");
  auto* axial = app.add_subcommand("axial", "growth-law verdict for a revolution body");
  common(axial); node_count(axial); fitting(axial);
  axial->add_option("--alpha", cfg.alpha, "alpha range MIN:MAX:K");
  auto* checks = app.add_subcommand("checks", "parity, moment, Cavalieri and round-trip suites");
  common(checks); direction(checks); node_count(checks); fitting(checks); grid_size(checks);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << POLYINT_VERSION << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    Session s(cfg, out, err);
    return s.dispatch();
  } catch (const RejectionError& e) {
    err << "rejected: " << e.what() << "\n";
    return rejected;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const DegenerateError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
}

}  // namespace polyint::cli

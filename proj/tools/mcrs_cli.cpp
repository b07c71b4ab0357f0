// Command-line surface for the rational-approximation library: continued
// fractions, best approximations of planar and spatial targets, sail
// geometry, and the bundled reference-value regression suite.
#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mcrs/approx2d.hpp"
#include "mcrs/approx3d.hpp"
#include "mcrs/cf.hpp"
#include "mcrs/error.hpp"
#include "mcrs/form.hpp"
#include "mcrs/group.hpp"
#include "mcrs/json_io.hpp"
#include "mcrs/parse.hpp"
#include "mcrs/sails.hpp"
#include "mcrs/verify_paper.hpp"

using namespace mcrs;

namespace {

struct RunConfig {
  long precision_bits = 128;
  int threads = 1;
  std::string format = "text";  // json | csv | text
};

long env_long(const char* name, long fallback) {
  const char* v = std::getenv(name);
  return v ? std::atol(v) : fallback;
}

void apply_config(const RunConfig& cfg) {
  if (cfg.precision_bits < 64) fail(errc::domain, "precision-bits must be at least 64");
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
    fail(errc::domain, "format must be json, csv or text");
  // The search modules read the thread count from the environment.
  setenv("MCRS_THREADS", std::to_string(cfg.threads < 1 ? 1 : cfg.threads).c_str(), 1);
}

void emit(const RunConfig& cfg, const std::string& command, const Json& payload,
          const std::string& plain) {
  if (cfg.format == "json")
    std::cout << json_print(json_envelope(command, payload));
  else
    std::cout << plain;
}

std::string real_plain(const Real& x) {
  std::ostringstream os;
  os << x.to_string();
  if (!x.is_rational()) os << " ~ " << x.to_double();
  return os.str();
}

// ---- target construction ---------------------------------------------------

struct TargetFlags {
  std::string matrix, op, alpha1, alpha2, lines, target;
};

MCRSGroup build_2d_target(const TargetFlags& f) {
  int given = !f.matrix.empty() + !f.op.empty() + (!f.alpha1.empty() || !f.alpha2.empty()) +
              !f.lines.empty();
  if (given != 1)
    fail(errc::domain, "give exactly one of --matrix, --operator, --alpha1/--alpha2, --lines");
  if (!f.matrix.empty() || !f.op.empty()) {
    IMat m = f.matrix.empty() ? named_operator(f.op) : parse_matrix(f.matrix);
    if (m.n != 2) fail(errc::domain, "planar approximation needs a 2x2 operator");
    return group_from_matrix(m);
  }
  if (!f.lines.empty()) {
    auto pairs = parse_int_pairs(f.lines);
    if (pairs.size() != 2) fail(errc::domain, "--lines needs exactly two pairs");
    std::vector<std::vector<Complex>> dirs;
    for (const auto& p : pairs) dirs.push_back({Complex(Real(p[0])), Complex(Real(p[1]))});
    return group_from_lines(dirs);
  }
  if (f.alpha1.empty() || f.alpha2.empty()) fail(errc::domain, "need both --alpha1 and --alpha2");
  return group_from_slopes(parse_real(f.alpha1), parse_real(f.alpha2));
}

SimulTarget build_3d_target(const TargetFlags& f) {
  int given = !f.matrix.empty() + !f.op.empty() + !f.target.empty();
  if (given != 1) fail(errc::domain, "give exactly one of --matrix, --operator, --target");
  if (!f.target.empty()) {
    auto v = parse_real_list(f.target);
    if (v.size() != 3) fail(errc::domain, "--target needs three comma-separated values");
    return SimulTarget{v[0], v[1], v[2]};
  }
  IMat m = f.matrix.empty() ? named_operator(f.op) : parse_matrix(f.matrix);
  if (m.n != 3) fail(errc::domain, "spatial approximation needs a 3x3 operator");
  return simul_eigen_target(m);
}

Int parse_N(const std::string& s) {
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(errc::parse, "parse error: size bound must be a positive integer");
  Int N(s, 10);
  if (N <= 0) fail(errc::parse, "parse error: size bound must be a positive integer");
  return N;
}

// ---- subcommand bodies -----------------------------------------------------

int cmd_cf_expand(const RunConfig& cfg, const std::string& value, long max_terms) {
  Real x = parse_real(value);
  auto cf = cf_expand(x, max_terms);
  // Periodic expansions unroll so the printed prefix always has max_terms
  // digits (or the full finite expansion when it is shorter).
  std::vector<Int> terms = cf.terms;
  if (cf.kind == ContinuedFraction::Kind::periodic)
    while ((long)terms.size() < max_terms)
      terms.push_back(cf.terms[cf.preperiod + (terms.size() - cf.preperiod) % cf.period_length()]);
  if ((long)terms.size() > max_terms) terms.resize(max_terms);
  std::ostringstream os;
  for (size_t i = 0; i < terms.size(); ++i) os << (i ? " " : "") << terms[i].get_str();
  os << "\n";
  Json j = json_of(cf);
  Json conv = Json::array();
  for (const auto& c : convergents(cf)) conv.push_back(json_of(c));
  j["convergents"] = conv;
  emit(cfg, "cf expand", j, os.str());
  return 0;
}

int cmd_cf_best_in_box(const RunConfig& cfg, const std::string& value, const std::string& Ns) {
  Real x = parse_real(value);
  auto b = best_dioph_in_box(x, parse_N(Ns));
  std::ostringstream os;
  os << rat_to_string(b.best.value()) << "\n";
  emit(cfg, "cf best-in-box", json_of(b), os.str());
  return 0;
}

std::string lines_plain(const MCRSGroup& g) {
  std::string s;
  for (const auto& l : g.lines) s += (s.empty() ? "" : "; ") + l.to_string();
  return s;
}

int cmd_approx_2d(const RunConfig& cfg, const TargetFlags& f, const std::string& Ns,
                  const std::string& sweep) {
  auto target = build_2d_target(f);
  if (!sweep.empty()) {
    std::vector<Int> sizes;
    std::stringstream ss(sweep);
    std::string tok;
    while (std::getline(ss, tok, ',')) sizes.push_back(parse_N(tok));
    std::ostringstream os;
    Json rows = Json::array();
    os << "N,rho,rho_scaled,level1,level2\n";
    for (const auto& N : sizes) {
      auto r = best_approx(ApproxQuery{target, N});
      Real scaled = r.rho.value * Real(N) * Real(N);
      std::string lv1 = "", lv2 = "";
      try {
        auto levels = sail_level_of_result(target, r);
        if (!levels.empty()) {
          lv1 = std::to_string(levels[0][0]);
          lv2 = std::to_string(levels[0][1]);
        }
      } catch (const Error&) {
        // sail levels are undefined for this spectrum; leave the columns blank
      }
      os << N.get_str() << "," << r.rho.value.to_double() << "," << scaled.to_double() << ","
         << lv1 << "," << lv2 << "\n";
      rows.push_back(Json{{"N", json_of(N)},
                          {"rho", json_of(r.rho.value)},
                          {"rho_scaled", json_of(scaled)},
                          {"level1", lv1},
                          {"level2", lv2}});
    }
    emit(cfg, "approx 2d --sweep", Json{{"rows", rows}}, os.str());
    return 0;
  }
  auto r = best_approx(ApproxQuery{target, parse_N(Ns)});
  std::ostringstream os;
  os << "N = " << r.N.get_str() << "\n"
     << "rho = " << real_plain(r.rho.value) << " ("
     << (r.rho.branch == Branch::sum ? "sum" : "difference") << " branch)\n"
     << "minimizers: " << r.minimizers.size() << "\n";
  for (const auto& g : r.minimizers) os << "  " << lines_plain(g) << "\n";
  if (r.certificate) os << "certified pruning bound: " << real_plain(r.certificate->rho_upper) << "\n";
  emit(cfg, "approx 2d", json_of(r), os.str());
  return 0;
}

int cmd_approx_3d(const RunConfig& cfg, const TargetFlags& f, const std::string& Ns,
                  bool sequence) {
  auto target = build_3d_target(f);
  Int N = parse_N(Ns);
  if (sequence) {
    auto seq = best_simul_sequence(target, N);
    std::ostringstream os;
    Json rows = Json::array();
    if (cfg.format == "csv") os << "i,a,b,c,size,rho,branch,member\n";
    long i = 0;
    for (const auto& e : seq) {
      ++i;
      if (cfg.format == "csv")
        os << i << "," << e.v.a.get_str() << "," << e.v.b.get_str() << "," << e.v.c.get_str()
           << "," << e.size.get_str() << "," << e.rho.to_double() << ","
           << (e.branch == Branch::sum ? "sum" : "difference") << ","
           << (e.member ? "yes" : "no") << "\n";
      else
        os << e.v.to_string() << "  size=" << e.size.get_str() << "  rho=" << e.rho.to_double()
           << (e.member ? "" : "  (superseded at its size)") << "\n";
      rows.push_back(json_of(e));
    }
    emit(cfg, "approx 3d --sequence", Json{{"N", json_of(N)}, {"sequence", rows}}, os.str());
    return 0;
  }
  auto r = best_simul(target, N);
  std::ostringstream os;
  os << "N = " << r.N.get_str() << "\n"
     << "rho = " << real_plain(r.rho.value) << " ("
     << (r.rho.branch == Branch::sum ? "sum" : "difference") << " branch)\n"
     << "minimizers:";
  for (const auto& v : r.minimizers) os << " " << v.to_string();
  os << "\n";
  emit(cfg, "approx 3d", json_of(r), os.str());
  return 0;
}

void sail_plain(std::ostringstream& os, const SailPolyline& p, const RunConfig& cfg) {
  if (cfg.format == "csv") {
    for (const auto& v : p.vertices)
      os << p.level << "," << v[0].get_str() << "," << v[1].get_str() << "\n";
    return;
  }
  os << "level " << p.level << ":";
  for (const auto& v : p.vertices) os << " (" << v[0].get_str() << "," << v[1].get_str() << ")";
  if (p.ray_start) os << " [starts on an integer ray]";
  if (p.ray_end) os << " [ends on an integer ray]";
  if (p.truncated_start || p.truncated_end) os << " [truncated by the box]";
  if (p.periodic_shift) os << " shift " << p.periodic_shift->to_string();
  os << "\n";
}

int cmd_sail(const RunConfig& cfg, const std::string& cone, const std::string& matrix,
             const std::string& op, int k, const std::string& box) {
  Int B = parse_N(box);
  std::ostringstream os;
  if (cfg.format == "csv") os << "level,x,y\n";
  if (!cone.empty()) {
    auto pairs = parse_int_pairs(cone);
    if (pairs.size() != 2) fail(errc::domain, "--cone needs exactly two rays");
    auto c = make_cone({Real(pairs[0][0]), Real(pairs[0][1])},
                       {Real(pairs[1][0]), Real(pairs[1][1])});
    auto p = k_sail(c, k, B);
    sail_plain(os, p, cfg);
    emit(cfg, "sail", json_of(p), os.str());
    return 0;
  }
  if (matrix.empty() && op.empty()) fail(errc::domain, "give one of --cone, --matrix, --operator");
  IMat m = matrix.empty() ? named_operator(op) : parse_matrix(matrix);
  if (m.n != 2) fail(errc::domain, "sail geometry needs a 2x2 operator");
  auto sails = geometric_cf(group_from_matrix(m), k, B);
  Json arr = Json::array();
  for (const auto& p : sails) {
    sail_plain(os, p, cfg);
    arr.push_back(json_of(p));
  }
  emit(cfg, "sail", Json{{"cones", arr}}, os.str());
  return 0;
}

int cmd_verify_paper(const RunConfig& cfg, const std::vector<std::string>& only,
                     const std::string& Ns, bool list_only) {
  if (list_only) {
    std::ostringstream os;
    Json ids = Json::array();
    for (const auto& id : paper_check_ids()) {
      os << id << "\n";
      ids.push_back(id);
    }
    emit(cfg, "verify-paper --list", Json{{"checks", ids}}, os.str());
    return 0;
  }
  Int N = Ns.empty() ? Int(0) : parse_N(Ns);
  std::vector<PaperCheckResult> results;
  if (only.empty())
    results = run_all_paper_checks(N);
  else
    for (const auto& id : only) results.push_back(run_paper_check(id, N));
  std::ostringstream os;
  Json arr = Json::array();
  bool all_ok = true;
  for (const auto& r : results) {
    all_ok = all_ok && r.ok();
    os << "[" << r.verdict << "] " << r.id << "\n"
       << "  published: " << r.published << "\n"
       << "  computed:  " << r.computed << "\n";
    arr.push_back(Json{{"id", r.id},
                       {"published", r.published},
                       {"computed", r.computed},
                       {"verdict", r.verdict}});
  }
  os << (all_ok ? "all checks passed" : "CHECKS FAILED") << " (" << results.size() << " run)\n";
  emit(cfg, "verify-paper", Json{{"checks", arr}, {"ok", all_ok}}, os.str());
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  cfg.precision_bits = env_long("MCRS_PRECISION_BITS", 128);
  cfg.threads = (int)env_long("MCRS_THREADS", 1);

  CLI::App app{"Best rational approximations of commutative matrix groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "output format: json, csv or text");
  app.add_option("--precision-bits", cfg.precision_bits, "working precision floor (>= 64)");
  app.add_option("--threads", cfg.threads, "worker threads for the certified searches");

  // cf
  auto* cf_cmd = app.add_subcommand("cf", "continued fraction expansions");
  cf_cmd->require_subcommand(1);
  std::string cf_value, cf_N = "100";
  long cf_max_terms = 64;
  auto* cf_exp = cf_cmd->add_subcommand("expand", "expand a value");
  cf_exp->add_option("value", cf_value)->required();
  cf_exp->add_option("--max-terms", cf_max_terms);
  std::string cfb_value;
  auto* cf_box = cf_cmd->add_subcommand("best-in-box", "best fraction with |m|,|n| <= N");
  cf_box->add_option("value", cfb_value)->required();
  cf_box->add_option("--N", cf_N)->required();

  // approx
  auto* ap_cmd = app.add_subcommand("approx", "best rational approximations");
  ap_cmd->require_subcommand(1);
  TargetFlags f2, f3;
  std::string ap2_N = "1", ap2_sweep, ap3_N = "1";
  bool ap3_sequence = false;
  auto* ap2 = ap_cmd->add_subcommand("2d", "planar target");
  ap2->add_option("--matrix", f2.matrix);
  ap2->add_option("--operator", f2.op);
  ap2->add_option("--alpha1", f2.alpha1);
  ap2->add_option("--alpha2", f2.alpha2);
  ap2->add_option("--lines", f2.lines);
  ap2->add_option("--N", ap2_N);
  ap2->add_option("--sweep", ap2_sweep, "comma-separated sizes; emits plot columns");
  auto* ap3 = ap_cmd->add_subcommand("3d", "spatial direction target");
  ap3->add_option("--matrix", f3.matrix);
  ap3->add_option("--operator", f3.op);
  ap3->add_option("--target", f3.target, "three comma-separated exact values");
  ap3->add_option("--N", ap3_N);
  ap3->add_flag("--sequence", ap3_sequence, "every best approximation up to the bound");

  // sail
  auto* sail_cmd = app.add_subcommand("sail", "integer hull layers of a cone");
  std::string sl_cone, sl_matrix, sl_op, sl_box = "100";
  int sl_k = 1;
  sail_cmd->add_option("--cone", sl_cone, "two rays, e.g. \"(1,2) (2,3)\"");
  sail_cmd->add_option("--matrix", sl_matrix);
  sail_cmd->add_option("--operator", sl_op);
  sail_cmd->add_option("--k", sl_k, "hull layer");
  sail_cmd->add_option("--box", sl_box, "bounding box half-width");

  // verify-paper
  auto* vp_cmd = app.add_subcommand("verify-paper", "check the bundled reference values");
  std::vector<std::string> vp_only;
  std::string vp_N;
  bool vp_list = false;
  vp_cmd->add_option("--only", vp_only, "run only the named checks");
  vp_cmd->add_option("--N", vp_N, "override the size bound of search checks");
  vp_cmd->add_flag("--list", vp_list, "list check ids");

  // Allow the global flags (--format etc.) anywhere on the command line.
  for (auto* top : {cf_cmd, ap_cmd, sail_cmd, vp_cmd}) {
    top->fallthrough();
    for (auto* sub : top->get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }

  try {
    apply_config(cfg);
    if (cf_exp->parsed()) return cmd_cf_expand(cfg, cf_value, cf_max_terms);
    if (cf_box->parsed()) return cmd_cf_best_in_box(cfg, cfb_value, cf_N);
    if (ap2->parsed()) return cmd_approx_2d(cfg, f2, ap2_N, ap2_sweep);
    if (ap3->parsed()) return cmd_approx_3d(cfg, f3, ap3_N, ap3_sequence);
    if (sail_cmd->parsed()) return cmd_sail(cfg, sl_cone, sl_matrix, sl_op, sl_k, sl_box);
    if (vp_cmd->parsed()) return cmd_verify_paper(cfg, vp_only, vp_N, vp_list);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const Error& e) {
    std::string what = e.what();
    const char* prefix = e.code() == errc::parse ? "parse error: " : "error: ";
    if (what.rfind(e.code() == errc::parse ? "parse error" : "error", 0) == 0) prefix = "";
    std::cerr << prefix << what << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

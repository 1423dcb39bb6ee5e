#include "commands.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <vector>

#include "fine/construct.hpp"
#include "fine/inequalities.hpp"
#include "fine/lp_oracle.hpp"
#include "fine/maxent.hpp"
#include "fine/peres.hpp"
#include "fine/quantum.hpp"
#include "io.hpp"

namespace fine::cli {

namespace {

class Timer {
public:
  explicit Timer(const char* what) : what_(what), start_(clock::now()) {}
  ~Timer() {
    const auto ms = std::chrono::duration<double, std::milli>(
        clock::now() - start_).count();
    std::cerr << "fine: " << what_ << " finished in " << ms << " ms\n";
  }

private:
  using clock = std::chrono::steady_clock;
  const char* what_;
  clock::time_point start_;
};

void emit_report(const std::string& body, const std::optional<std::string>& out) {
  std::cout << body;
  if (out) write_file(*out, body);
}

void append_input(JsonWriter& w, const PairMarginals& pm,
                  std::optional<double> declared_tol) {
  w.key("input");
  w.begin_object();
  w.key("pairs");
  w.begin_object();
  const struct {
    const char* name;
    const PairTable* t;
  } tables[] = {{"13", &pm.m13}, {"14", &pm.m14}, {"23", &pm.m23}, {"24", &pm.m24}};
  for (const auto& tb : tables) {
    w.key(tb.name);
    w.begin_array();
    for (int r = 0; r < 2; ++r) {
      w.begin_array();
      w.value(tb.t->v[r][0]);
      w.value(tb.t->v[r][1]);
      w.end_array();
    }
    w.end_array();
  }
  w.end_object();
  if (declared_tol) {
    w.key("tolerance");
    w.value(*declared_tol);
  }
  w.end_object();
}

void append_moments(JsonWriter& w, const FixedMoments& f) {
  w.key("moments");
  w.begin_object();
  w.key("b");
  w.begin_array();
  for (double b : f.single) w.value(b);
  w.end_array();
  w.key("c13");
  w.value(f.c13);
  w.key("c14");
  w.value(f.c14);
  w.key("c23");
  w.value(f.c23);
  w.key("c24");
  w.value(f.c24);
  w.end_object();
}

bool chsh_pass_at(const ChshReport& r, double eps) {
  for (double v : r.combo) {
    if (std::abs(v) > 2.0 + eps) return false;
  }
  return true;
}

void append_chsh(JsonWriter& w, const ChshReport& r, bool pass) {
  w.key("chsh");
  w.begin_object();
  w.key("combos");
  w.begin_array();
  for (double v : r.combo) w.value(v);
  w.end_array();
  w.key("g");
  w.begin_array();
  for (double v : r.g) w.value(v);
  w.end_array();
  w.key("single_value");
  w.value(r.single_value);
  double margin = 4.0;
  for (double v : r.combo) margin = std::min(margin, 2.0 - std::abs(v));
  w.key("margin");
  w.value(margin);
  w.key("pass");
  w.value(pass);
  w.end_object();
}

void append_witness(JsonWriter& w, const JointDist4& d) {
  w.key("witness");
  w.begin_array();
  for (double x : d.p) w.value(x);
  w.end_array();
}

void append_verdicts(JsonWriter& w, const std::string& construct_v,
                     const std::string& lp_v, const std::string& peres_v,
                     const std::string& maxent_v) {
  w.key("verdicts");
  w.begin_object();
  w.key("construct");
  w.value(construct_v);
  w.key("lp");
  w.value(lp_v);
  w.key("peres");
  w.value(peres_v);
  w.key("maxent");
  w.value(maxent_v);
  w.end_object();
}

std::vector<double> parse_number_list(const std::string& text, std::size_t n,
                                      const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(std::string("cannot parse ") + what + ": bad number '" +
                  item + "'");
    }
  }
  if (out.size() != n) {
    throw Error(std::string(what) + " needs " + std::to_string(n) +
                " comma-separated numbers, got " + std::to_string(out.size()));
  }
  return out;
}

VectorQuad quad_from_vectors_arg(const std::string& arg) {
  const auto v = parse_number_list(arg, 12, "--vectors");
  const auto unit = [](double x, double y, double z) {
    const Vec3 raw{x, y, z};
    const double n = raw.norm();
    if (n < 1e-12) throw Error("--vectors contains a zero vector");
    return raw * (1.0 / n);
  };
  return VectorQuad{unit(v[0], v[1], v[2]), unit(v[3], v[4], v[5]),
                    unit(v[6], v[7], v[8]), unit(v[9], v[10], v[11])};
}

struct ParsedMarginals {
  MarginalsFile file;
  FixedMoments moments;
  ChshReport chsh;
};

ParsedMarginals load_marginals(const GlobalOptions& g, const std::string& path) {
  ParsedMarginals p;
  p.file = parse_marginals(read_file(path), g.force_table_eps(), kEpsUser);
  p.moments = fixed_moments_from_marginals(p.file.pm);
  p.chsh = chsh_report(p.moments.c13, p.moments.c14, p.moments.c23,
                       p.moments.c24);
  return p;
}

}  // namespace

double GlobalOptions::table_eps() const {
  return tolerance.value_or(kEpsUser) * factor();
}

double GlobalOptions::pass_eps() const { return kEpsPass * factor(); }

double GlobalOptions::neg_eps() const { return kEpsNeg * factor(); }

std::optional<double> GlobalOptions::force_table_eps() const {
  if (tolerance) return *tolerance * factor();
  if (strict) return kEpsUser * factor();
  return std::nullopt;
}

int run_check(const GlobalOptions& g, const CheckArgs& a) {
  Timer timer("check");
  const ParsedMarginals p = load_marginals(g, a.file);
  const bool pass = chsh_pass_at(p.chsh, g.pass_eps());

  JsonWriter w;
  w.begin_object();
  w.key("command");
  w.value("check");
  append_input(w, p.file.pm, p.file.tolerance);
  append_moments(w, p.moments);
  append_chsh(w, p.chsh, pass);
  w.end_object();
  std::string body = w.take();
  body += '\n';
  emit_report(body, a.out);
  return pass ? kExitOk : kExitInfeasible;
}

int run_construct(const GlobalOptions& g, const ConstructArgs& a) {
  Timer timer("construct");
  if (a.method != "algebraic" && a.method != "peres" && a.method != "maxent" &&
      a.method != "lp") {
    throw Error("unknown method '" + a.method +
                "' (expected algebraic, peres, maxent or lp)");
  }
  const ParsedMarginals p = load_marginals(g, a.file);
  const bool pass = chsh_pass_at(p.chsh, g.pass_eps());

  std::string verdict = "not-run";
  std::optional<JointDist4> witness;
  int exit_code = kExitOk;
  double infeasibility = 0.0;

  std::string detail_key;
  std::string detail_json;

  const bool zero_b = [&] {
    for (double b : p.moments.single) {
      if (std::abs(b) > g.table_eps()) return false;
    }
    return true;
  }();

  if (a.method == "algebraic" || a.method == "peres" || a.method == "maxent") {
    if (!zero_b) {
      verdict = "unsupported";
      exit_code = kExitMethodFailure;
      std::cerr << "fine: method '" << a.method
                << "' requires zero average spins; use --method lp\n";
    }
  }

  if (verdict == "not-run") {
    if (a.method == "algebraic") {
      try {
        witness = construct_joint_chsh(p.moments.c13, p.moments.c14,
                                       p.moments.c23, p.moments.c24);
        verdict = "feasible";
      } catch (const InfeasibleError& e) {
        verdict = "infeasible";
        infeasibility = e.violation();
        exit_code = kExitInfeasible;
      }
    } else if (a.method == "lp") {
      const LpResult r = lp_feasible(p.file.pm);
      infeasibility = r.infeasibility;
      if (r.feasible) {
        witness = r.witness;
        verdict = "feasible";
      } else {
        verdict = "infeasible";
        exit_code = kExitInfeasible;
      }
    } else if (a.method == "peres") {
      try {
        const AngleSet angles = angles_from_corrs(p.moments.c13, p.moments.c14,
                                                  p.moments.c23, p.moments.c24);
        const VectorQuad q = fit_vectors(angles);
        const McJoint mc = joint_from_vectors_mc(q, a.samples, a.seed);
        witness = mc.dist();
        verdict = "feasible";
        double max_se = 0.0;
        for (double s : mc.se) max_se = std::max(max_se, s);
        JsonWriter dw;
        dw.begin_object();
        dw.key("samples");
        dw.value(double(a.samples));
        dw.key("seed");
        dw.value(double(a.seed));
        dw.key("max_se");
        dw.value(max_se);
        dw.end_object();
        detail_key = "peres";
        detail_json = dw.take();
      } catch (const InfeasibleError& e) {
        verdict = "infeasible";
        infeasibility = e.violation();
        exit_code = kExitInfeasible;
      }
    } else {  // maxent
      const MaxEntSolution sol =
          solve_maxent(p.moments.c13, p.moments.c14, p.moments.c23,
                       p.moments.c24, a.max_iter, a.tol);
      JsonWriter dw;
      dw.begin_object();
      dw.key("lambda");
      dw.begin_array();
      for (double l : sol.lambda) dw.value(l);
      dw.end_array();
      dw.key("log_norm");
      dw.value(sol.log_norm);
      dw.key("residual");
      dw.value(sol.residual);
      dw.key("converged");
      dw.value(sol.converged);
      dw.key("iterations");
      dw.value(double(sol.iterations));
      dw.end_object();
      detail_key = "maxent";
      detail_json = dw.take();
      if (sol.converged) {
        witness = maxent_joint(sol.lambda);
        verdict = "feasible";
      } else {
        verdict = "failed";
        exit_code = kExitMethodFailure;
        std::cerr << "fine: maxent did not converge (residual "
                  << format_double(sol.residual) << ")\n";
      }
    }
  }

  JsonWriter w;
  w.begin_object();
  w.key("command");
  w.value("construct");
  w.key("method");
  w.value(a.method);
  append_input(w, p.file.pm, p.file.tolerance);
  append_moments(w, p.moments);
  append_chsh(w, p.chsh, pass);
  append_verdicts(w, a.method == "algebraic" ? verdict : "not-run",
                  a.method == "lp" ? verdict : "not-run",
                  a.method == "peres" ? verdict : "not-run",
                  a.method == "maxent" ? verdict : "not-run");
  w.key("infeasibility");
  w.value(infeasibility);
  if (!detail_key.empty()) {
    w.key(detail_key);
    w.value_raw(detail_json);
  }
  if (witness) {
    append_witness(w, *witness);
  }
  w.end_object();
  std::string body = w.take();
  body += '\n';
  emit_report(body, std::nullopt);

  if (witness && a.out) {
    write_file(*a.out, witness_to_json(*witness));
  }
  return exit_code;
}

int run_bell(const GlobalOptions& g, const BellArgs& a) {
  Timer timer("bell");
  if (a.method != "algebraic" && a.method != "lp") {
    throw Error("unknown method '" + a.method + "' (expected algebraic or lp)");
  }
  const BellMarginalsFile f =
      parse_bell_marginals(read_file(a.file), g.force_table_eps(), kEpsUser);

  // Consistency across the three tables, then the moment extraction.
  const struct {
    const char* what;
    double x, y;
  } checks[] = {
      {"<s1>", f.m12.first_average(), f.m13.first_average()},
      {"<s2>", f.m12.second_average(), f.m23.first_average()},
      {"<s3>", f.m13.second_average(), f.m23.second_average()},
  };
  for (const auto& c : checks) {
    if (std::abs(c.x - c.y) > g.table_eps()) {
      throw ConsistencyError(std::string("inconsistent ") + c.what +
                             " between tables (difference " +
                             format_double(std::abs(c.x - c.y)) + ")");
    }
  }
  const double b1 = 0.5 * (f.m12.first_average() + f.m13.first_average());
  const double b2 = 0.5 * (f.m12.second_average() + f.m23.first_average());
  const double b3 = 0.5 * (f.m13.second_average() + f.m23.second_average());
  const double c12 = f.m12.correlator();
  const double c13 = f.m13.correlator();
  const double c23 = f.m23.correlator();

  const BellReport bell = bell_report(c12, c13, c23);
  const PositivityReport pos[3] = {marginal_positivity_report(b1, b2, c12),
                                   marginal_positivity_report(b1, b3, c13),
                                   marginal_positivity_report(b2, b3, c23)};
  bool pass = bell.pass;
  for (const auto& r : pos) pass = pass && r.pass;

  std::string verdict;
  std::optional<BellJoint> witness;
  double infeasibility = 0.0;
  int exit_code = kExitOk;
  if (a.method == "algebraic") {
    try {
      witness = construct_joint_bell(b1, b2, b3, c12, c13, c23);
      verdict = "feasible";
    } catch (const InfeasibleError& e) {
      verdict = "infeasible";
      infeasibility = e.violation();
      exit_code = kExitInfeasible;
    }
  } else {
    const LpBellResult r = lp_feasible_bell(f.m12, f.m13, f.m23);
    infeasibility = r.infeasibility;
    if (r.feasible) {
      witness = r.witness;
      verdict = "feasible";
    } else {
      verdict = "infeasible";
      exit_code = kExitInfeasible;
    }
  }

  JsonWriter w;
  w.begin_object();
  w.key("command");
  w.value("bell");
  w.key("method");
  w.value(a.method);
  w.key("moments");
  w.begin_object();
  w.key("b");
  w.begin_array();
  w.value(b1);
  w.value(b2);
  w.value(b3);
  w.end_array();
  w.key("c12");
  w.value(c12);
  w.key("c13");
  w.value(c13);
  w.key("c23");
  w.value(c23);
  w.end_object();
  w.key("bell");
  w.begin_object();
  w.key("sums");
  w.begin_array();
  for (double s : bell.sums) w.value(s);
  w.end_array();
  w.key("pass");
  w.value(pass);
  w.end_object();
  w.key("verdict");
  w.value(verdict);
  w.key("infeasibility");
  w.value(infeasibility);
  if (witness) {
    w.key("witness");
    w.begin_array();
    for (double x : witness->p) w.value(x);
    w.end_array();
  }
  w.end_object();
  std::string body = w.take();
  body += '\n';
  emit_report(body, std::nullopt);

  if (witness && a.out) {
    write_file(*a.out, bell_witness_to_json(*witness));
  }
  return exit_code;
}

int run_quantum_gen(const GlobalOptions& g, const QuantumGenArgs& a) {
  Timer timer("quantum-gen");
  TwoQubitState state = [&] {
    if (a.state == "singlet") return singlet();
    if (a.state == "maximally-mixed" || a.state == "mixed") {
      return maximally_mixed();
    }
    // Anything else is a path to an explicit density matrix file.
    return TwoQubitState::validated(parse_density_matrix(read_file(a.state)));
  }();
  state.validate();

  MeasurementSetup setup;
  if (a.angles && a.vectors) {
    throw Error("give either --angles or --vectors, not both");
  }
  if (a.angles) {
    const auto deg = parse_number_list(*a.angles, 4, "--angles");
    setup = {planar_direction_deg(deg[0]), planar_direction_deg(deg[1]),
             planar_direction_deg(deg[2]), planar_direction_deg(deg[3])};
  } else if (a.vectors) {
    const VectorQuad q = quad_from_vectors_arg(*a.vectors);
    setup = {q.a1, q.a2, q.a3, q.a4};
  } else {
    throw Error("quantum-gen needs --angles or --vectors");
  }

  if (a.zero_mean) {
    state = zero_mean_rotation(state, setup);
  }
  const PairMarginals pm = eprb_marginals(state, setup);
  write_file(a.out, marginals_to_json(pm, g.table_eps()));

  const FixedMoments f = fixed_moments_from_marginals(pm);
  JsonWriter w;
  w.begin_object();
  w.key("command");
  w.value("quantum-gen");
  w.key("state");
  w.value(a.state);
  w.key("zero_mean");
  w.value(a.zero_mean);
  append_moments(w, f);
  w.key("out");
  w.value(a.out);
  w.end_object();
  std::string body = w.take();
  body += '\n';
  emit_report(body, std::nullopt);
  return kExitOk;
}

int run_peres_sim(const GlobalOptions&, const PeresSimArgs& a) {
  Timer timer("peres-sim");
  VectorQuad quad;
  bool fitted = false;
  if (a.angles && a.vectors) {
    throw Error("give either --angles or --vectors, not both");
  }
  if (a.angles) {
    const auto t = parse_number_list(*a.angles, 4, "--angles");
    quad = fit_vectors(AngleSet{t[0], t[1], t[2], t[3]});
    fitted = true;
  } else if (a.vectors) {
    quad = quad_from_vectors_arg(*a.vectors);
  } else {
    throw Error("peres-sim needs --angles or --vectors");
  }

  const McJoint mc = joint_from_vectors_mc(quad, a.samples, a.seed);
  const MomentVector est = joint_to_moments(mc.dist());
  const PeresMoments analytic = moments_from_vectors(quad);

  // Worst deviation between the Monte Carlo correlators and the closed
  // form, in units of the estimator's standard error.
  const double dn = static_cast<double>(a.samples);
  double worst_sigma = 0.0;
  const struct {
    Pair p;
    double closed;
  } pairs[] = {{Pair::p12, analytic.c12}, {Pair::p13, analytic.c13},
               {Pair::p14, analytic.c14}, {Pair::p23, analytic.c23},
               {Pair::p24, analytic.c24}, {Pair::p34, analytic.c34}};
  for (const auto& pr : pairs) {
    const double est_c = est.c(pr.p);
    // Floor the error bar at the histogram quantization so degenerate
    // (zero-variance) estimates do not blow the ratio up.
    const double se = std::max(std::sqrt(std::max(0.0, 1.0 - est_c * est_c) / dn),
                               1.0 / dn);
    worst_sigma = std::max(worst_sigma, std::abs(est_c - pr.closed) / se);
  }

  JsonWriter w;
  w.begin_object();
  w.key("command");
  w.value("peres-sim");
  w.key("fitted");
  w.value(fitted);
  w.key("vectors");
  w.begin_array();
  for (const Vec3* v : {&quad.a1, &quad.a2, &quad.a3, &quad.a4}) {
    w.begin_array();
    w.value(v->x);
    w.value(v->y);
    w.value(v->z);
    w.end_array();
  }
  w.end_array();
  const PairAngles ang = angles_of(quad);
  w.key("angles");
  w.begin_object();
  w.key("13");
  w.value(ang.t13);
  w.key("23");
  w.value(ang.t23);
  w.key("24");
  w.value(ang.t24);
  w.key("14");
  w.value(ang.t14);
  w.end_object();
  w.key("samples");
  w.value(double(a.samples));
  w.key("seed");
  w.value(double(a.seed));
  w.key("estimated");
  w.begin_object();
  for (Pair p : kAllPairs) {
    w.key(std::string("c") + pair_name(p));
    w.value(est.c(p));
  }
  w.key("e");
  w.value(est.quad);
  w.end_object();
  w.key("closed_form");
  w.begin_object();
  w.key("c12");
  w.value(analytic.c12);
  w.key("c13");
  w.value(analytic.c13);
  w.key("c14");
  w.value(analytic.c14);
  w.key("c23");
  w.value(analytic.c23);
  w.key("c24");
  w.value(analytic.c24);
  w.key("c34");
  w.value(analytic.c34);
  w.end_object();
  w.key("worst_sigma");
  w.value(worst_sigma);
  w.key("p");
  w.begin_array();
  for (double x : mc.p) w.value(x);
  w.end_array();
  w.key("se");
  w.begin_array();
  for (double x : mc.se) w.value(x);
  w.end_array();
  w.end_object();
  std::string body = w.take();
  body += '\n';
  emit_report(body, a.out);
  return kExitOk;
}

int run_maxent(const GlobalOptions& g, const MaxEntArgs& a) {
  ConstructArgs c;
  c.file = a.file;
  c.method = "maxent";
  c.out = a.out;
  c.max_iter = a.max_iter;
  c.tol = a.tol;
  return run_construct(g, c);
}

int run_oracle(const GlobalOptions& g, const OracleArgs& a) {
  Timer timer("oracle");
  const ParsedMarginals p = load_marginals(g, a.file);
  const bool pass = chsh_pass_at(p.chsh, g.pass_eps());

  const LpResult r = lp_feasible(p.file.pm);

  JsonWriter w;
  w.begin_object();
  w.key("command");
  w.value("oracle");
  append_input(w, p.file.pm, p.file.tolerance);
  append_moments(w, p.moments);
  append_chsh(w, p.chsh, pass);
  append_verdicts(w, "not-run", r.feasible ? "feasible" : "infeasible",
                  "not-run", "not-run");
  w.key("infeasibility");
  w.value(r.infeasibility);
  if (r.witness) {
    append_witness(w, *r.witness);
  }
  w.end_object();
  std::string body = w.take();
  body += '\n';
  emit_report(body, std::nullopt);

  if (r.witness && a.out) {
    write_file(*a.out, witness_to_json(*r.witness));
  }
  return r.feasible ? kExitOk : kExitInfeasible;
}

}  // namespace fine::cli

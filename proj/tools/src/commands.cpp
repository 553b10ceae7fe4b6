#include "causticlab/cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "causticlab/caustic.hpp"
#include "causticlab/cli/json_io.hpp"
#include "causticlab/cli/spec_file.hpp"
#include "causticlab/error.hpp"
#include "causticlab/frobenius.hpp"
#include "causticlab/isocheck.hpp"
#include "causticlab/monodromy.hpp"

namespace causticlab {

namespace {

struct GlobalOptions {
  std::uint64_t seed = 20240917;
  std::optional<unsigned> threads;
  std::string format = "json";
};

unsigned resolve_threads(const GlobalOptions& g) {
  if (g.threads) return std::max(1u, *g.threads);
  if (const char* env = std::getenv("CAUSTICLAB_THREADS")) {
    try {
      const unsigned long v = std::stoul(env);
      return static_cast<unsigned>(std::max(1ul, v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, std::string("CAUSTICLAB_THREADS is not a number: ") + env);
    }
  }
  return 1;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string fmt(Complex c) {
  std::ostringstream s;
  s << std::setprecision(6) << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i";
  return s.str();
}

void print_matrix(std::ostream& out, const std::string& name, const CMatrix& m) {
  out << name << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "  ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << std::setw(28) << fmt(m(r, c));
    out << "\n";
  }
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

CausticFrame frame_on_curve(const FrobeniusManifold& M, const CausticCurve& curve, double s) {
  return caustic_frame(M, curve.point(s), curve.tangents(s, M.spec().unit_index));
}

int cmd_verify(const std::string& path, std::size_t samples, double tol, const GlobalOptions& g, std::ostream& out) {
  const SpecFile spec = load_spec(path);
  const FrobeniusManifold M(spec.manifold);
  VerifyReport r;
  r.samples = samples;
  r.seed = g.seed;
  r.metric = M.metric();
  r.mu = M.mu_diagonal_exact();
  r.axioms = M.verify_axioms(random_points(M.dimension(), samples, g.seed), tol);
  if (g.format == "table") {
    const auto& w = r.axioms.worst;
    out << "axiom               max residual\n";
    out << "commutativity       " << fmt(w.commutativity) << "\n";
    out << "associativity       " << fmt(w.associativity) << "\n";
    out << "frobenius           " << fmt(w.frobenius) << "\n";
    out << "unit                " << fmt(w.unit) << "\n";
    out << "euler_metric        " << fmt(w.euler_metric) << "\n";
    out << "quasi_homogeneity   " << fmt(w.quasi_homogeneity) << "\n";
    out << "passed              " << (r.axioms.passed ? "yes" : "no") << "\n";
  } else {
    json j = r;
    j["command"] = "verify";
    j["passed"] = r.axioms.passed;
    emit(out, j);
  }
  return r.axioms.passed ? kExitOk : kExitCheckFailed;
}

int cmd_classify(const std::string& path, const std::vector<double>& point, const GlobalOptions& g,
                 std::ostream& out) {
  const SpecFile spec = load_spec(path);
  const FrobeniusManifold M(spec.manifold);
  if (point.size() != M.dimension())
    throw Error(ErrorCode::ArityMismatch, "--point needs " + std::to_string(M.dimension()) + " coordinates");
  CVector p(static_cast<Eigen::Index>(point.size()));
  for (std::size_t i = 0; i < point.size(); ++i) p[static_cast<Eigen::Index>(i)] = point[i];
  ClassifyOptions opts;
  opts.seed = g.seed;
  const Classification c = classify_point(M, p, opts);
  if (g.format == "table") {
    out << "class       " << to_string(c.kind) << "\n";
    out << "min_gap     " << fmt(c.min_gap) << "\n";
    for (const auto& u : c.eigenvalues) out << "eigenvalue  " << fmt(u) << "\n";
  } else {
    emit(out, json{{"command", "classify"}, {"point", p}, {"classification", c}});
  }
  return kExitOk;
}

int cmd_frame(const std::string& path, const std::string& curve_name, double s, const GlobalOptions& g,
              std::ostream& out) {
  const SpecFile spec = load_spec(path);
  const FrobeniusManifold M(spec.manifold);
  const CausticCurve& curve = spec.curve(curve_name);
  FrameReport r;
  r.curve = curve_name;
  r.s = s;
  ClassifyOptions copts;
  copts.seed = g.seed;
  r.classification = classify_point(M, curve.point(s), copts);
  r.frame = frame_on_curve(M, curve, s);
  r.v12 = r.frame.V(0, 1);
  r.v12_abs = std::abs(r.v12);
  r.m_near_integer = hertling_m(r.frame.V).near_integer;
  r.approach = m_from_approach(M, r.frame.point, r.frame.normal, default_approach_samples());
  if (g.format == "table") {
    out << "curve          " << curve_name << " at s = " << fmt(s) << "\n";
    out << "class          " << to_string(r.classification.kind) << "\n";
    for (const auto& u : r.frame.eigenvalues) out << "eigenvalue     " << fmt(u) << "\n";
    out << "|V12|          " << fmt(r.v12_abs) << "\n";
    out << "m              " << fmt(r.frame.m) << "\n";
    out << "m (approach)   " << fmt(r.approach.m) << "\n";
    print_matrix(out, "frame", r.frame.frame);
  } else {
    json j = r;
    j["command"] = "frame";
    emit(out, j);
  }
  return kExitOk;
}

void print_monodromy(std::ostream& out, const MonodromyData& d) {
  out << "phi            " << fmt(d.sectors.phi) << "\n";
  out << "eps            " << fmt(d.sectors.eps) << "\n";
  std::string bexp;
  for (Eigen::Index i = 0; i < d.B_exp.rows(); ++i) bexp += fmt(d.B_exp(i, i)) + "  ";
  out << "B_exp          " << bexp << "\n";
  for (const auto& s : d.stokes) print_matrix(out, "S_" + std::to_string(s.nu), s.S);
  print_matrix(out, "C", d.connection_C);
  print_matrix(out, "M (loop at 0)", d.monodromy_zero);
  const auto& g = d.diagnostics;
  out << "liouville      " << fmt(g.liouville) << "\n";
  out << "stokes overlap " << fmt(g.stokes_consistency) << "\n";
  out << "anchor         " << fmt(g.anchor_independence) << "\n";
  out << "C radius       " << fmt(g.connection_radius_residual) << "\n";
  out << "loop vs exp    " << fmt(g.loop_residual) << "\n";
}

int cmd_monodromy(const std::string& path, const std::string& curve_name, double s, const std::string& system,
                  const MonodromyOptions& base, const std::string& json_out, const GlobalOptions& g,
                  std::ostream& out) {
  MonodromyOptions mo = base;
  mo.threads = resolve_threads(g);
  CMatrix U, V;
  if (!system.empty()) {
    std::ifstream in(system);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open system file " + system);
    try {
      const json j = json::parse(in);
      U = j.at("U").get<CMatrix>();
      V = j.at("V").get<CMatrix>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, system + ": " + e.what());
    }
  } else {
    if (path.empty() || curve_name.empty())
      throw Error(ErrorCode::InvalidArgument, "monodromy needs a spec file with --curve, or --system");
    const SpecFile spec = load_spec(path);
    const FrobeniusManifold M(spec.manifold);
    const CausticFrame f = frame_on_curve(M, spec.curve(curve_name), s);
    U = f.U;
    V = f.V;
  }
  const MonodromyData d = compute_monodromy_data(U, V, mo);
  json j = d;
  j["command"] = "monodromy";
  if (!json_out.empty()) {
    std::ofstream file(json_out);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + json_out);
    file << j.dump(2) << "\n";
  }
  if (g.format == "table" || !json_out.empty())
    print_monodromy(out, d);
  else
    emit(out, j);
  return kExitOk;
}

int cmd_isocheck(const std::string& path, const std::string& curve_name, std::optional<std::size_t> samples,
                 std::optional<double> s_begin, std::optional<double> s_end, bool constant_gauge,
                 const GlobalOptions& g, std::ostream& out) {
  const SpecFile spec = load_spec(path);
  const FrobeniusManifold M(spec.manifold);
  CausticCurve curve = spec.curve(curve_name);
  if (samples) curve.samples = *samples;
  if (s_begin) curve.s_begin = *s_begin;
  if (s_end) curve.s_end = *s_end;
  IsocheckOptions io;
  io.threads = resolve_threads(g);
  io.flat_gauge = !constant_gauge;
  const ConstancyReport r = isocheck(M, curve, io);
  if (g.format == "table") {
    const auto& d = r.max_deviation;
    const auto& t = r.thresholds;
    out << "quantity     max deviation   threshold\n";
    out << "B_exp        " << std::setw(14) << fmt(d.B_exp) << "  " << fmt(t.algebraic) << "\n";
    out << "Stokes       " << std::setw(14) << fmt(d.stokes) << "  " << fmt(t.stokes) << "\n";
    out << "M spectrum   " << std::setw(14) << fmt(d.spectrum) << "  " << fmt(t.spectrum) << "\n";
    out << "C            " << std::setw(14) << fmt(d.connection) << "  " << fmt(t.connection) << "\n";
    out << "m            " << std::setw(14) << fmt(d.m) << "  " << fmt(t.m) << "\n";
    out << "subranges    " << r.subranges.size() << "\n";
    out << "passed       " << (r.passed ? "yes" : "no") << "\n";
  } else {
    json j = r;
    j["command"] = "isocheck";
    emit(out, j);
  }
  return r.passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Caustic monodromy toolkit for Frobenius potentials", "causticlab"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for random probes and sample points")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (falls back to CAUSTICLAB_THREADS, then 1)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();

  std::string spec_path;
  std::function<int()> action;

  auto* verify = app.add_subcommand("verify", "Check the Frobenius axioms at seeded random points");
  std::size_t verify_samples = 20;
  double verify_tol = 1e-10;
  verify->add_option("spec", spec_path, "Spec file")->required();
  verify->add_option("--samples", verify_samples)->capture_default_str();
  verify->add_option("--tol", verify_tol)->capture_default_str();
  verify->callback([&] { action = [&] { return cmd_verify(spec_path, verify_samples, verify_tol, g, out); }; });

  auto* classify = app.add_subcommand("classify", "Classify a point as semisimple or caustic");
  std::vector<double> point;
  classify->add_option("spec", spec_path, "Spec file")->required();
  classify->add_option("--point", point, "Flat coordinates")->required()->delimiter(',');
  classify->callback([&] { action = [&] { return cmd_classify(spec_path, point, g, out); }; });

  auto* frame = app.add_subcommand("frame", "Orthonormal caustic frame, V and m at a curve point");
  std::string curve_name;
  double s = 1.0;
  frame->add_option("spec", spec_path, "Spec file")->required();
  frame->add_option("--curve", curve_name)->required();
  frame->add_option("--s", s)->required();
  frame->callback([&] { action = [&] { return cmd_frame(spec_path, curve_name, s, g, out); }; });

  auto* mono = app.add_subcommand("monodromy", "B_exp, Stokes matrices, Levelt data and C at a curve point");
  MonodromyOptions mo;
  std::string json_out, system;
  mono->add_option("spec", spec_path, "Spec file");
  mono->add_option("--curve", curve_name);
  mono->add_option("--s", s)->capture_default_str();
  mono->add_option("--system", system, "JSON file with U and V instead of a spec");
  mono->add_option("--order", mo.order, "Formal series order")->capture_default_str();
  mono->add_option("--levelt-order", mo.levelt_order)->capture_default_str();
  mono->add_option("--rtol", mo.rtol)->capture_default_str();
  mono->add_option("--atol", mo.atol)->capture_default_str();
  mono->add_option("--json", json_out, "Also write the JSON report to this file");
  mono->callback([&] {
    action = [&] { return cmd_monodromy(spec_path, curve_name, s, system, mo, json_out, g, out); };
  });

  auto* iso = app.add_subcommand("isocheck", "Constancy of the monodromy data along a caustic curve");
  std::optional<std::size_t> samples;
  std::optional<double> s_begin, s_end;
  bool constant_gauge = false;
  iso->add_option("spec", spec_path, "Spec file")->required();
  iso->add_option("--curve", curve_name)->required();
  iso->add_option("--samples", samples);
  iso->add_option("--s-begin", s_begin);
  iso->add_option("--s-end", s_end);
  iso->add_flag("--constant-gauge", constant_gauge, "Keep H0 and T0 fixed instead of transporting them");
  iso->callback([&] {
    action = [&] {
      return cmd_isocheck(spec_path, curve_name, samples, s_begin, s_end, constant_gauge, g, out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const Error& e) {
    const bool degenerate = is_degeneracy(e.code());
    emit(out, json{{"error", to_string(e.code())}, {"message", e.what()}});
    err << "causticlab: " << e.what() << "\n";
    return degenerate ? kExitDegenerate : kExitUsage;
  } catch (const std::exception& e) {
    emit(out, json{{"error", "Internal"}, {"message", e.what()}});
    err << "causticlab: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace causticlab

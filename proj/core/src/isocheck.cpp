#include "causticlab/isocheck.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>

#include "causticlab/error.hpp"
#include "causticlab/parallel.hpp"
#include "causticlab/sectors.hpp"

namespace causticlab {

namespace {

CVector at(Complex s) { return CVector::Constant(1, s); }

std::vector<Complex> spectrum(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

std::vector<Complex> diagonal_of(const CMatrix& U) {
  std::vector<Complex> u;
  for (Eigen::Index i = 0; i < U.rows(); ++i) u.push_back(U(i, i));
  return u;
}

std::string strip_code(const Error& e) {
  const std::string what = e.what();
  const std::size_t prefix = to_string(e.code()).size() + 2;
  return what.size() > prefix ? what.substr(prefix) : what;
}

}  // namespace

CVector CausticCurve::point(Complex s) const {
  CVector p(static_cast<Eigen::Index>(param.size()));
  for (std::size_t i = 0; i < param.size(); ++i) p[static_cast<Eigen::Index>(i)] = param[i].eval(at(s));
  return p;
}

CVector CausticCurve::velocity(Complex s) const {
  CVector v(static_cast<Eigen::Index>(param.size()));
  for (std::size_t i = 0; i < param.size(); ++i) v[static_cast<Eigen::Index>(i)] = partial(param[i], 0).eval(at(s));
  return v;
}

std::vector<CVector> CausticCurve::tangents(Complex s, std::size_t unit_index) const {
  if (tangent.empty()) {
    CVector e = CVector::Zero(static_cast<Eigen::Index>(param.size()));
    e[static_cast<Eigen::Index>(unit_index)] = 1.0;
    return {e, velocity(s)};
  }
  std::vector<CVector> out;
  for (const auto& t : tangent) {
    CVector v(static_cast<Eigen::Index>(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) v[static_cast<Eigen::Index>(i)] = t[i].eval(at(s));
    out.push_back(v);
  }
  return out;
}

CurveMap CausticCurve::curve_map() const {
  return {[c = *this](Complex s) { return c.point(s); }, [c = *this](Complex s) { return c.velocity(s); }};
}

std::vector<double> CausticCurve::sample_parameters() const {
  if (samples == 0) return {};
  if (samples == 1) return {s_begin};
  std::vector<double> s;
  for (std::size_t k = 0; k < samples; ++k)
    s.push_back(s_begin + (s_end - s_begin) * static_cast<double>(k) / static_cast<double>(samples - 1));
  return s;
}

std::vector<CurveSample> sample_curve(const FrobeniusManifold& manifold, const CausticCurve& curve,
                                      const FrameOptions& options) {
  if (curve.param.size() != manifold.dimension())
    throw Error(ErrorCode::ArityMismatch, "curve '" + curve.name + "' has " + std::to_string(curve.param.size()) +
                                              " coordinates for a manifold of dimension " +
                                              std::to_string(manifold.dimension()));
  std::vector<CurveSample> out;
  for (const double s : curve.sample_parameters()) {
    try {
      CurveSample sample;
      sample.s = s;
      sample.point = curve.point(s);
      const Classification cls = classify_point(manifold, sample.point, {options.tol});
      if (cls.kind != PointClass::Caustic)
        throw Error(ErrorCode::NotCaustic, "point classifies as " + std::string(to_string(cls.kind)));
      sample.frame = caustic_frame(manifold, sample.point, curve.tangents(s, manifold.spec().unit_index), options);
      if (!out.empty()) align_frame(sample.frame, out.back().frame);
      out.push_back(std::move(sample));
    } catch (const Error& e) {
      throw Error(e.code(), "curve '" + curve.name + "' at s = " + format_number(s) + ": " + strip_code(e));
    }
  }
  return out;
}

ConstancyReport constancy_report(const FrobeniusManifold& manifold, const std::vector<CurveSample>& samples,
                                 const CurveMap& curve, const IsocheckOptions& options) {
  if (samples.size() < 3) throw Error(ErrorCode::InvalidArgument, "constancy needs at least 3 samples");
  ConstancyReport report;
  report.samples = samples;
  report.thresholds = options.thresholds;
  const std::size_t count = samples.size();
  const Eigen::Index n = samples.front().frame.U.rows();

  report.theta.assign(count, 0.0);
  if (options.flat_gauge && n >= 2) {
    for (std::size_t k = 1; k < count; ++k) {
      const CausticFrame* ref = &samples[k - 1].frame;
      auto omega12 = [&](double s) {
        return frame_derivative_connection(manifold, curve, s, options.fd_step, ref, options.frame)(0, 1);
      };
      report.theta[k] = report.theta[k - 1] + boost::math::quadrature::gauss<double, 7>::integrate(
                                                   omega12, samples[k - 1].s, samples[k].s);
    }
  }

  CVector levelt_scale = CVector::Ones(n);
  if (options.flat_gauge) {
    const CMatrix& P0 = samples.front().frame.frame_inverse;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(P0(i, j)) > 1e-8) {
          levelt_scale[j] = 1.0 / P0(i, j);
          break;
        }
  }

  // Frozen admissible angles over maximal runs of samples.
  std::vector<std::vector<double>> rays;
  for (const auto& sample : samples) rays.push_back(stokes_rays(diagonal_of(sample.frame.U)));
  for (std::size_t first = 0; first < count;) {
    const SectorConfig base = admissible_angle(rays[first]);
    SubRange sub;
    sub.first = first;
    sub.phi = base.phi;
    sub.eps = base.eps;
    std::size_t last = first;
    while (last + 1 < count && ray_clearance(base.phi, rays[last + 1]) >= 1e-6) ++last;
    for (std::size_t k = first; k <= last; ++k)
      if (!rays[k].empty()) sub.eps = std::min(sub.eps, ray_clearance(base.phi, rays[k]) / 2.0);
    sub.last = last;
    report.subranges.push_back(sub);
    first = last + 1;
  }
  report.admissibility_break = report.subranges.size() > 1;

  report.data.resize(count);
  std::vector<const SubRange*> owner(count);
  for (const auto& sub : report.subranges)
    for (std::size_t k = sub.first; k <= sub.last; ++k) owner[k] = &sub;
  parallel_for(count, options.threads, [&](std::size_t k) {
    const CausticFrame& f = samples[k].frame;
    MonodromyOptions mo = options.monodromy;
    mo.phi = owner[k]->phi;
    mo.eps = owner[k]->eps;
    mo.threads = 1;
    if (options.flat_gauge) {
      CMatrix D = CMatrix::Identity(n, n);
      if (n >= 2) {
        D(0, 0) = std::exp(-kI * report.theta[k]);
        D(1, 1) = std::exp(kI * report.theta[k]);
      }
      mo.column_scaling = D;
      mo.levelt_T0 = f.frame_inverse * levelt_scale.asDiagonal();
    }
    report.data[k] = compute_monodromy_data(f.U, f.V, mo);
  });

  report.passed = true;
  const auto& th = options.thresholds;
  for (auto& sub : report.subranges) {
    const MonodromyData& ref = report.data[sub.first];
    const auto ref_spectrum = spectrum(ref.monodromy_zero);
    Deviations& d = sub.deviations;
    for (std::size_t k = sub.first; k <= sub.last; ++k) {
      const MonodromyData& cur = report.data[k];
      d.B_exp = std::max(d.B_exp, max_abs(cur.B_exp - ref.B_exp));
      for (std::size_t nu = 0; nu < cur.stokes.size(); ++nu)
        d.stokes = std::max(d.stokes, max_abs(cur.stokes[nu].S - ref.stokes[nu].S));
      d.spectrum = std::max(d.spectrum, multiset_distance(spectrum(cur.monodromy_zero), ref_spectrum));
      d.connection = std::max(d.connection, max_abs(cur.connection_C - ref.connection_C));
      d.m = std::max(d.m, std::abs(samples[k].frame.m - samples[sub.first].frame.m));
    }
    Deviations& all = report.max_deviation;
    all.B_exp = std::max(all.B_exp, d.B_exp);
    all.stokes = std::max(all.stokes, d.stokes);
    all.spectrum = std::max(all.spectrum, d.spectrum);
    all.connection = std::max(all.connection, d.connection);
    all.m = std::max(all.m, d.m);
  }
  const Deviations& all = report.max_deviation;
  report.passed = all.B_exp < th.algebraic && all.stokes < th.stokes && all.spectrum < th.spectrum &&
                  all.connection < th.connection && all.m < th.m;
  return report;
}

ConstancyReport isocheck(const FrobeniusManifold& manifold, const CausticCurve& curve,
                         const IsocheckOptions& options) {
  ConstancyReport report = constancy_report(manifold, sample_curve(manifold, curve, options.frame),
                                            curve.curve_map(), options);
  report.curve = curve.name;
  return report;
}

}  // namespace causticlab

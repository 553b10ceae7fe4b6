#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "causticlab/caustic.hpp"
#include "causticlab/frobenius.hpp"
#include "causticlab/isocheck.hpp"
#include "causticlab/monodromy.hpp"
#include "causticlab/rational.hpp"

// Complex numbers are [re, im]; matrices are arrays of rows; vectors are arrays.
NLOHMANN_JSON_NAMESPACE_BEGIN
template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& c);
  static void from_json(const json& j, std::complex<double>& c);
};

template <>
struct adl_serializer<causticlab::CMatrix> {
  static void to_json(json& j, const causticlab::CMatrix& m);
  static void from_json(const json& j, causticlab::CMatrix& m);
};

template <>
struct adl_serializer<causticlab::CVector> {
  static void to_json(json& j, const causticlab::CVector& v);
  static void from_json(const json& j, causticlab::CVector& v);
};
NLOHMANN_JSON_NAMESPACE_END

namespace causticlab {

using nlohmann::json;

void to_json(json& j, const Rational& r);
void from_json(const json& j, Rational& r);

// [{"exponents": [...], "coeff": [re, im]}, ...]
void to_json(json& j, const MultiPoly& p);
MultiPoly poly_from_json(const json& j, std::size_t num_vars);

NLOHMANN_JSON_SERIALIZE_ENUM(PointClass, {{PointClass::Semisimple, "Semisimple"},
                                          {PointClass::SemisimpleCoalescent, "SemisimpleCoalescent"},
                                          {PointClass::Caustic, "Caustic"}})

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AxiomResiduals, commutativity, associativity, frobenius, unit, euler_metric,
                                   quasi_homogeneity, closedness)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AxiomReport, points, per_point, worst, tol, passed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Classification, kind, eigenvalues, min_gap)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CausticFrame, point, eigenvalues, idempotents, nilpotent, normal, frame,
                                   frame_inverse, U, V, m, orthonormality_residual, idempotent_residual,
                                   nilpotent_residual, diagonal_residual, tangency_residual)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ApproachFit, t, gaps, slope, m, residual)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SectorConfig, phi, eps, stokes_rays, nu_min, nu_max)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(StokesResult, nu, overlap_arg, S, consistency, pattern_violation, det_residual)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LeveltData, residue, U, T, J, D, S, R, R_terms, monodromy, resonant)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MonodromyDiagnostics, match_radius, tail_estimate, inner_radius, levelt_radius,
                                   liouville, anchor_independence, connection_radius_residual, loop_residual,
                                   cyclic_spectrum, cyclic_conjugation, stokes_consistency, stokes_pattern,
                                   stokes_det)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MonodromyData, U, V, sectors, B_exp, stokes, levelt, connection_C,
                                   monodromy_zero, monodromy_sector0, diagnostics)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Deviations, B_exp, stokes, spectrum, connection, m)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SubRange, first, last, phi, eps, deviations)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ConstancyThresholds, algebraic, stokes, spectrum, connection, m)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CurveSample, s, point, frame)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ConstancyReport, curve, samples, theta, data, subranges, max_deviation,
                                   thresholds, admissibility_break, passed)

// Output of the frame subcommand.
struct FrameReport {
  std::string curve;
  double s = 0.0;
  Classification classification;
  CausticFrame frame;
  Complex v12;
  double v12_abs = 0.0;
  bool m_near_integer = false;
  ApproachFit approach;
};

void to_json(json& j, const FrameReport& r);
void from_json(const json& j, FrameReport& r);

struct VerifyReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  CMatrix metric;
  std::vector<Rational> mu;
  AxiomReport axioms;
};

void to_json(json& j, const VerifyReport& r);
void from_json(const json& j, VerifyReport& r);

}  // namespace causticlab

#include <doctest.h>

#include "qmeter/hamiltonian.hpp"
#include "qmeter/json_io.hpp"

using namespace qmeter;

namespace {

const SpinSystem kPair({{"e1", SpinRole::Electron, 2}, {"e2", SpinRole::Electron, 2}});
const SpinSystem kModel({{"e1", SpinRole::Electron, 2},
                         {"e2", SpinRole::Electron, 2},
                         {"n1", SpinRole::Nucleus, 2}});
const double kGamma = PhysicalConstants{}.gamma_e;  // rad s^-1 T^-1

double max_abs(const OperatorMatrix& m) { return m.cwiseAbs().maxCoeff(); }

HamiltonianSpec axial_hyperfine(double a_uT) {
  HamiltonianSpec spec;
  spec.terms.emplace_back(HyperfineTerm::axial(Vec3(0, 0, a_uT), 0, 2));
  return spec;
}

HamiltonianSpec zeeman(const Vec3& b_uT) {
  HamiltonianSpec spec;
  ZeemanTerm t;
  t.b_uT = b_uT;
  spec.terms.emplace_back(t);
  return spec;
}

}  // namespace

TEST_SUITE_BEGIN("hamiltonian");

TEST_CASE("Zeeman term on two electrons has total-Sz spectrum") {
  const OperatorMatrix h = build(zeeman(Vec3(0, 0, 50)), kPair);
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h, Eigen::EigenvaluesOnly);
  const double unit = kGamma * 50e-6;  // rad/s
  CHECK(solver.eigenvalues()(0) == doctest::Approx(-unit).epsilon(1e-12));
  CHECK(solver.eigenvalues()(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(solver.eigenvalues()(2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(solver.eigenvalues()(3) == doctest::Approx(unit).epsilon(1e-12));
}

TEST_CASE("axial hyperfine matches gamma A Sz Iz entrywise") {
  const OperatorMatrix h = build(axial_hyperfine(1000), kModel);
  const SpinOperators half = spin_operators(2);
  const OperatorMatrix expected =
      kGamma * 1000e-6 * embed(half.sz, 0, kModel) * embed(half.sz, 2, kModel);
  CHECK(max_abs(h - expected) < 1e-12 * max_abs(expected));
}

TEST_CASE("exchange makes the singlet an eigenprojector at -(3/4) gamma J") {
  HamiltonianSpec spec;
  spec.terms.emplace_back(ExchangeTerm{500.0, 0, 1});
  const OperatorMatrix h = build(spec, kPair);
  const OperatorMatrix qs = singlet_projector(kPair, 0, 1);
  const double expected = -0.75 * kGamma * 500e-6;
  CHECK(max_abs(h * qs - expected * qs) < 1e-9);
  // Triplet sector sits at +gamma J / 4.
  const OperatorMatrix qt = triplet_projector(kPair, 0, 1);
  CHECK(max_abs(h * qt - 0.25 * kGamma * 500e-6 * qt) < 1e-9);
}

TEST_CASE("dipolar term is Hermitian and requires a unit axis") {
  HamiltonianSpec spec;
  DipolarTerm t;
  t.v_uT = 1000;
  t.axis = Vec3(0, 0, 2);
  spec.terms.emplace_back(t);
  CHECK_THROWS_AS(build(spec, kPair), std::invalid_argument);

  std::get<DipolarTerm>(spec.terms[0]).axis = Vec3(0, 0, 1);
  const OperatorMatrix h = build(spec, kPair);
  CHECK(is_hermitian(h, 1e-12));
  CHECK(spectral_norm(h) > 0.0);
}

TEST_CASE("build output is Hermitian for a kitchen-sink spec") {
  HamiltonianSpec spec;
  HyperfineTerm full;
  full.a_uT << 100, 30, 0, 30, 250, 10, 0, 10, 900;
  full.electron = 0;
  full.nucleus = 2;
  spec.terms.emplace_back(full);
  spec.terms.emplace_back(ExchangeTerm{42.0, 0, 1});
  DipolarTerm dip;
  dip.v_uT = 77;
  dip.axis = Vec3(1, 1, 1).normalized();
  spec.terms.emplace_back(dip);
  ZeemanTerm ze;
  ze.b_uT = Vec3(10, 20, 30);
  spec.terms.emplace_back(ze);

  const OperatorMatrix h = build(spec, kModel);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * spectral_norm(h));
}

TEST_CASE("build is linear in the term list") {
  const HamiltonianSpec a = axial_hyperfine(1000);
  HamiltonianSpec b;
  ZeemanTerm ze;
  ze.b_uT = Vec3(50, 0, 0);
  b.terms.emplace_back(ze);

  HamiltonianSpec both = a;
  both.terms.insert(both.terms.end(), b.terms.begin(), b.terms.end());
  CHECK(max_abs(build(both, kModel) - (build(a, kModel) + build(b, kModel))) == 0.0);
}

TEST_CASE("isotropic hyperfine commutes with every total-spin component") {
  HamiltonianSpec spec;
  spec.terms.emplace_back(HyperfineTerm::axial(Vec3(1000, 1000, 1000), 0, 2));
  const OperatorMatrix h = build(spec, kModel);
  const double h_norm = spectral_norm(h);

  const SpinOperators half = spin_operators(2);
  const OperatorMatrix* comps[3] = {&half.sx, &half.sy, &half.sz};
  for (const OperatorMatrix* comp : comps) {
    OperatorMatrix total = OperatorMatrix::Zero(kModel.dim(), kModel.dim());
    for (int site = 0; site < 3; ++site) total += embed(*comp, site, kModel);
    CHECK(commutator_norm(h, total) < 1e-9 * h_norm);
  }
}

TEST_CASE("commutator classification of the measurement scenarios") {
  HamiltonianSpec exchange;
  exchange.terms.emplace_back(ExchangeTerm{1000.0, 0, 1});
  const OperatorMatrix h0 = build(exchange, kModel);
  const OperatorMatrix h_ex = build(axial_hyperfine(1000), kModel);

  for (const Vec3& direction : {Vec3(0, 0, 50), Vec3(50, 0, 0), Vec3(30, 40, 50)}) {
    const OperatorMatrix h_int = build(zeeman(direction), kModel);
    CHECK(commutator_norm(h0, h_int) <
          1e-12 * spectral_norm(h0) * spectral_norm(h_int));
  }

  const OperatorMatrix transverse = build(zeeman(Vec3(50, 0, 0)), kModel);
  CHECK(commutator_norm(h_ex, transverse) >
        1e-2 * spectral_norm(h_ex) * spectral_norm(transverse));
  CHECK(commutator_norm(h_ex, h_ex) == 0.0);

  OperatorMatrix small(2, 2);
  small.setZero();
  CHECK_THROWS_AS(commutator_norm(h_ex, small), std::invalid_argument);
}

TEST_CASE("coherence condition arithmetic") {
  const OperatorMatrix h_ex = build(axial_hyperfine(1000), kModel);
  // ||H_ex|| = gamma * A_z / 4.
  const double expected_norm = kGamma * 1000e-6 / 4.0;
  CHECK(spectral_norm(h_ex) == doctest::Approx(expected_norm).epsilon(1e-12));

  const CoherenceCheck long_coh = coherence_condition(h_ex, 100e-9);
  CHECK(long_coh.satisfied);
  CHECK(long_coh.margin == doctest::Approx(100e-9 * expected_norm).epsilon(1e-12));

  const CoherenceCheck short_coh = coherence_condition(h_ex, 1e-9);
  CHECK_FALSE(short_coh.satisfied);
  CHECK(short_coh.margin == doctest::Approx(1e-9 * expected_norm).epsilon(1e-12));

  const OperatorMatrix zero = OperatorMatrix::Zero(8, 8);
  CHECK_FALSE(coherence_condition(zero, 1.0).satisfied);
  CHECK_FALSE(coherence_condition(zero, 1e12).satisfied);
  CHECK_THROWS_AS(coherence_condition(h_ex, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(coherence_condition(h_ex, -1.0), std::invalid_argument);
}

TEST_CASE("site role validation") {
  HamiltonianSpec spec;
  spec.terms.emplace_back(ExchangeTerm{10.0, 0, 2});  // site 2 is a nucleus
  CHECK_THROWS_AS(build(spec, kModel), std::invalid_argument);

  HamiltonianSpec hf;
  hf.terms.emplace_back(HyperfineTerm::axial(Vec3(0, 0, 1), 0, 1));  // both electrons
  CHECK_THROWS_AS(build(hf, kModel), std::invalid_argument);
}

TEST_CASE("hamiltonian JSON schema round-trips through build") {
  const Json doc = {
      {"terms",
       {{{"type", "hyperfine"}, {"A_uT", {0, 0, 1000}}, {"electron", "e1"}, {"nucleus", "n1"}},
        {{"type", "zeeman"}, {"B_uT", {50, 0, 0}}, {"electrons", {"e1", "e2"}}},
        {{"type", "exchange"}, {"J_uT", 12.5}, {"e1", "e1"}, {"e2", "e2"}},
        {{"type", "dipolar"}, {"V_uT", 1000}, {"axis", {0, 0, 1}}, {"e1", "e1"}, {"e2", "e2"}}}}};
  const HamiltonianSpec spec = hamiltonian_from_json(doc, kModel);
  const HamiltonianSpec again = hamiltonian_from_json(hamiltonian_to_json(spec, kModel), kModel);
  CHECK(max_abs(build(spec, kModel) - build(again, kModel)) == 0.0);

  CHECK_THROWS_WITH_AS(hamiltonian_from_json({{"terms", {{{"type", "warp"}}}}}, kModel),
                       doctest::Contains("warp"), ConfigError);
  CHECK_THROWS_WITH_AS(
      hamiltonian_from_json({{"terms", {{{"type", "zeeman"}}}}}, kModel),
      doctest::Contains("B_uT"), ConfigError);
}

TEST_CASE("rotated specs build to unitarily equivalent Hamiltonians") {
  HamiltonianSpec spec = axial_hyperfine(1000);
  ZeemanTerm ze;
  ze.b_uT = Vec3(50, 0, 0);
  spec.terms.emplace_back(ze);

  const Eigen::Matrix3d r =
      Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
  const OperatorMatrix h = build(spec, kModel);
  const OperatorMatrix h_rot = build(rotated(spec, r), kModel);
  // Spectrum is rotation invariant.
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> s1(h, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> s2(h_rot, Eigen::EigenvaluesOnly);
  CHECK((s1.eigenvalues() - s2.eigenvalues()).cwiseAbs().maxCoeff() <
        1e-9 * spectral_norm(h));
}

TEST_SUITE_END();

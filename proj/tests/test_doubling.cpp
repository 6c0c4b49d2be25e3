#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symidx/doubling.hpp"

using namespace symidx;

namespace {

SymplecticPathSpec rotation_path(double rate, double duration) {
  return SymplecticPathSpec::single(1, M_PI * rate * Mat::Identity(2, 2), duration);
}

Mat rotation2(double theta) {
  Mat r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

HalfPathData random_half(Rng& rng, int n) {
  SymplecticPathSpec spec;
  spec.space = SympSpace::standard(n);
  const int segs = 1 + static_cast<int>(rng.next_u64() % 4);
  for (int k = 0; k < segs; ++k)
    spec.segments.push_back({random_symmetric(rng, 2 * n, 1.5), rng.uniform(0.2, 1.0)});
  return HalfPathData{spec, {}};
}

}  // namespace

TEST_CASE("doubling the trivial path") {
  SymplecticPathSpec flat = SymplecticPathSpec::single(1, Mat::Zero(2, 2), 1.0);
  const DoubledPath d = double_path(HalfPathData{flat, {}});
  CHECK((d.monodromy - Mat::Identity(2, 2)).norm() == doctest::Approx(0.0));
  PathEvaluator ev(d.full);
  CHECK((ev(2.0) - Mat::Identity(2, 2)).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("doubling the quarter rotation") {
  // conjugating e^{i theta} gives e^{-i theta}, so the double of e^{i pi t/2}
  // continues the same rotation on [0, 2] and the monodromy is -1.
  const DoubledPath d = double_path(HalfPathData{rotation_path(0.5, 1.0), {}});
  CHECK((d.monodromy + Mat::Identity(2, 2)).norm() == doctest::Approx(0.0).epsilon(1e-12));
  PathEvaluator ev(d.full);
  for (double t : {0.25, 0.8, 1.3, 1.9})
    CHECK((ev(t) - rotation2(M_PI * t / 2)).norm() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("doubling the half rotation gives trivial monodromy") {
  const DoubledPath d = double_path(HalfPathData{rotation_path(1.0, 1.0), {}});
  CHECK((d.monodromy - Mat::Identity(2, 2)).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("doubles satisfy the reflection symmetry and involution laws") {
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 2);
    const HalfPathData h = random_half(rng, n);
    const DoubledPath d = double_path(h);
    const Mat c = h.involution_or_default();
    PathEvaluator ev(d.full);
    const double total = ev.duration();
    const Mat f2inv = d.monodromy.partialPivLu().solve(Mat::Identity(2 * n, 2 * n));
    for (int k = 0; k <= 64; ++k) {
      const double t = total * k / 64.0;
      const Mat lhs = ev(t);
      const Mat rhs = c * ev(total - t) * f2inv * c;
      CHECK((lhs - rhs).norm() <= 1e-9 * std::max(1.0, rhs.norm()));
    }
    const Mat cf2 = c * d.monodromy;
    CHECK((cf2 * cf2 - Mat::Identity(2 * n, 2 * n)).norm() ==
          doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("reflection basics") {
  SymplecticPathSpec flat = SymplecticPathSpec::single(1, Mat::Zero(2, 2), 1.0);
  PathEvaluator idev(reflected_half(HalfPathData{flat, {}}));
  CHECK((idev(1.0) - Mat::Identity(2, 2)).norm() == doctest::Approx(0.0));

  // the quarter rotation reflects to itself
  PathEvaluator rev(reflected_half(HalfPathData{rotation_path(0.5, 1.0), {}}));
  for (double t : {0.3, 0.7, 1.0})
    CHECK((rev(t) - rotation2(M_PI * t / 2)).norm() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("reflected endpoint is the conjugated inverse") {
  Rng rng(57);
  for (int trial = 0; trial < 10; ++trial) {
    const HalfPathData h = random_half(rng, 2);
    const Mat c = h.involution_or_default();
    const Mat f1 = PathEvaluator(h.half)(1.0 * h.half.total_duration());
    const Mat expect = c * f1.partialPivLu().solve(Mat::Identity(4, 4)) * c;
    const Mat got = PathEvaluator(reflected_half(h))(h.half.total_duration());
    CHECK((got - expect).norm() == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("reflection is involutive on the path") {
  Rng rng(63);
  for (int trial = 0; trial < 8; ++trial) {
    const HalfPathData h = random_half(rng, 1);
    const SymplecticPathSpec back =
        reflected_half(HalfPathData{reflected_half(h), h.involution});
    PathEvaluator orig(h.half), twice(back);
    for (double u : {0.2, 0.5, 0.9})
      CHECK((orig(u * orig.duration()) - twice(u * twice.duration())).norm() ==
            doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("defect form of trivial and half-turn monodromy") {
  SymplecticPathSpec flat = SymplecticPathSpec::single(1, Mat::Zero(2, 2), 1.0);
  const QuadraticForm q0 = defect_form(double_path(HalfPathData{flat, {}}));
  CHECK(q0.matrix.norm() == doctest::Approx(0.0));

  // monodromy -1: q(z) = omega(2z, conj z) = -4xy, signature 0
  const DoubledPath d = double_path(HalfPathData{rotation_path(0.5, 1.0), {}});
  double asym = 0;
  const QuadraticForm q = defect_form(d, &asym);
  CHECK(asym <= 1e-12);
  CHECK(q.matrix(0, 1) == doctest::Approx(-2.0));
  CHECK(q.matrix(0, 0) == doctest::Approx(0.0));
  CHECK(signature(q).signature == 0);
}

TEST_CASE("defect form symmetrization discards almost nothing") {
  Rng rng(69);
  for (int trial = 0; trial < 10; ++trial) {
    double asym = 0;
    defect_form(double_path(random_half(rng, 2)), &asym);
    CHECK(asym <= 1e-9);
  }
}

TEST_CASE("index identity on the quarter rotation") {
  const DefectReport rep = verify_index_theorem(HalfPathData{rotation_path(0.5, 1.0), {}});
  CHECK(rep.mu_plus == HalfInt::from_twice(1));
  CHECK(rep.mu_minus == HalfInt::from_twice(1));
  CHECK(rep.mu_loop == HalfInt::whole(1));
  CHECK(rep.q_signature == 0);
  CHECK(rep.defect == HalfInt{});
  CHECK(rep.pass);
}

TEST_CASE("index identity rejects degenerate monodromy") {
  CHECK_THROWS_AS(verify_index_theorem(HalfPathData{rotation_path(1.0, 1.0), {}}), Error);
}

TEST_CASE("index identity holds on random half paths") {
  Rng rng(75);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 3);
    try {
      const DefectReport rep = verify_index_theorem(random_half(rng, n));
      CHECK(rep.defect == HalfInt{});
      ++checked;
    } catch (const Error& e) {
      if (e.kind() != ErrKind::Nondegeneracy && e.kind() != ErrKind::IrregularCrossing &&
          e.kind() != ErrKind::Unresolved && e.kind() != ErrKind::Degenerate)
        throw;
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("boundary index survives reflection") {
  CHECK(verify_reflection(HalfPathData{rotation_path(0.5, 1.0), {}}));
  Rng rng(81);
  int checked = 0;
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 2);
    try {
      CHECK(verify_reflection(random_half(rng, n)));
      ++checked;
    } catch (const Error& e) {
      if (e.kind() != ErrKind::Nondegeneracy && e.kind() != ErrKind::IrregularCrossing &&
          e.kind() != ErrKind::Unresolved && e.kind() != ErrKind::Degenerate)
        throw;
    }
  }
  CHECK(checked >= 8);
}

TEST_CASE("diagonal double of the trivial path") {
  SymplecticPathSpec flat = SymplecticPathSpec::single(1, Mat::Zero(2, 2), 2.0);
  const DoubledPath d = diagonal_double(flat);
  PathEvaluator ev(d.full);
  CHECK((ev(2.0) - Mat::Identity(4, 4)).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("diagonal double blocks and symmetry") {
  const SymplecticPathSpec phi = rotation_path(0.5, 2.0);
  const DoubledPath d = diagonal_double(phi);
  PathEvaluator ev(d.full);
  PathEvaluator pev(phi);
  const Mat phi2inv = pev(2.0).partialPivLu().solve(Mat::Identity(2, 2));
  for (double t : {0.4, 1.0, 1.7}) {
    const Mat psi = ev(t);
    CHECK((psi.topLeftCorner(2, 2) - pev(t)).norm() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK((psi.bottomRightCorner(2, 2) - pev(2.0 - t) * phi2inv).norm() ==
          doctest::Approx(0.0).epsilon(1e-10));
    CHECK(psi.topRightCorner(2, 2).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("diagonal laws on the quarter rotation") {
  const DiagonalReport rep = verify_diagonal(rotation_path(0.5, 2.0));
  CHECK(rep.q_signature == 0);
  CHECK(rep.mu_periodic == HalfInt::whole(1));
  CHECK(rep.mu_loop == HalfInt::whole(2));
  CHECK(rep.mu_half == HalfInt::whole(1));
  CHECK(rep.sign_q_zero);
  CHECK(rep.loop_equals_twice_half);
  CHECK(rep.half_equals_factor_index);
  CHECK(rep.pass);
}

TEST_CASE("diagonal laws reject trivial monodromy") {
  CHECK_THROWS_AS(verify_diagonal(rotation_path(1.0, 2.0)), Error);
}

TEST_CASE("diagonal laws hold on random paths") {
  Rng rng(87);
  int checked = 0;
  for (int trial = 0; trial < 15; ++trial) {
    const int m = 1 + static_cast<int>(rng.next_u64() % 2);
    SymplecticPathSpec phi;
    phi.space = SympSpace::standard(m);
    const int segs = 1 + static_cast<int>(rng.next_u64() % 3);
    for (int k = 0; k < segs; ++k)
      phi.segments.push_back({random_symmetric(rng, 2 * m, 1.5), rng.uniform(0.4, 1.0)});
    try {
      const DiagonalReport rep = verify_diagonal(phi);
      CHECK(rep.pass);
      ++checked;
    } catch (const Error& e) {
      if (e.kind() != ErrKind::Nondegeneracy && e.kind() != ErrKind::IrregularCrossing &&
          e.kind() != ErrKind::Unresolved && e.kind() != ErrKind::Degenerate)
        throw;
    }
  }
  CHECK(checked >= 8);
}

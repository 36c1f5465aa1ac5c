#include "doctest.h"

#include "dynres/channel.hpp"
#include "dynres/rand.hpp"

using namespace dynres;

namespace {

Mat kraus_apply(const std::vector<Mat>& kraus, const Mat& rho) {
  Mat out = Mat::Zero(kraus[0].rows(), kraus[0].rows());
  for (const Mat& k : kraus) out += k * rho * k.adjoint();
  return out;
}

}  // namespace

TEST_CASE("identity channel Choi is phi+") {
  ChannelChoi id = choi_from_kraus({Mat::Identity(2, 2)}, {2, 2});
  CHECK(max_abs(id.J - phi_plus(2)) < 1e-14);
  CHECK(std::abs(id.J.trace() - 2.0) < 1e-14);
}

TEST_CASE("completely depolarizing qubit channel from Pauli Kraus") {
  Mat x(2, 2), y(2, 2), z(2, 2), i2 = Mat::Identity(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  ChannelChoi n = choi_from_kraus({0.5 * i2, 0.5 * x, 0.5 * y, 0.5 * z}, {2, 2});
  // J = I_2 (x) u_2 * 2 = I_4 / 2
  CHECK(max_abs(n.J - Mat::Identity(4, 4) / 2.0) < 1e-14);
  CHECK(max_abs(n.J - completely_depolarizing(2, 2).J) < 1e-14);
}

TEST_CASE("non-unital Kraus example") {
  Mat k0 = Mat::Zero(2, 2), k1 = Mat::Zero(2, 2);
  k0(0, 0) = 1;  // |0><0|
  k1(0, 1) = 1;  // |0><1|
  ChannelChoi n = choi_from_kraus({k0, k1}, {2, 2});
  Mat proj0 = Mat::Zero(2, 2);
  proj0(0, 0) = 1;
  CHECK(max_abs(n.J - kron(Mat::Identity(2, 2), proj0)) < 1e-14);
}

TEST_CASE("choi_from_kraus rejects non-trace-preserving sets") {
  CHECK_THROWS_AS(choi_from_kraus({0.5 * Mat::Identity(2, 2)}, {2, 2}), Error);
}

TEST_CASE("apply_channel basics") {
  Rng rng(5);
  Mat rho = rng.random_density(2);
  CHECK(max_abs(apply_channel(identity_channel(2), rho) - rho) < 1e-13);
  Mat u2 = Mat::Identity(2, 2) / 2.0;
  CHECK(max_abs(apply_channel(completely_depolarizing(2, 2), rho) - u2) < 1e-13);
}

TEST_CASE("apply_channel matches the Kraus-sum oracle") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    ChannelChoi n = random_channel(seed, {3, 2}, 2);
    Rng rng(seed + 100);
    for (int t = 0; t < 5; ++t) {
      Mat rho = rng.random_density(3);
      Mat via_choi = apply_channel(n, rho);
      Mat via_kraus = kraus_apply(kraus_from_choi(n), rho);
      CHECK(max_abs(via_choi - via_kraus) < 1e-10);
    }
  }
}

TEST_CASE("compose and tensor") {
  ChannelChoi a = random_channel(11, {2, 3}, 2);
  ChannelChoi b = random_channel(12, {3, 2}, 3);
  ChannelChoi ba = compose(b, a);
  CHECK(validate_channel(ba).pass);
  Rng rng(13);
  Mat rho = rng.random_density(2);
  CHECK(max_abs(apply_channel(ba, rho) - apply_channel(b, apply_channel(a, rho))) <
        1e-11);

  ChannelChoi ab = tensor_channels(a, b);
  CHECK(validate_channel(ab).pass);
  Mat r1 = rng.random_density(2), r2 = rng.random_density(3);
  Mat lhs = apply_channel(ab, kron(r1, r2));
  Mat rhs = kron(apply_channel(a, r1), apply_channel(b, r2));
  CHECK(max_abs(lhs - rhs) < 1e-11);

  // composing with identity is a no-op
  ChannelChoi same = compose(identity_channel(3), a);
  CHECK(max_abs(same.J - a.J) < 1e-12);
}

TEST_CASE("validate_channel") {
  CHECK(validate_channel(phi_plus(2), {2, 2}).pass);

  ChannelReport zero = validate_channel(Mat::Zero(4, 4), SystemPair{2, 2});
  CHECK(!zero.pass);
  CHECK(zero.tp_err == doctest::Approx(1.0));

  ChannelReport neg =
      validate_channel(phi_plus(2) - 0.1 * Mat::Identity(4, 4), SystemPair{2, 2});
  CHECK(!neg.pass);
  CHECK(neg.min_eig == doctest::Approx(-0.1));
}

TEST_CASE("purify") {
  Rng rng(31);

  SUBCASE("pure state") {
    Mat v = rng.gaussian_complex(3, 1);
    v /= v.norm();
    Mat rho = v * v.adjoint();
    Purification p = purify(rho);
    CHECK(p.env_dim == 1);
    Complex overlap = (v.adjoint() * p.psi.head(3))(0, 0);
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-10);
  }

  SUBCASE("maximally mixed qubit") {
    Purification p = purify(Mat::Identity(2, 2) / 2.0);
    CHECK(p.env_dim == 2);
    Mat psi = p.psi * p.psi.adjoint();
    Mat marg = partial_trace(psi, {2, 2}, {0});
    CHECK(max_abs(marg - Mat::Identity(2, 2) / 2.0) < 1e-12);
  }

  SUBCASE("rank-3 state on dim 4") {
    Mat rho = rng.random_density_rank(4, 3);
    Purification p = purify(rho);
    CHECK(p.env_dim == 3);
    Mat psi = p.psi * p.psi.adjoint();
    Mat marg = partial_trace(psi, {4, 3}, {0});
    CHECK(max_abs(marg - rho) < 1e-8);
  }
}

TEST_CASE("random_channel determinism and validity") {
  ChannelChoi a = random_channel(42, {2, 2}, 4);
  ChannelChoi b = random_channel(42, {2, 2}, 4);
  CHECK(max_abs(a.J - b.J) == 0.0);
  CHECK(validate_channel(a).pass);

  // env_dim = 1 gives a unitary channel: J is rank one on [A0 A1]
  ChannelChoi u = random_channel(43, {2, 2}, 1);
  Eigen::SelfAdjointEigenSolver<Mat> es(u.J);
  int rank = (es.eigenvalues().array() > 1e-9).count();
  CHECK(rank == 1);
  CHECK(validate_channel(u).pass);
}

TEST_CASE("random channels agree with their Stinespring evaluation") {
  for (std::uint64_t seed : {7u, 8u}) {
    SystemPair sys{2, 2};
    int env = 3;
    Rng vr(seed);
    // rebuild the same isometry the generator uses
    Mat v = vr.haar_isometry(sys.out * env, sys.in);
    ChannelChoi n = random_channel(seed, sys, env);
    Rng rng(seed * 17 + 1);
    for (int t = 0; t < 20; ++t) {
      Mat rho = rng.random_density(2);
      Mat big = v * rho * v.adjoint();  // on [out, env]
      Mat direct = partial_trace(big, {sys.out, env}, {0});
      CHECK(max_abs(apply_channel(n, rho) - direct) < 1e-10);
    }
  }
}

TEST_CASE("isometry left inverse") {
  SUBCASE("unitary case") {
    Rng rng(51);
    Mat u = rng.haar_unitary(3);
    Mat tau1 = rng.random_density(3), tau2 = rng.random_density(3);
    ChannelChoi inv1 = isometry_left_inverse(u, tau1);
    ChannelChoi inv2 = isometry_left_inverse(u, tau2);
    CHECK(max_abs(inv1.J - inv2.J) < 1e-12);  // tau irrelevant
    ChannelChoi round = compose(inv1, isometry_channel(u));
    CHECK(max_abs(round.J - identity_channel(3).J) < 1e-10);
  }

  SUBCASE("proper embedding") {
    Rng rng(52);
    Mat v = rng.haar_isometry(4, 2);
    Mat tau = Mat::Identity(2, 2) / 2.0;
    ChannelChoi inv = isometry_left_inverse(v, tau);
    CHECK(validate_channel(inv).pass);
    ChannelChoi round = compose(inv, isometry_channel(v));
    CHECK(max_abs(round.J - identity_channel(2).J) < 1e-10);

    // distinct tau give distinct channels, same left-inverse property
    Mat tau2 = rng.random_density(2);
    ChannelChoi inv2 = isometry_left_inverse(v, tau2);
    CHECK(max_abs(inv2.J - inv.J) > 1e-3);
    ChannelChoi round2 = compose(inv2, isometry_channel(v));
    CHECK(max_abs(round2.J - identity_channel(2).J) < 1e-10);
  }

  SUBCASE("rejects non-isometries") {
    Mat bad = Mat::Ones(3, 2);
    CHECK_THROWS_AS(isometry_left_inverse(bad, Mat::Identity(2, 2) / 2.0), Error);
  }
}

TEST_CASE("purify respects partial_trace round trip on channels") {
  ChannelChoi n = random_channel(77, {2, 2}, 2);
  Purification p = purify(n.J);
  Mat psi = p.psi * p.psi.adjoint();
  Mat marg = partial_trace(psi, {4, p.env_dim}, {0});
  CHECK(max_abs(marg - n.J) < 1e-8);
}

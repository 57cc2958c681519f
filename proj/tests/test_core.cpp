#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "sqcat/fock.hpp"

using namespace sqcat;
using cd = std::complex<double>;

TEST_SUITE("mode_layout") {
  TEST_CASE("row-major indexing with the last mode fastest") {
    const ModeLayout l{{"1", 2}, {"2", 3}, {"A", 1}};
    CHECK(l.dimension() == 3 * 4 * 2);
    CHECK(l.stride(0) == 8);
    CHECK(l.stride(1) == 2);
    CHECK(l.stride(2) == 1);
    const int occ[] = {2, 1, 1};
    CHECK(l.index(occ) == 2 * 8 + 1 * 2 + 1);
  }

  TEST_CASE("index and occupation are inverse bijections") {
    const ModeLayout l{{"a", 3}, {"b", 0}, {"c", 4}};
    for (std::size_t i = 0; i < l.dimension(); ++i) {
      const auto occ = l.occupation(i);
      CHECK(l.index(occ) == i);
    }
  }

  TEST_CASE("invalid layouts and lookups are rejected") {
    CHECK_THROWS_AS(ModeLayout({{"a", 2}, {"a", 3}}), LayoutError);
    CHECK_THROWS_AS(ModeLayout({{"a", -1}}), std::invalid_argument);
    const ModeLayout l{{"a", 2}};
    CHECK_THROWS_AS(l.position("zz"), LayoutError);
    const int bad[] = {3};
    CHECK_THROWS_AS(l.index(bad), std::out_of_range);
  }

  TEST_CASE("without, concat and with_cutoff") {
    const ModeLayout l{{"1", 1}, {"2", 2}, {"3", 3}};
    const std::size_t drop[] = {0, 2};
    CHECK(l.without(drop) == ModeLayout{{"2", 2}});
    CHECK(l.concat(ModeLayout::single("A", 5)).size() == 4);
    CHECK(l.with_cutoff("2", 7).cutoff(1) == 7);
    CHECK(l.describe() == "[1:1, 2:2, 3:3]");
  }
}

TEST_SUITE("states") {
  TEST_CASE("zero squeezing is the vacuum") {
    const auto s = squeezed_vacuum(0.0, 0.0, 10);
    CHECK(std::abs(s[0] - cd(1)) < 1e-15);
    CHECK(s.amplitudes().tail(10).norm() == 0.0);
  }

  TEST_CASE("squeezed vacuum matches the exponentiated generator") {
    for (double r : {0.1, 0.5, 1.0}) {
      const auto s = squeezed_vacuum(r, 0.0, 40);
      const auto ref = oracle::squeezed_by_expm(r, 40);
      CHECK((s.amplitudes() - ref).cwiseAbs().maxCoeff() < 1e-10);
    }
    const auto s = squeezed_vacuum(0.5, 0.0, 40);
    CHECK(std::abs(s[2] / s[0] - cd(-std::tanh(0.5) / std::sqrt(2.0), 0)) < 1e-12);
  }

  TEST_CASE("squeezed vacuum phase follows -e^{i phi} tanh r") {
    const double r = 0.4, phi = 0.7;
    const auto s = squeezed_vacuum(r, phi, 30);
    const auto ref = oracle::squeeze(std::polar(r, phi), 100).col(0).head(31);
    CHECK((s.amplitudes() - ref / ref.norm()).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("|4>/|0> ratio of the squeezed vacuum") {
    for (double r : {0.3, 0.7}) {
      const auto s = squeezed_vacuum(r, 0.0, 20);
      const double t = std::tanh(r);
      CHECK(std::abs(s[4] / s[0] - cd(std::sqrt(3.0) / (2 * std::sqrt(2.0)) * t * t)) < 1e-12);
    }
  }

  TEST_CASE("parity support: odd amplitudes of |r> vanish, |r;+> on 4k, |r;-> on 4k+2") {
    const auto s = squeezed_vacuum(0.8, 0.3, 41);
    const auto plus = squeezed_cat(0.8, Sign::plus, 41);
    const auto minus = squeezed_cat(0.8, Sign::minus, 41);
    for (int n = 0; n <= 41; ++n) {
      if (n % 2) CHECK(s[n] == cd(0));
      if (n % 4 != 0) CHECK(std::abs(plus[n]) < 1e-16);
      if (n % 4 != 2) CHECK(std::abs(minus[n]) < 1e-16);
    }
    CHECK(std::abs(plus[4]) > 0.01);
    CHECK(std::abs(minus[2]) > 0.1);
  }

  TEST_CASE("squeezed cats equal |r> +- |-r> built by hand") {
    for (Sign sign : {Sign::plus, Sign::minus}) {
      const auto cat = squeezed_cat(0.6, sign, 40);
      const auto a = squeezed_vacuum(0.6, 0.0, 40);
      const auto b = squeezed_vacuum(-0.6, 0.0, 40);
      const auto hand = combine<double>(1.0, a, sign == Sign::plus ? 1.0 : -1.0, b).normalized();
      CHECK(std::abs(overlap(hand, cat)) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(cat.is_normalized());
    }
    CHECK_THROWS_AS(squeezed_cat(0.0, Sign::minus, 10), std::invalid_argument);
  }

  TEST_CASE("overlap <r|-r> closed form") {
    for (double r = 0.1; r < 1.55; r += 0.2) {
      const int cutoff = r <= 0.75 ? 40 : 160;
      const auto a = squeezed_vacuum(r, 0.0, cutoff);
      const auto b = squeezed_vacuum(-r, 0.0, cutoff);
      CAPTURE(r);
      CHECK(std::abs(overlap(a, b) - cd(oracle::squeezed_overlap(r))) < 1e-8);
    }
  }

  TEST_CASE("overlap <r|-r> at cutoff 40 is limited by truncation above r = 1") {
    for (double r : {0.9, 1.1, 1.3, 1.5}) {
      const auto a = squeezed_vacuum(r, 0.0, 40);
      const auto b = squeezed_vacuum(-r, 0.0, 40);
      const double err = std::abs(overlap(a, b) - cd(oracle::squeezed_overlap(r)));
      CAPTURE(r);
      CHECK(err < 2 * a.discarded_weight() + 1e-12);
    }
  }

  TEST_CASE("coherent states follow the Fock series") {
    const cd alpha(0.8, -1.1);
    const auto c = coherent_state(alpha, 40);
    CHECK((c.amplitudes() - oracle::coherent(alpha, 40)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(c[0] - std::exp(-std::norm(alpha) / 2)) < 1e-12);
  }

  TEST_CASE("two-mode squeezed vacuum") {
    const auto v = two_mode_squeezed_vacuum(0.0, 6);
    CHECK(std::abs(v.amplitude({0, 0}) - cd(1)) < 1e-15);
    const auto t = two_mode_squeezed_vacuum(0.5, 5);
    const double norm = std::sqrt((1 - std::pow(0.25, 6)) / 0.75);
    for (int n = 0; n <= 5; ++n) CHECK(std::abs(t.amplitude({n, n}) - cd(std::pow(0.5, n) / norm)) < 1e-14);
    CHECK(t.discarded_weight() == doctest::Approx(std::pow(0.25, 6)).epsilon(1e-9));
    CHECK_THROWS_AS(two_mode_squeezed_vacuum(1.0, 4), std::invalid_argument);
  }

  TEST_CASE("leakage warning trips above 1e-6") {
    CHECK_FALSE(leakage_warning(squeezed_vacuum(0.5, 0.0, 40)));
    CHECK(leakage_warning(squeezed_vacuum(1.5, 0.0, 40)));
  }

  TEST_CASE("non-finite inputs are rejected") {
    CHECK_THROWS_AS(squeezed_vacuum(std::nan(""), 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(FockVector(ModeLayout::single("a", 1), Eigen::VectorXcd::Constant(2, cd(INFINITY, 0))),
                    std::invalid_argument);
    CHECK_THROWS_AS(FockVector(ModeLayout::single("a", 1), Eigen::VectorXcd::Zero(3)), LayoutError);
  }

  TEST_CASE("tensor, resize and cutoff weight") {
    const auto a = coherent_state(cd(0.5, 0), 6, "x");
    const auto b = squeezed_vacuum(0.3, 0.0, 4, "y");
    const auto ab = tensor(a, b);
    CHECK(ab.layout() == ModeLayout{{"x", 6}, {"y", 4}});
    CHECK(ab.amplitude({2, 2}) == a[2] * b[2]);
    const auto small = resize_cutoff(a, 2);
    CHECK(small.discarded_weight() == doctest::Approx(a.amplitudes().tail(4).squaredNorm()));
    CHECK(a.cutoff_weight() == doctest::Approx(std::norm(a[6])));
  }

  TEST_CASE("long double instantiation agrees with double") {
    const auto sl = squeezed_vacuum<long double>(0.7L, 0.0L, 30);
    const auto sd = squeezed_vacuum(0.7, 0.0, 30);
    for (int n = 0; n <= 30; ++n) {
      CHECK(std::abs(std::complex<double>(sl[n]) - sd[n]) < 1e-14);
    }
    const auto d = displacement_matrix<long double>({0.3L, 0.1L}, 30);
    CHECK(d.unitarity_error() < 1e-15L);
    const auto moved = apply(d, sl.relabeled(ModeLayout::single("a", 30)).with_discarded_weight(0));
    CHECK(std::abs(moved.norm_squared() - 1.0L) < 1e-15L);
  }
}

TEST_SUITE("operators") {
  TEST_CASE("displacement: zero is identity, exact matches expm, inverse property") {
    CHECK(displacement_matrix(cd(0), 8).matrix().isIdentity(1e-15));
    CHECK(displacement_matrix(cd(0), 8, DisplacementMode::series6).matrix().isIdentity(1e-15));
    const cd alpha(0.7, -0.4);
    const auto d = displacement_matrix(alpha, 30);
    CHECK((d.matrix() - oracle::displacement(alpha, 30)).cwiseAbs().maxCoeff() < 1e-10);
    for (double m : {0.2, 0.6, 1.0}) {
      const cd al = std::polar(m, 1.1);
      const auto prod = displacement_matrix(al, 25) * displacement_matrix(-al, 25);
      CHECK((prod.matrix() - Eigen::MatrixXcd::Identity(26, 26)).cwiseAbs().maxCoeff() < 1e-9);
    }
  }

  TEST_CASE("exact displacement on vacuum gives the coherent amplitude") {
    const cd alpha(0.9, 0.3);
    const auto d = displacement_matrix(alpha, 60);
    CHECK(std::abs(d.matrix()(0, 0) - std::exp(-std::norm(alpha) / 2)) < 1e-12);
    const Eigen::VectorXcd col = d.matrix().col(0).head(20);
    CHECK((col - oracle::coherent(alpha, 19)).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("series6 is the six-term Taylor polynomial") {
    const cd alpha(0.3, 0.2);
    const auto a = oracle::lowering(8);
    const Eigen::MatrixXcd g = alpha * a.adjoint() - std::conj(alpha) * a;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(9, 9), term = sum;
    for (int n = 1; n <= 5; ++n) {
      term = term * g / double(n);
      sum += term;
    }
    const auto d = displacement_matrix(alpha, 8, DisplacementMode::series6);
    CHECK((d.matrix() - sum).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_FALSE(d.unitary());
  }

  TEST_CASE("every exact-mode operator is unitary") {
    CHECK(displacement_matrix(cd(1.2, 0.5), 30).unitarity_error() < 1e-9);
    CHECK(squeezer_matrix(0.9, 0.4, 30).unitarity_error() < 1e-9);
    CHECK(two_mode_squeezer(0.6, 10, 10).unitarity_error() < 1e-9);
    CHECK(phase_rotation(0.8, 12).unitarity_error() < 1e-12);
    for (int j : {1, 2, 3}) {
      Matrix2 m;
      const double s3 = std::sqrt(3.0);
      if (j == 1) m << s3 / 2, -0.5, 0.5, s3 / 2;
      if (j == 2) m << std::sqrt(2.0 / 3), -1 / s3, 1 / s3, std::sqrt(2.0 / 3);
      if (j == 3) m << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
      CHECK(beam_splitter_matrix(m, 6, 6).unitarity_error() < 1e-12);
    }
  }

  TEST_CASE("squeezers: expm oracle and S(s)S(-s) = I") {
    CHECK((squeezer_matrix(0.5, 0.0, 20).matrix() - oracle::squeeze(cd(0.5), 20)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(two_mode_squeezer(0.0, 5, 5).matrix().isIdentity(1e-15));
    const auto prod = two_mode_squeezer(0.3, 20, 20) * two_mode_squeezer(-0.3, 20, 20);
    CHECK((prod.matrix() - Eigen::MatrixXcd::Identity(441, 441)).cwiseAbs().maxCoeff() < 1e-8);
    const auto s = two_mode_squeezer(0.4, 8, 8);
    CHECK((s.matrix() - oracle::two_mode_squeeze(0.4, 8)).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("S_4A(-s)|00> is the two-mode squeezed vacuum") {
    const double s = 0.35;
    const int k = 40;
    const FockVector vac(ModeLayout{{"4", k}, {"A", k}});
    const auto out = apply(two_mode_squeezer(-s, k, k, "4", "A"), vac);
    const auto ref = two_mode_squeezed_vacuum(std::tanh(s), k, "4", "A");
    CHECK((out.amplitudes() - ref.amplitudes()).cwiseAbs().maxCoeff() < 1e-9);
  }

  TEST_CASE("beam splitter sectors match the exponentiated rotation generator") {
    const int k = 6;
    for (double theta : {std::numbers::pi / 6, std::atan(1 / std::sqrt(2.0)), std::numbers::pi / 4, 1.0}) {
      Matrix2 m;
      m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
      const auto b = beam_splitter_matrix(m, k, k);
      const auto ref = oracle::rotation_splitter(theta, k);
      for (auto i : b.retained())
        for (auto j : b.retained()) CHECK(std::abs(b.matrix()(i, j) - ref(i, j)) < 1e-10);
    }
  }

  TEST_CASE("beam splitter examples") {
    Matrix2 id = Matrix2::Identity();
    CHECK(beam_splitter_matrix(id, 4, 4).matrix().isIdentity(1e-15));
    Matrix2 b34;
    b34 << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    const auto one = FockVector::basis_state(ModeLayout{{"3", 2}, {"4", 2}}, {1, 0});
    const auto out = apply(beam_splitter_matrix(b34, 2, 2, "3", "4"), one);
    CHECK(std::norm(out.amplitude({1, 0})) == doctest::Approx(0.5));
    CHECK(std::norm(out.amplitude({0, 1})) == doctest::Approx(0.5));
    const FockVector vac(ModeLayout{{"3", 2}, {"4", 2}});
    CHECK(std::abs(apply(beam_splitter_matrix(b34, 2, 2, "3", "4"), vac)[0] - cd(1)) < 1e-15);

    Matrix2 b14;
    b14 << std::sqrt(3.0) / 2, -0.5, 0.5, std::sqrt(3.0) / 2;
    const auto photon4 = FockVector::basis_state(ModeLayout{{"1", 1}, {"4", 1}}, {0, 1});
    const auto split = apply(beam_splitter_matrix(b14, 1, 1, "1", "4"), photon4);
    CHECK(split.amplitude({1, 0}).real() == doctest::Approx(0.5));
    CHECK(split.amplitude({0, 1}).real() == doctest::Approx(std::sqrt(3.0) / 2));

    Matrix2 bad;
    bad << 1, 0.1, 0, 1;
    CHECK_THROWS_AS(beam_splitter_matrix(bad, 2, 2), std::invalid_argument);
  }

  TEST_CASE("sector-wise splitter equals the dense operator") {
    Matrix2 m;
    m << 0.6, 0.8, -0.8, 0.6;
    const auto in = tensor(coherent_state(cd(0.7, 0.2), 7, "a"), squeezed_vacuum(0.4, 0.0, 7, "b"));
    const auto dense = apply(beam_splitter_matrix(m, 7, 7), in);
    const auto sector = apply_beam_splitter(in, m, "a", "b", 7, 7);
    CHECK((dense.amplitudes() - sector.amplitudes()).cwiseAbs().maxCoeff() < 1e-13);
  }

  TEST_CASE("apply: identity, composition, norm preservation, layout errors") {
    const auto s = tensor(squeezed_vacuum(0.3, 0.0, 10, "a"), coherent_state(cd(0.4, 0.1), 10, "b"));
    const OperatorMatrix id(ModeLayout::single("a", 10), Eigen::MatrixXcd::Identity(11, 11), "I");
    CHECK((apply(id, s).amplitudes() - s.amplitudes()).norm() < 1e-15);

    const auto da = displacement_matrix(cd(0.2, 0.1), 10, DisplacementMode::exact, "a");
    const auto sa = squeezer_matrix(0.2, 0.0, 10, "a");
    const auto left = apply(da * sa, s);
    const auto right = apply(da, apply(sa, s));
    CHECK((left.amplitudes() - right.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(apply(squeezer_matrix(0.5, 0.0, 10, "b"), s).norm_squared() - s.norm_squared()) < 1e-9);
    CHECK_THROWS_AS(apply(displacement_matrix(cd(0.1), 10, DisplacementMode::exact, "z"), s), LayoutError);
    CHECK_THROWS_AS(apply(displacement_matrix(cd(0.1), 9, DisplacementMode::exact, "a"), s), LayoutError);
  }

  TEST_CASE("overlap requires identical layouts") {
    const auto a = squeezed_vacuum(0.3, 0.0, 10);
    CHECK(std::abs(overlap(a, a) - cd(1)) < 1e-14);
    CHECK_THROWS_AS(overlap(a, squeezed_vacuum(0.3, 0.0, 11)), LayoutError);
    CHECK(std::abs(overlap(FockVector::basis_state(ModeLayout::single("a", 2), {0}),
                           FockVector::basis_state(ModeLayout::single("a", 2), {1})))
          == 0.0);
  }
}

TEST_SUITE("measurement") {
  TEST_CASE("Born rule examples") {
    const ModeLayout l{{"1", 1}, {"2", 1}};
    const FockVector vac(l);
    const auto none = project_fock(vac, {{"1", 1}});
    CHECK(none.probability == 0.0);
    CHECK_FALSE(none.possible());
    CHECK_THROWS_AS(none.heralded(), ImpossibleOutcome);

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
    amps(l.index(std::vector<int>{1, 0})) = 1 / std::sqrt(2.0);
    amps(l.index(std::vector<int>{0, 1})) = 1 / std::sqrt(2.0);
    const auto r = project_fock(FockVector(l, amps), {{"1", 1}});
    CHECK(r.probability == doctest::Approx(0.5));
    CHECK(std::abs(r.heralded()[0] - cd(1)) < 1e-15);
    CHECK(r.heralded().layout() == ModeLayout::single("2", 1));
  }

  TEST_CASE("errors: unknown mode, outcome beyond cutoff") {
    const FockVector vac(ModeLayout{{"1", 2}});
    CHECK_THROWS_AS(project_fock(vac, {{"x", 0}}), LayoutError);
    CHECK_THROWS_AS(project_fock(vac, {{"1", 3}}), std::out_of_range);
  }

  TEST_CASE("heralding completeness over every outcome of a mode") {
    const int k = 8;
    Matrix2 m;
    m << 0.8, -0.6, 0.6, 0.8;
    const auto in = tensor(squeezed_vacuum(0.3, 0.0, k, "a"), coherent_state(cd(0.5, 0.2), k, "b"));
    const auto mixed = apply(beam_splitter_matrix(m, k, k), in);
    for (const char* mode : {"a", "b"}) {
      double total = 0;
      for (int n = 0; n <= k; ++n) total += project_fock(mixed, {{mode, n}}).probability;
      CHECK(total == doctest::Approx(mixed.norm_squared()).epsilon(1e-12));
    }
    const auto tmsv = two_mode_squeezed_vacuum(0.4, 30);
    double total = 0;
    for (int n = 0; n <= 30; ++n) total += project_fock(tmsv, {{"a", n}}).probability;
    CHECK(std::abs(total - 1) < 1e-9);
  }

  TEST_CASE("project_onto a probe state") {
    const auto s = tensor(squeezed_vacuum(0.3, 0.0, 6, "a"), coherent_state(cd(0.8, 0), 12, "p"));
    const auto r = project_onto(s, "p", coherent_state(cd(0.8, 0), 12, "p"));
    CHECK(r.probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(overlap(r.heralded(), squeezed_vacuum(0.3, 0.0, 6, "a"))) == doctest::Approx(1.0));
  }

  TEST_CASE("truncation monotonicity: raising cutoffs moves P by less than the leakage") {
    Matrix2 m;
    m << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    auto prob = [&](int k) {
      const auto in = tensor(squeezed_vacuum(0.9, 0.0, k, "a"), FockVector(ModeLayout::single("b", k)));
      const auto out = apply_beam_splitter(in, m, "a", "b", k, k);
      return std::pair{project_fock(out, {{"b", 1}}).probability, out.discarded_weight()};
    };
    const auto [p10, leak10] = prob(10);
    const auto [p15, leak15] = prob(15);
    CHECK(std::abs(p15 - p10) < leak10);
    CHECK(leak15 < leak10);
  }
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "heraldkit/herald.hpp"
#include "heraldkit/interferometer.hpp"
#include "heraldkit/oracle.hpp"
#include "heraldkit/sources.hpp"

using namespace heraldkit;

namespace {

Matrix random_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cdouble{g(rng), g(rng)};
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    // fix the phase of the diagonal of R so the distribution is Haar-like
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        cdouble d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

}  // namespace

TEST_CASE("beamsplitter_r matrix values") {
    auto r1 = beamsplitter_r(1.0);
    CHECK(r1(0, 0) == cdouble{1, 0});
    CHECK(r1(1, 1) == cdouble{-1, 0});
    CHECK(r1(0, 1) == cdouble{0, 0});

    auto h = beamsplitter_r(0.5);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK_THAT(h(0, 0).real(), Catch::Matchers::WithinAbs(s, 1e-15));
    CHECK_THAT(h(1, 1).real(), Catch::Matchers::WithinAbs(-s, 1e-15));

    CHECK_THROWS_AS(beamsplitter_r(1.5), DomainError);
    CHECK_THROWS_AS(beamsplitter_r(-0.1), DomainError);
}

TEST_CASE("beamsplitter_theta wrapper") {
    auto u = beamsplitter_theta(0.0);
    CHECK_THAT(std::abs(u(0, 0)), Catch::Matchers::WithinAbs(1.0, 1e-15));
    auto v = beamsplitter_theta(M_PI / 4.0);  // a = 1/2
    CHECK_THAT(std::abs(v(0, 1)),
               Catch::Matchers::WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
}

TEST_CASE("R is an involution: R(a) R(a) = identity") {
    for (double a : {0.0, 0.17, 0.5, 0.83, 1.0}) {
        Circuit c;
        c.modes = 2;
        c.elements.push_back(CircuitElement::beamsplitter(0, 1, a));
        c.elements.push_back(CircuitElement::beamsplitter(0, 1, a));
        auto u = compose(c);
        CHECK(unitarity_deviation(u.matrix()) < 1e-12);
        CHECK((u.matrix() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("compose: empty circuit and single element") {
    Circuit empty;
    empty.modes = 3;
    CHECK((compose(empty).matrix() - Matrix::Identity(3, 3)).norm() == 0.0);

    Circuit one;
    one.modes = 2;
    one.elements.push_back(CircuitElement::beamsplitter(0, 1, 0.5));
    CHECK((compose(one).matrix() - beamsplitter_r(0.5).matrix()).norm() <
          1e-15);
}

TEST_CASE("ModeUnitary rejects non-unitary input") {
    Matrix bad(2, 2);
    bad << 1.0, 0.0, 0.0, 1.0 + 1e-6;
    CHECK_THROWS_AS(ModeUnitary(bad), ValidationError);
    CHECK_NOTHROW(ModeUnitary(bad, 1e-5));
}

TEST_CASE("permanent: small known values") {
    CHECK(permanent(Matrix::Identity(3, 3)) == cdouble{1.0, 0.0});
    Matrix ones = Matrix::Ones(2, 2);
    CHECK_THAT(permanent(ones).real(), Catch::Matchers::WithinAbs(2.0, 1e-15));
    // 2x2 [[a,b],[c,d]] -> ad + bc
    Matrix m(2, 2);
    m << cdouble{1, 1}, cdouble{2, 0}, cdouble{0, 3}, cdouble{1, -1};
    auto p = permanent(m);
    CHECK_THAT(p.real(), Catch::Matchers::WithinAbs(2.0, 1e-14));
    CHECK_THAT(p.imag(), Catch::Matchers::WithinAbs(6.0, 1e-14));
    CHECK(permanent(Matrix(0, 0)) == cdouble{1.0, 0.0});
}

TEST_CASE("permanent resource limit") {
    CHECK_THROWS_AS(permanent(Matrix::Identity(8, 8), 7), ResourceLimitError);
}

TEST_CASE("Ryser matches the naive permanent up to 7x7") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 1; n <= 7; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            Matrix m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = cdouble{u(rng), u(rng)};
            auto fast = permanent(m);
            auto slow = oracle::naive_permanent(m);
            CHECK(std::abs(fast - slow) < 1e-10);
        }
    }
}

TEST_CASE("permanent invariant under row/column permutations") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 5;
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cdouble{u(rng), u(rng)};
    std::vector<int> pr{3, 1, 4, 0, 2}, pc{2, 0, 1, 4, 3};
    Matrix pm(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pm(i, j) = m(pr[i], pc[j]);
    CHECK(std::abs(permanent(m) - permanent(pm)) < 1e-12);
}

TEST_CASE("scattering amplitude: HOM and trivial cases") {
    auto h = beamsplitter_r(0.5);
    auto amp = scattering_amplitude(FockState{1, 1}, FockState{2, 0}, h);
    CHECK_THAT(amp.real(),
               Catch::Matchers::WithinAbs(1.0 / std::sqrt(2.0), 1e-14));
    amp = scattering_amplitude(FockState{1, 1}, FockState{0, 2}, h);
    CHECK_THAT(amp.real(),
               Catch::Matchers::WithinAbs(-1.0 / std::sqrt(2.0), 1e-14));
    // HOM null
    amp = scattering_amplitude(FockState{1, 1}, FockState{1, 1}, h);
    CHECK(std::abs(amp) < 1e-15);
    // vacuum -> vacuum under any U
    CHECK(scattering_amplitude(FockState{0, 0}, FockState{0, 0}, h) ==
          cdouble{1.0, 0.0});
    // photon number mismatch is exactly zero
    CHECK(scattering_amplitude(FockState{1, 0}, FockState{2, 0}, h) ==
          cdouble{0.0, 0.0});
}

TEST_CASE("Fock-space unitarity: 3 photons in 3 modes") {
    std::mt19937_64 rng(7);
    ModeUnitary u(random_unitary(3, rng));
    FockState in{1, 1, 1};
    double total = 0.0;
    for_each_pattern(3, 3, [&](const std::vector<int>& pat) {
        total += std::norm(scattering_amplitude(in, FockState(pat), u));
    });
    CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("adjoint symmetry of scattering amplitudes") {
    std::mt19937_64 rng(21);
    ModeUnitary u(random_unitary(4, rng));
    auto ua = u.adjoint();
    auto basis = enumerate_basis(4, 3);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
        const auto& in = basis[pick(rng)];
        const auto& out = basis[pick(rng)];
        auto lhs = scattering_amplitude(in, out, u);
        auto rhs = std::conj(scattering_amplitude(out, in, ua));
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("apply: identity, photon-number support, norm") {
    auto s = tmss(SqueezeParams::from_lambda(0.6), {6, 1e-12});
    auto id = ModeUnitary::identity(2);
    auto t = apply(id, s);
    CHECK_THAT(fidelity(t.normalized(), s.normalized()),
               Catch::Matchers::WithinAbs(1.0, 1e-12));

    std::mt19937_64 rng(5);
    ModeUnitary u(random_unitary(2, rng));
    auto w = apply(u, s);
    CHECK(w.photon_number_support() == s.photon_number_support());
    CHECK_THAT(w.norm2(), Catch::Matchers::WithinAbs(s.norm2(), 1e-10));
}

TEST_CASE("embedded element acts as identity elsewhere") {
    auto h = beamsplitter_r(0.5).embedded({1, 2}, 4);
    CHECK(h(0, 0) == cdouble{1, 0});
    CHECK(h(3, 3) == cdouble{1, 0});
    CHECK_THAT(h(1, 2).real(),
               Catch::Matchers::WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
}

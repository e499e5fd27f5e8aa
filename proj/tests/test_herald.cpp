#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "heraldkit/herald.hpp"
#include "heraldkit/interferometer.hpp"
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
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
}

}  // namespace

TEST_CASE("herald: direct projection arithmetic") {
    // normalized |0000> + sqrt(eps) |1111>, detect modes 2,3 at (1,1)
    const double eps = 0.04;
    StateVector s(4);
    const double n = 1.0 / std::sqrt(1.0 + eps);
    s.add_term(FockState{0, 0, 0, 0}, n);
    s.add_term(FockState{1, 1, 1, 1}, n * std::sqrt(eps));

    auto r = herald(s, HeraldPattern{{2, 3}, {1, 1}});
    CHECK_THAT(r.success_probability,
               Catch::Matchers::WithinAbs(eps / (1.0 + eps), 1e-14));
    CHECK_THAT(std::abs(r.conditional_state.amplitude(FockState{1, 1})),
               Catch::Matchers::WithinAbs(1.0, 1e-14));
}

TEST_CASE("herald: impossible pattern gives structured empty result") {
    auto s = tmss(SqueezeParams::from_lambda(0.5), {6, 1e-12});
    auto r = herald(s, HeraldPattern{{1}, {5}});
    CHECK(r.success_probability < 1e-12);
    CHECK(r.amplitude_table.empty());
    CHECK(r.conditional_state.empty());
}

TEST_CASE("herald: pattern validation") {
    auto s = vacuum(3);
    CHECK_THROWS_AS(herald(s, HeraldPattern{{0, 0}, {1, 1}}), DomainError);
    CHECK_THROWS_AS(herald(s, HeraldPattern{{4}, {1}}), DomainError);
    CHECK_THROWS_AS(herald(s, HeraldPattern{{0, 1, 2}, {0, 0, 0}}),
                    DomainError);
}

TEST_CASE("herald patterns are complete: probabilities sum to kept norm") {
    std::mt19937_64 rng(17);
    auto s = tensor_product(tmss(SqueezeParams::from_lambda(0.55), {6, 1e-15}),
                            fock(FockState{1}));
    ModeUnitary u(random_unitary(3, rng));
    auto w = apply(u, s);

    double total = 0.0;
    for (int k = 0; k <= w.cutoff().max_total_photons; ++k) {
        for_each_pattern(k, 2, [&](const std::vector<int>& pat) {
            auto r = herald(w, HeraldPattern{{0, 1}, {pat[0], pat[1]}});
            total += r.success_probability;
        });
    }
    CHECK_THAT(total, Catch::Matchers::WithinAbs(w.norm2(), 1e-10));
    CHECK_THAT(total + s.truncation_deficit(),
               Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("herald commutes with interferometry on undetected modes") {
    std::mt19937_64 rng(31);
    auto s = tensor_product(tmss(SqueezeParams::from_lambda(0.5), {6, 1e-15}),
                            tmss(SqueezeParams::from_lambda(0.4), {6, 1e-15}));
    ModeUnitary mix(random_unitary(4, rng));
    auto w = apply(mix, s);

    HeraldPattern pat{{1, 2}, {1, 1}};
    ModeUnitary v(random_unitary(2, rng));

    // herald then rotate the two remaining modes
    auto r1 = herald(w, pat);
    auto path_a = apply(v, r1.conditional_state);

    // rotate modes (0,3) in place then herald
    auto big = v.embedded({0, 3}, 4);
    auto r2 = herald(apply(big, w), pat);

    CHECK_THAT(r2.success_probability,
               Catch::Matchers::WithinAbs(r1.success_probability, 1e-12));
    CHECK_THAT(fidelity(r2.conditional_state, path_a),
               Catch::Matchers::WithinAbs(1.0, 1e-10));
}

TEST_CASE("idler-only interference cannot split photon-number support") {
    // any number of TMSSs, any unitary on idlers only, full idler detection:
    // the conditional signal state has single-valued total photon number
    std::mt19937_64 rng(47);
    for (int k = 1; k <= 3; ++k) {
        const int draws = k == 3 ? 10 : 25;
        for (int trial = 0; trial < draws; ++trial) {
            CutoffPolicy pol{6, 1e-14};
            StateVector s = tmss(SqueezeParams::from_lambda(0.6), pol);
            for (int extra = 1; extra < k; ++extra)
                s = tensor_product(
                    s, tmss(SqueezeParams::from_lambda(0.45), pol));
            // modes: signal_i = 2i, idler_i = 2i+1
            std::vector<int> idlers;
            for (int i = 0; i < k; ++i) idlers.push_back(2 * i + 1);
            ModeUnitary u(random_unitary(k, rng));
            auto w = apply(u.embedded(idlers, 2 * k), s);

            for (int t = 0; t <= pol.max_total_photons; ++t) {
                for_each_pattern(t, k, [&](const std::vector<int>& pat) {
                    auto r = herald(w, HeraldPattern{idlers, pat});
                    if (r.success_probability > 1e-12)
                        CHECK(r.conditional_state.photon_number_support()
                                  .size() == 1);
                });
            }
        }
    }
}

TEST_CASE("fidelity basics") {
    auto a = fock(FockState{1, 0});
    CHECK_THAT(fidelity(a, a), Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK(fidelity(a, fock(FockState{0, 1})) == 0.0);
    CHECK_THROWS_AS(fidelity(a, vacuum(3)), DimensionMismatch);
}

TEST_CASE("epsilon_ratio") {
    StateVector s(3);
    s.add_term(FockState{0, 0, 1}, std::sqrt(0.5));
    s.add_term(FockState{1, 1, 1}, std::sqrt(0.5));
    auto r = herald(s, HeraldPattern{{2}, {1}});
    CHECK_THAT(epsilon_ratio(r, FockState{1, 1}),
               Catch::Matchers::WithinAbs(0.5, 1e-12));

    StateVector t(2);
    t.add_term(FockState{1, 0}, 0.7);
    auto rt = herald(t, HeraldPattern{{1}, {0}});
    CHECK_THAT(epsilon_ratio(rt, FockState{1}),
               Catch::Matchers::WithinAbs(1.0, 1e-12));

    HeraldResult empty;
    CHECK_THROWS_AS(epsilon_ratio(empty, FockState{0}), DomainError);
}

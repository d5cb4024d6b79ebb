#include "airybeam/beams.hpp"
#include "airybeam/channels.hpp"
#include "airybeam/errors.hpp"
#include "airybeam/presets.hpp"
#include "airybeam/propagation.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace airybeam;
using testing::lambda28;

namespace
{
    ComplexField launch(const ScenarioConfig &s, const Eigen::VectorXcd &w)
    {
        return embed_aperture(std::span<const cplx>(w.data(), static_cast<std::size_t>(w.size())), s.array, s.grid,
                              s.carrier);
    }
}

TEST_SUITE("beams")
{
    TEST_CASE("traditional focus")
    {
        const Carrier c = testing::carrier28();
        const double lam = lambda28();
        const BeamWeights single = traditional_focus(ArrayGeometry(1, 0.5 * lam), c, {0.0, 10 * lam, ""});
        CHECK(std::abs(single.weights(0) - std::polar(1.0, c.wavenumber() * 10 * lam)) < 1e-12);

        const ArrayGeometry array(64, 0.49 * lam);
        const BeamWeights bore = traditional_focus(array, c, {0.0, 200 * lam, ""});
        CHECK(bore.weights.norm() == doctest::Approx(1.0));
        for (Eigen::Index n = 0; n < 32; ++n)
            CHECK(std::abs(testing::wrap(std::arg(bore.weights(n)) - std::arg(bore.weights(63 - n)))) < 1e-12);

        // Conjugate of the Green's row, up to normalization
        ScenarioConfig s = presets::baseline();
        const auto h = greens_channel(s).entries;
        const BeamWeights w = traditional_focus(s.array, s.carrier, s.users[0]);
        const cplx inner = h.row(0) * w.weights;
        CHECK(std::abs(inner.imag()) < 1e-12 * inner.real());
        CHECK(inner.real() == doctest::Approx(h.row(0).cwiseAbs().sum() / 8.0));
        CHECK_THROWS_AS(traditional_focus(array, c, {0.0, 0.0, ""}), ConfigError);
    }

    TEST_CASE("airy phase profile")
    {
        const Carrier c = testing::carrier28();
        const double lam = lambda28();
        const ArrayGeometry array(64, 0.49 * lam);
        const double k0 = c.wavenumber();

        const AiryParams lens{0.0, 163 * lam, 0.0};
        const auto phase = airy_phase(array, c, lens);
        for (std::size_t n = 0; n < 64; ++n)
        {
            const double x = array.element_x(n);
            CHECK(phase[n] == doctest::Approx(k0 * x * x / (2 * lens.focal)).epsilon(1e-14));
        }

        const AiryParams p{-25.0, 163 * lam, 0.0};
        const auto cubic = airy_phase(array, c, p);
        const double edge = array.element_x(63);
        const double expected = k0 * edge * edge / (2 * p.focal) + (2 * kPi / (3 * lam)) * p.bending * std::pow(edge / p.focal, 3);
        CHECK(std::abs(cubic[63] - expected) < 1e-12 * std::abs(expected));

        const AiryParams tilted{-44.0, 1.5, radians(-2.9)};
        const auto tp = airy_phase(array, c, tilted);
        const double x5 = array.element_x(5);
        const double u = x5 / 1.5;
        CHECK(tp[5] == doctest::Approx(k0 * x5 * x5 / 3.0 - k0 * std::sin(tilted.launch_angle) * x5 +
                                       (2 * kPi / (3 * lam)) * -44.0 * u * u * u)
                           .epsilon(1e-13));

        const BeamWeights w = airy_weights(array, c, p);
        for (Eigen::Index n = 0; n < 64; ++n)
            CHECK(std::abs(w.weights(n)) == doctest::Approx(0.125));
        CHECK(std::holds_alternative<AiryParams>(w.descriptor));

        CHECK_THROWS_AS(airy_weights(array, c, {0.0, 0.0, 0.0}), ArgumentError);
        CHECK_THROWS_AS(airy_weights(array, c, {0.0, 1.0, 2.0}), ArgumentError);
    }

    TEST_CASE("published bending values stay below the sampling limit")
    {
        const Carrier c = testing::carrier28();
        const ArrayGeometry array(64, 0.49 * lambda28());
        for (double b : {-25.0, -44.0})
            CHECK(max_phase_step(array, c, {b, 1.5, 0.0}) < kPi);
    }

    TEST_CASE("bending sign mirrors the beam")
    {
        ScenarioConfig s = presets::baseline();
        const double lam = s.carrier.wavelength();
        const auto plus = airy_weights(s.array, s.carrier, {25.0, 1.75, 0.0}).weights;
        const auto minus = airy_weights(s.array, s.carrier, {-25.0, 1.75, 0.0}).weights;
        const std::vector<double> depths{100 * lam, 200 * lam, 300 * lam};
        const auto a = intensity_map(launch(s, plus), std::nullopt, depths);
        const auto b = intensity_map(launch(s, minus), std::nullopt, depths);
        const std::size_t nx = a.x.size();
        double worst = 0.0;
        for (std::size_t r = 0; r < depths.size(); ++r)
            for (std::size_t col = 1; col < nx; ++col)
                if (a.at(r, col) > -40.0)
                    worst = std::max(worst, std::abs(a.at(r, col) - b.at(r, nx - col)));
        CHECK(worst < 1e-6);
    }

    TEST_CASE("zero bending focuses near the focal depth")
    {
        ScenarioConfig s = presets::baseline();
        const double lam = s.carrier.wavelength();
        const double focal = 163 * lam;
        const auto w = airy_weights(s.array, s.carrier, {0.0, focal, 0.0}).weights;
        std::vector<double> depths;
        for (double z = 40.0; z <= 400.0; z += 4.0)
            depths.push_back(z * lam);
        const auto map = intensity_map(launch(s, w), std::nullopt, depths);
        // Finite Fresnel number pulls the intensity maximum in front of the geometric focus
        const double peak_depth = map.depths[map.peak_row];
        CHECK(peak_depth > 0.4 * focal);
        CHECK(peak_depth < 1.05 * focal);
        CHECK(std::abs(map.x[map.peak_column]) < 1.0 * lam);
    }

    TEST_CASE("codebook strategies")
    {
        const ScenarioConfig base = presets::baseline();
        const Codebook trad = build_codebook(base, strategy::TradAll{});
        CHECK(trad.weights.cols() == 2);
        for (std::size_t k = 0; k < 2; ++k)
            CHECK(std::holds_alternative<TraditionalBeam>(trad.beams[k]));
        CHECK((trad.weights.col(1) - traditional_focus(base.array, base.carrier, base.users[1]).weights).norm() == 0.0);

        const ScenarioConfig mixed = presets::mixed();
        const Codebook geo = build_codebook(mixed, strategy::AiryGeo{});
        for (std::size_t k = 0; k < 2; ++k)
        {
            const auto &p = std::get<AiryParams>(geo.beams[k]);
            CHECK(p.launch_angle == geometric_angle(mixed.users[k]));
            CHECK(p.bending == -25.0);
            CHECK(p.focal == 1.75);
        }

        const Codebook mix = build_codebook(mixed, strategy::Mixed{-44.0, 1.5, radians(-2.9)});
        REQUIRE(std::holds_alternative<AiryParams>(mix.beams[0]));
        CHECK(std::holds_alternative<TraditionalBeam>(mix.beams[1]));
        CHECK(std::get<AiryParams>(mix.beams[0]).launch_angle ==
              doctest::Approx(geometric_angle(mixed.users[0]) + radians(-2.9)));

        CHECK_THROWS_AS(build_codebook(base, strategy::Mixed{}), ConfigError);
        const ScenarioConfig bright = mixed.with_users({mixed.users[1]});
        CHECK_THROWS_AS(build_codebook(bright, strategy::Mixed{}), ConfigError);

        CHECK(strategy_name(strategy::TradAll{}) == "trad_all");
        CHECK(strategy_name(strategy::AiryGeo{}) == "airy_geo");
        CHECK(strategy_name(strategy::Mixed{}) == "mixed");
    }
}

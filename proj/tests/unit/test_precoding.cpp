#include "airybeam/errors.hpp"
#include "airybeam/precoding.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace airybeam;

namespace
{
    ChannelMatrix effective(const Eigen::MatrixXcd &h)
    {
        return {h, ChannelModel::greens_free_space, ChannelKind::effective};
    }

    Eigen::MatrixXcd random_matrix(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols)
    {
        std::normal_distribution<double> normal;
        Eigen::MatrixXcd m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c)
                m(r, c) = cplx(normal(rng), normal(rng));
        return m;
    }

    Eigen::MatrixXcd unit_columns(Eigen::MatrixXcd m)
    {
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            m.col(c).normalize();
        return m;
    }
}

TEST_SUITE("precoding")
{
    TEST_CASE("identity channel")
    {
        const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
        const auto r = rzf_precoder(effective(eye), eye, 1.0, 0.0);
        CHECK(r.alpha == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK((r.baseband - eye / std::sqrt(2.0)).norm() < 1e-15);
        CHECK(r.transmit_power == doctest::Approx(1.0));
        const MetricsRecord m = link_metrics(effective(eye), r, 1e-3);
        CHECK(m.condition_number == doctest::Approx(1.0));
        CHECK(m.equalized);
    }

    TEST_CASE("diagonal channel")
    {
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
        h(0, 0) = 2.0;
        h(1, 1) = 1.0;
        const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
        const auto r = rzf_precoder(effective(h), eye, 1.0, 0.0);
        Eigen::MatrixXcd tilde = Eigen::MatrixXcd::Zero(2, 2);
        tilde(0, 0) = 0.5;
        tilde(1, 1) = 1.0;
        const double alpha = std::sqrt(1.0 / tilde.squaredNorm());
        CHECK(r.alpha == doctest::Approx(alpha));
        CHECK((r.baseband - alpha * tilde).norm() < 1e-14);
        CHECK((r.product - alpha * eye).norm() < 1e-14);
    }

    TEST_CASE("random channels satisfy the zero-forcing contract")
    {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 100; ++trial)
        {
            const Eigen::MatrixXcd h = random_matrix(rng, 2, 2);
            const Eigen::MatrixXcd w = unit_columns(random_matrix(rng, 8, 2));
            const auto r = rzf_precoder(effective(h), w, 1.0, 0.0);
            const Eigen::MatrixXcd target = r.alpha * Eigen::MatrixXcd::Identity(2, 2);
            CHECK((r.product - target).norm() < 1e-8 * target.norm());
            CHECK(std::abs(r.transmit_power - 1.0) < 1e-9);
            CHECK(r.alpha > 0.0);
        }
    }

    TEST_CASE("power scaling and regularization")
    {
        std::mt19937_64 rng(5);
        const Eigen::MatrixXcd h = random_matrix(rng, 3, 3);
        const Eigen::MatrixXcd w = unit_columns(random_matrix(rng, 16, 3));
        const auto r1 = rzf_precoder(effective(h), w, 1.0, 1e-10);
        const auto r4 = rzf_precoder(effective(h), w, 4.0, 1e-10);
        CHECK(r4.alpha == doctest::Approx(2.0 * r1.alpha));
        CHECK(r4.transmit_power == doctest::Approx(4.0));
        CHECK_THROWS_AS(rzf_precoder(effective(h), w, 0.0, 0.0), ArgumentError);
        CHECK_THROWS_AS(rzf_precoder(effective(h), w, 1.0, -1.0), ArgumentError);
        CHECK_THROWS_AS(rzf_precoder(effective(h), w.leftCols(2), 1.0, 0.0), ArgumentError);
        Eigen::MatrixXcd bad = h;
        bad(0, 0) = cplx(std::nan(""), 0.0);
        CHECK_THROWS_AS(rzf_precoder(effective(bad), w, 1.0, 0.0), NumericalError);
    }

    TEST_CASE("singular channels")
    {
        Eigen::MatrixXcd h(2, 2);
        h << 1.0, 2.0, 2.0, 4.0;
        const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
        try
        {
            rzf_precoder(effective(h), eye, 1.0, 0.0);
            FAIL("expected a singular-channel error");
        }
        catch (const SingularChannelError &e)
        {
            CHECK(e.sigma_min() < 1e-12);
        }

        // While sigma_min stays well above sqrt(eps) the precoder still inverts and alpha shrinks with it
        double previous = std::numeric_limits<double>::infinity();
        for (double delta : {1e-1, 1e-2, 1e-3})
        {
            Eigen::MatrixXcd near = h;
            near(1, 1) += delta;
            const auto r = rzf_precoder(effective(near), eye, 1.0, 1e-10);
            CHECK(r.alpha < previous);
            previous = r.alpha;
        }
        CHECK(previous < 1e-3);

        // Near sigma_min ~ sqrt(eps) the weak stream is barely served and its SINR collapses
        {
            Eigen::MatrixXcd near = h;
            near(1, 1) += 1e-6;
            const MetricsRecord m = link_metrics(effective(near), rzf_precoder(effective(near), eye, 1.0, 1e-10), 1e-3);
            CHECK_FALSE(m.equalized);
            CHECK(m.common_sinr_db < -30.0);
        }

        // Exactly rank one: both users share the surviving direction u1 = (1, 2)/sqrt(5) and the weaker one is
        // interference limited at |u1_0|^2 / |u1_1|^2 = 1/4
        {
            const MetricsRecord m = link_metrics(effective(h), rzf_precoder(effective(h), eye, 1.0, 1e-10), 1e-3);
            CHECK(m.common_sinr_db == doctest::Approx(to_db(0.25)).epsilon(1e-3));
        }

        const auto r = rzf_precoder(effective(h), eye, 1.0, 1e-10);
        const MetricsRecord m = link_metrics(effective(h), r, 1e-3);
        CHECK_FALSE(m.equalized);
        CHECK(m.common_sinr_db < 0.0);
        CHECK(m.condition_number > 1e8);

        const Eigen::MatrixXcd zero_row = (Eigen::MatrixXcd(2, 2) << 1.0, 0.0, 0.0, 0.0).finished();
        const auto rz = rzf_precoder(effective(zero_row), eye, 1.0, 1e-10);
        const MetricsRecord mz = link_metrics(effective(zero_row), rz, 1e-3);
        CHECK(mz.singular);
        CHECK(std::isinf(mz.condition_number));
    }

    TEST_CASE("rate formula")
    {
        // alpha^2 = 1, sigma^2 = 1e-3
        const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
        PrecodingResult r;
        r.alpha = 1.0;
        r.baseband = eye;
        r.product = eye;
        r.transmit_power = 2.0;
        const MetricsRecord m = link_metrics(effective(eye), r, 1e-3);
        CHECK(m.common_sinr_db == doctest::Approx(30.0));
        CHECK(m.sum_rate == doctest::Approx(19.93).epsilon(1e-3));
        CHECK(m.sum_rate == doctest::Approx(2.0 * std::log2(1001.0)).epsilon(1e-12));
        for (double s : m.user_sinr_db)
            CHECK(s == doctest::Approx(30.0));
    }

    TEST_CASE("equal sinr for equalized records")
    {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 20; ++trial)
        {
            const Eigen::MatrixXcd h = random_matrix(rng, 2, 2);
            const Eigen::MatrixXcd w = unit_columns(random_matrix(rng, 8, 2));
            const auto r = rzf_precoder(effective(h), w, 1.0, 1e-10);
            const MetricsRecord m = link_metrics(effective(h), r, 1e-3);
            if (!m.equalized)
                continue;
            for (double s : m.user_sinr_db)
                CHECK(std::abs(s - m.common_sinr_db) < 0.05);
            CHECK(std::abs(m.sum_rate - 2.0 * std::log2(1.0 + m.alpha_power / 1e-3)) < 1e-9 * m.sum_rate);
            CHECK(m.singular_values.front() >= m.singular_values.back());
            CHECK(m.coupling_db(0, 1) == doctest::Approx(to_db(std::norm(h(0, 1)))));
        }
        CHECK(to_db(0.0) == -std::numeric_limits<double>::infinity());
    }
}

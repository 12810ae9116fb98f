#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"

#include "uqcal/errors.hpp"
#include "uqcal/recalibration.hpp"
#include "uqcal/synthetic.hpp"

using uqcal::Dataset;
using uqcal::Knot;
using uqcal::ModelKind;
using uqcal::RecalibrationModel;

namespace {

// Reference monotone fit: try every contiguous partition, keep the
// non-decreasing-means one with the smallest weighted SSE. Exponential,
// but exact, and independent of the pooling implementation.
std::vector<double> brute_force_isotonic(const std::vector<double>& y,
                                         const std::vector<double>& w) {
    const std::size_t n = y.size();
    std::vector<double> best;
    double best_sse = std::numeric_limits<double>::infinity();
    const std::size_t masks = n > 1 ? (std::size_t{1} << (n - 1)) : 1;
    for (std::size_t mask = 0; mask < masks; ++mask) {
        std::vector<double> fitted(n);
        double prev_mean = -std::numeric_limits<double>::infinity();
        double sse = 0.0;
        bool monotone = true;
        std::size_t start = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i + 1 < n && !((mask >> i) & 1))
                continue;  // no cut after i: block keeps growing
            double ws = 0.0, wys = 0.0;
            for (std::size_t j = start; j <= i; ++j) {
                ws += w[j];
                wys += w[j] * y[j];
            }
            const double mean = wys / ws;
            if (mean < prev_mean) {
                monotone = false;
                break;
            }
            for (std::size_t j = start; j <= i; ++j) {
                fitted[j] = mean;
                sse += w[j] * (y[j] - mean) * (y[j] - mean);
            }
            prev_mean = mean;
            start = i + 1;
        }
        if (monotone && sse < best_sse) {
            best_sse = sse;
            best = fitted;
        }
    }
    return best;
}

} // namespace

TEST_CASE("pooled-violators fit on small hand cases") {
    using V = std::vector<double>;
    CHECK(uqcal::pava_fit(V{1, 2, 3}) == V{1, 2, 3});
    CHECK(uqcal::pava_fit(V{3, 1, 2}) == V{2, 2, 2});
    CHECK(uqcal::pava_fit(V{1, 3, 2}) == V{1, 2.5, 2.5});
    CHECK(uqcal::pava_fit(V{2, 2}) == V{2, 2});
    CHECK(uqcal::pava_fit(V{5}) == V{5});
    CHECK(uqcal::pava_fit(V{3, 1}, V{1, 3}) == V{1.5, 1.5});
    CHECK_THROWS_AS(uqcal::pava_fit(V{}), uqcal::InputError);
    CHECK_THROWS_AS(uqcal::pava_fit(V{1, 2}, V{1}), uqcal::InputError);
    CHECK_THROWS_AS(uqcal::pava_fit(V{1, 2}, V{1, 0}), uqcal::InputError);
}

TEST_CASE("fit matches exhaustive partition search") {
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<double> y(n, 0.0);
        const std::vector<double> unit(n, 1.0);
        std::size_t combos = 1;
        for (std::size_t i = 0; i < n; ++i)
            combos *= 4;
        for (std::size_t code = 0; code < combos; ++code) {
            std::size_t c = code;
            for (std::size_t i = 0; i < n; ++i) {
                y[i] = static_cast<double>(c % 4);
                c /= 4;
            }
            const auto got = uqcal::pava_fit(y);
            const auto want = brute_force_isotonic(y, unit);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < n; ++i)
                REQUIRE(std::abs(got[i] - want[i]) <= 1e-12);
        }
    }
}

TEST_CASE("weighted fit matches exhaustive partition search") {
    const std::vector<double> weights{3, 1, 2, 1, 3};
    for (std::size_t n = 2; n <= 5; ++n) {
        std::vector<double> y(n, 0.0);
        const std::vector<double> w(weights.begin(),
                                    weights.begin() + static_cast<std::ptrdiff_t>(n));
        std::size_t combos = 1;
        for (std::size_t i = 0; i < n; ++i)
            combos *= 4;
        for (std::size_t code = 0; code < combos; ++code) {
            std::size_t c = code;
            for (std::size_t i = 0; i < n; ++i) {
                y[i] = static_cast<double>(c % 4);
                c /= 4;
            }
            const auto got = uqcal::pava_fit(y, w);
            const auto want = brute_force_isotonic(y, w);
            for (std::size_t i = 0; i < n; ++i)
                REQUIRE(std::abs(got[i] - want[i]) <= 1e-12);
        }
    }
}

TEST_CASE("fit preserves the weighted mean and is monotone and idempotent") {
    const std::vector<double> y{2.5, 0.25, 1.0, 4.0, 0.5, 3.0, 3.0, 0.125};
    const std::vector<double> w{1, 2, 1, 0.5, 2, 1, 3, 1};
    const auto fitted = uqcal::pava_fit(y, w);
    double wy = 0.0, wf = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        wy += w[i] * y[i];
        wf += w[i] * fitted[i];
    }
    CHECK(wf == doctest::Approx(wy).epsilon(1e-12));
    for (std::size_t i = 1; i < fitted.size(); ++i)
        CHECK(fitted[i] >= fitted[i - 1]);
    const auto twice = uqcal::pava_fit(fitted, w);
    for (std::size_t i = 0; i < fitted.size(); ++i)
        CHECK(twice[i] == doctest::Approx(fitted[i]).epsilon(1e-12));
}

TEST_CASE("step model: knots, evaluation, clamping") {
    const std::vector<double> x{1, 2};
    const std::vector<double> y{1, 2.5};
    const auto model = uqcal::fit_isotonic(x, y);
    CHECK(model.kind() == ModelKind::isotonic_step);
    REQUIRE(model.knots().size() == 2);
    CHECK(model.knots()[0].x == 1.0);
    CHECK(model.knots()[0].y == 1.0);
    CHECK(model.knots()[1].x == 2.0);
    CHECK(model.knots()[1].y == 2.5);

    CHECK(model.evaluate_squared(0.5) == 1.0);   // clamp below
    CHECK(model.evaluate_squared(1.0) == 1.0);
    CHECK(model.evaluate_squared(1.5) == 1.0);   // right-continuous step
    CHECK(model.evaluate_squared(2.0) == 2.5);
    CHECK(model.evaluate_squared(9.0) == 2.5);   // clamp above
    CHECK_THROWS_AS(model.evaluate_squared(std::numeric_limits<double>::infinity()),
                    uqcal::InputError);
}

TEST_CASE("centered model interpolates between level centroids") {
    const std::vector<double> x{1, 2, 3};
    const std::vector<double> y{1, 3, 2};
    const auto model = uqcal::fit_centered_isotonic(x, y);
    REQUIRE(model.knots().size() == 2);
    CHECK(model.knots()[0].x == 1.0);
    CHECK(model.knots()[0].y == 1.0);
    CHECK(model.knots()[1].x == 2.5);   // centroid of the pooled pair
    CHECK(model.knots()[1].y == 2.5);
    CHECK(model.evaluate_squared(2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(model.evaluate_squared(1.75) == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(model.evaluate_squared(0.2) == 1.0);
    CHECK(model.evaluate_squared(3.0) == 2.5);
}

TEST_CASE("already increasing data is reproduced exactly") {
    const std::vector<double> x{1, 2, 4};
    const std::vector<double> y{0.5, 1.25, 2.0};
    const auto model = uqcal::fit_isotonic(x, y);
    REQUIRE(model.knots().size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(model.knots()[i].x == x[i]);
        CHECK(model.knots()[i].y == y[i]);
        CHECK(model.evaluate_squared(x[i]) == y[i]);
    }

    const std::vector<double> flat{2, 2, 2};
    const auto one = uqcal::fit_isotonic(x, flat);
    REQUIRE(one.knots().size() == 1);
    CHECK(one.evaluate_squared(100.0) == 2.0);
}

TEST_CASE("fit does not depend on the arrangement of tied rows") {
    const std::vector<double> x{2, 1, 2, 1, 2};
    const std::vector<double> y{0.3, 0.1, 0.7, 0.2, 0.5};
    const std::vector<std::size_t> perms[] = {
        {0, 1, 2, 3, 4}, {4, 3, 2, 1, 0}, {2, 0, 4, 1, 3}, {1, 3, 0, 4, 2}};
    std::vector<std::vector<Knot>> seen;
    for (const auto& p : perms) {
        std::vector<double> xp, yp;
        for (std::size_t i : p) {
            xp.push_back(x[i]);
            yp.push_back(y[i]);
        }
        seen.push_back(uqcal::fit_isotonic(xp, yp).knots());
    }
    for (std::size_t k = 1; k < seen.size(); ++k) {
        REQUIRE(seen[k].size() == seen[0].size());
        for (std::size_t i = 0; i < seen[0].size(); ++i) {
            CHECK(seen[k][i].x == seen[0][i].x);
            CHECK(seen[k][i].y == seen[0][i].y);
        }
    }
    // ties pooled: two distinct x values remain
    CHECK(seen[0].size() <= 2);
}

TEST_CASE("model constructor rejects malformed knot lists") {
    using K = std::vector<Knot>;
    CHECK_THROWS_AS(RecalibrationModel(ModelKind::isotonic_step, K{}), uqcal::InputError);
    CHECK_THROWS_AS(RecalibrationModel(ModelKind::isotonic_step, K{{1, -0.5}}),
                    uqcal::InputError);
    CHECK_THROWS_AS(RecalibrationModel(ModelKind::isotonic_step, K{{2, 1}, {2, 2}}),
                    uqcal::InputError);
    CHECK_THROWS_AS(RecalibrationModel(ModelKind::isotonic_step, K{{1, 2}, {2, 1}}),
                    uqcal::InputError);
    CHECK_THROWS_AS(
        RecalibrationModel(ModelKind::isotonic_step,
                           K{{std::numeric_limits<double>::quiet_NaN(), 1}}),
        uqcal::InputError);
}

TEST_CASE("apply validates its input") {
    const RecalibrationModel model(ModelKind::isotonic_step, {{1.0, 4.0}});
    CHECK(model.apply_one(3.0) == 2.0);
    CHECK_THROWS_AS(model.apply_one(0.0), uqcal::InputError);
    CHECK_THROWS_AS(model.apply_one(-1.0), uqcal::InputError);
    CHECK_THROWS_AS(model.apply_one(std::numeric_limits<double>::quiet_NaN()),
                    uqcal::InputError);
    CHECK_THROWS_AS(model.apply_one(std::numeric_limits<double>::infinity()),
                    uqcal::InputError);

    const std::vector<double> us{1.0, 2.0, 3.0};
    const auto out = model.apply(us);
    REQUIRE(out.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(out[i] == model.apply_one(us[i]));
}

TEST_CASE("training squared uncertainties map onto their level values") {
    const Dataset d = uqcal::generate_synthetic(
        {400, uqcal::FixedLevelsLaw{{0.1, 0.25, 0.6, 1.5}, {}}, 1.3, 11});
    const auto model = uqcal::fit_recalibration(d, ModelKind::isotonic_step);
    // every training x must evaluate to one of the level values, exactly
    std::vector<double> levels;
    for (const auto& k : model.knots())
        levels.push_back(k.y);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double v = model.evaluate_squared(d.uncertainty(i) * d.uncertainty(i));
        CHECK(std::find(levels.begin(), levels.end(), v) != levels.end());
    }

    // and fit_recalibration is just the isotonic fit of u^2 against E^2
    std::vector<double> x2(d.size()), y2(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        x2[i] = d.uncertainty(i) * d.uncertainty(i);
        y2[i] = d.error(i) * d.error(i);
    }
    const auto direct = uqcal::fit_isotonic(x2, y2);
    REQUIRE(direct.knots().size() == model.knots().size());
    for (std::size_t i = 0; i < direct.knots().size(); ++i) {
        CHECK(direct.knots()[i].x == model.knots()[i].x);
        CHECK(direct.knots()[i].y == model.knots()[i].y);
    }
}

TEST_CASE("fit input validation") {
    using V = std::vector<double>;
    CHECK_THROWS_AS(uqcal::fit_isotonic(V{1}, V{1}), uqcal::InputError);
    CHECK_THROWS_AS(uqcal::fit_isotonic(V{1, 2}, V{1}), uqcal::InputError);
    CHECK_THROWS_AS(uqcal::fit_isotonic(V{1, 2}, V{1, -1}), uqcal::InputError);
    CHECK_THROWS_AS(uqcal::fit_isotonic(V{1, 2}, V{1, 2}, V{1, -1}), uqcal::InputError);
    CHECK_THROWS_AS(
        uqcal::fit_isotonic(V{1, std::numeric_limits<double>::quiet_NaN()}, V{1, 2}),
        uqcal::InputError);
}

TEST_CASE("serialized models reload bit for bit") {
    const Dataset d = uqcal::generate_synthetic({300, uqcal::LogUniformLaw{0.05, 0.9}, 1.2, 3});
    for (ModelKind kind : {ModelKind::isotonic_step, ModelKind::centered_isotonic}) {
        const auto model = uqcal::fit_recalibration(d, kind);
        const std::string text = model.to_json().dump();
        const auto back = RecalibrationModel::from_json(nlohmann::json::parse(text));
        CHECK(back.kind() == model.kind());
        REQUIRE(back.knots().size() == model.knots().size());
        for (std::size_t i = 0; i < back.knots().size(); ++i) {
            CHECK(back.knots()[i].x == model.knots()[i].x);
            CHECK(back.knots()[i].y == model.knots()[i].y);
        }
    }

    CHECK_THROWS_AS(RecalibrationModel::from_json(nlohmann::json::parse("{}")),
                    uqcal::InputError);
    CHECK_THROWS_AS(RecalibrationModel::from_json(
                        nlohmann::json::parse(R"({"kind":"isotonic_step","knots":[[1]]})")),
                    uqcal::InputError);
    CHECK_THROWS_AS(RecalibrationModel::from_json(
                        nlohmann::json::parse(R"({"kind":"nope","knots":[[1,2]]})")),
                    uqcal::InputError);
}

TEST_CASE("step model coarsens, centered model keeps distinct outputs distinct") {
    const Dataset d = uqcal::generate_synthetic(
        {1200, uqcal::FixedLevelsLaw{{0.1, 0.2, 0.45, 1.0}, {}}, 1.0, 29});
    const auto step = uqcal::fit_recalibration(d, ModelKind::isotonic_step);
    const auto cir = uqcal::fit_recalibration(d, ModelKind::centered_isotonic);

    const double lo = cir.knots().front().x;
    const double hi = cir.knots().back().x;
    std::vector<double> q;
    for (int i = 1; i <= 200; ++i)
        q.push_back(lo + (hi - lo) * static_cast<double>(i) / 201.0);

    std::vector<double> step_vals, cir_vals;
    for (double x : q) {
        step_vals.push_back(step.evaluate_squared(x));
        cir_vals.push_back(cir.evaluate_squared(x));
    }
    std::sort(step_vals.begin(), step_vals.end());
    step_vals.erase(std::unique(step_vals.begin(), step_vals.end()), step_vals.end());
    CHECK(step_vals.size() <= step.knots().size());

    for (std::size_t i = 1; i < cir_vals.size(); ++i)
        CHECK(cir_vals[i] > cir_vals[i - 1]);
}

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "rial/error.hpp"
#include "rial/mlp.hpp"

using namespace rial;
namespace fs = std::filesystem;

namespace {

FeatureVector fv(double a, double b, double c, double d) {
    FeatureVector f;
    f.fill = a;
    f.aspect = b;
    f.left_right = c;
    f.top_bottom = d;
    return f;
}

// Three well-separated Gaussian clusters, one per digit class.
std::vector<Sample> cluster_samples(std::uint32_t seed, int per_class) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> jitter(0.0, 0.06);
    const FeatureVector centres[3] = {
        fv(0.70, 2.50, 0.40, 1.10),
        fv(0.35, 1.70, 0.25, 1.70),
        fv(0.45, 1.50, 0.90, 0.85),
    };
    std::vector<Sample> samples;
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < per_class; ++i) {
            auto c = centres[k].as_array();
            samples.emplace_back(
                fv(c[0] + jitter(rng), c[1] + jitter(rng), c[2] + jitter(rng),
                   c[3] + jitter(rng)),
                kAllDigits[k]);
        }
    }
    return samples;
}

MlpModel random_model(std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    MlpModel m;
    m.feature_mean = {0, 0, 0, 0};
    m.feature_std = {1, 1, 1, 1};
    auto theta = mlp_detail::pack_parameters(m);
    for (auto& v : theta) {
        v = u(rng);
    }
    mlp_detail::unpack_parameters(theta, m);
    return m;
}

}  // namespace

TEST_CASE("analytic gradient matches central differences everywhere") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::uniform_int_distribution<int> cls(0, 2);
    const double step = 1e-5;

    for (int point = 0; point < 10; ++point) {
        MlpModel model = random_model(1000 + point);
        std::vector<std::array<double, 4>> inputs;
        std::vector<int> labels;
        for (int n = 0; n < 12; ++n) {
            inputs.push_back({u(rng), u(rng), u(rng), u(rng)});
            labels.push_back(cls(rng));
        }

        auto analytic = mlp_detail::loss_gradient(model, inputs, labels);
        auto theta = mlp_detail::pack_parameters(model);
        REQUIRE(analytic.size() == mlp_detail::parameter_count());

        for (std::size_t k = 0; k < theta.size(); ++k) {
            auto bump = [&](double delta) {
                auto t = theta;
                t[k] += delta;
                MlpModel m = model;
                mlp_detail::unpack_parameters(t, m);
                return mlp_detail::loss(m, inputs, labels);
            };
            double numeric = (bump(step) - bump(-step)) / (2.0 * step);
            double denom = std::max({std::abs(numeric), std::abs(analytic[k]), 1e-8});
            REQUIRE(std::abs(numeric - analytic[k]) / denom < 1e-4);
        }
    }
}

TEST_CASE("separated clusters train to near perfect test accuracy") {
    auto samples = cluster_samples(7, 100);
    TrainConfig cfg;
    cfg.seed = 7;
    auto [model, report] = train_mlp(samples, cfg);
    CHECK(report.test_average >= 0.99);
    // A feature vector at a cluster mean classifies as that cluster.
    CHECK(predict(model, fv(0.70, 2.50, 0.40, 1.10)).digit == DigitClass::One);
    CHECK(predict(model, fv(0.35, 1.70, 0.25, 1.70)).digit == DigitClass::Two);
    CHECK(predict(model, fv(0.45, 1.50, 0.90, 0.85)).digit == DigitClass::Five);
}

TEST_CASE("too few samples refuse to train") {
    std::vector<Sample> tiny;
    for (int i = 0; i < 5; ++i) {
        tiny.emplace_back(fv(0.1 * i, 1, 1, 1), kAllDigits[i % 3]);
    }
    CHECK_THROWS_WITH_AS(train_mlp(tiny, {}), doctest::Contains("InsufficientData"), Error);
}

TEST_CASE("a constant feature is rejected") {
    std::mt19937 rng(3);
    std::normal_distribution<double> n(0.0, 0.1);
    std::vector<Sample> samples;
    for (int i = 0; i < 60; ++i) {
        samples.emplace_back(fv(0.5, 1 + n(rng), 1 + n(rng), 1 + n(rng)), kAllDigits[i % 3]);
    }
    CHECK_THROWS_WITH_AS(train_mlp(samples, {}), doctest::Contains("DegenerateFeatures"), Error);
}

TEST_CASE("training is bit deterministic for a fixed seed") {
    auto samples = cluster_samples(21, 20);
    TrainConfig cfg;
    cfg.seed = 5;
    cfg.epochs = 50;
    auto [m1, r1] = train_mlp(samples, cfg);
    auto [m2, r2] = train_mlp(samples, cfg);
    CHECK(mlp_detail::pack_parameters(m1) == mlp_detail::pack_parameters(m2));
    CHECK(r1.test_average == r2.test_average);
}

TEST_CASE("hand built model produces the hand computed scores") {
    // Zero weights: every hidden unit sits at logistic(0) = 0.5 and the
    // output kernel sees only its bias (1, 0, 0).
    MlpModel m;
    m.feature_mean = {0, 0, 0, 0};
    m.feature_std = {1, 1, 1, 1};
    m.output_bias = {1.0, 0.0, 0.0};
    Prediction p = predict(m, fv(0.3, 0.4, 0.5, 0.6));
    CHECK(p.digit == DigitClass::One);
    double e = std::exp(1.0);
    CHECK(p.scores[0] == doctest::Approx(e / (e + 2.0)).epsilon(1e-12));
    CHECK(p.scores[1] == doctest::Approx(1.0 / (e + 2.0)).epsilon(1e-12));
    CHECK(p.scores[2] == doctest::Approx(1.0 / (e + 2.0)).epsilon(1e-12));
}

TEST_CASE("scores are a probability vector") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    MlpModel m = random_model(4242);
    for (int i = 0; i < 50; ++i) {
        Prediction p = predict(m, fv(u(rng), u(rng), u(rng), u(rng)));
        double sum = p.scores[0] + p.scores[1] + p.scores[2];
        CHECK(std::abs(sum - 1.0) < 1e-9);
        for (double s : p.scores) {
            CHECK(s > 0.0);
        }
    }
}

TEST_CASE("argmax is invariant under a positive scale of the output layer") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    MlpModel m = random_model(77);
    MlpModel scaled = m;
    for (auto& row : scaled.output_weights) {
        for (auto& w : row) {
            w *= 3.5;
        }
    }
    for (auto& b : scaled.output_bias) {
        b *= 3.5;
    }
    for (int i = 0; i < 50; ++i) {
        FeatureVector f = fv(u(rng), u(rng), u(rng), u(rng));
        CHECK(predict(m, f).digit == predict(scaled, f).digit);
    }
}

TEST_CASE("save and load round trips bit exactly") {
    auto samples = cluster_samples(31, 15);
    TrainConfig cfg;
    cfg.seed = 9;
    cfg.epochs = 120;
    auto [model, report] = train_mlp(samples, cfg);

    auto path = fs::temp_directory_path() / "rial_model_rt.txt";
    save_model(model, path.string());
    MlpModel loaded = load_model(path.string());
    CHECK(mlp_detail::pack_parameters(model) == mlp_detail::pack_parameters(loaded));
    CHECK(loaded.feature_mean == model.feature_mean);
    CHECK(loaded.feature_std == model.feature_std);

    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    for (int i = 0; i < 100; ++i) {
        FeatureVector f = fv(u(rng), u(rng), u(rng), u(rng));
        Prediction a = predict(model, f);
        Prediction b = predict(loaded, f);
        CHECK(a.digit == b.digit);
        CHECK(a.scores == b.scores);
    }
    fs::remove(path);
}

TEST_CASE("model loader rejects bad files") {
    auto dir = fs::temp_directory_path();
    auto wrong_version = dir / "rial_model_v9.txt";
    {
        std::ofstream out(wrong_version);
        out << "RIALMLP v9\nsizes 4 20 3\n";
    }
    CHECK_THROWS_WITH_AS(load_model(wrong_version.string()),
                         doctest::Contains("VersionMismatch"), Error);
    fs::remove(wrong_version);

    auto truncated = dir / "rial_model_trunc.txt";
    {
        std::ofstream out(truncated);
        out << "RIALMLP v1\nsizes 4 20 3\nmean 0 0 0 0\n";
    }
    CHECK_THROWS_WITH_AS(load_model(truncated.string()), doctest::Contains("CorruptModel"),
                         Error);
    fs::remove(truncated);

    CHECK_THROWS_WITH_AS(load_model((dir / "rial_no_such_model").string()),
                         doctest::Contains("UnreadableFile"), Error);
}

TEST_CASE("non finite features are rejected at prediction") {
    MlpModel m = random_model(5);
    CHECK_THROWS_WITH_AS(predict(m, fv(std::nan(""), 1, 1, 1)),
                         doctest::Contains("NonFiniteInput"), Error);
}

#include "uqcal/recalibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uqcal/errors.hpp"
#include "uqcal/format.hpp"

namespace uqcal {

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "isotonic_step") return ModelKind::isotonic_step;
    if (name == "centered_isotonic") return ModelKind::centered_isotonic;
    throw InputError("unknown model kind '" + name +
                     "' (expected isotonic_step or centered_isotonic)");
}

std::string to_string(ModelKind kind) {
    return kind == ModelKind::isotonic_step ? "isotonic_step" : "centered_isotonic";
}

RecalibrationModel::RecalibrationModel(ModelKind kind, std::vector<Knot> knots)
    : kind_(kind), knots_(std::move(knots)) {
    if (knots_.empty())
        throw InputError("recalibration model: at least one knot required");
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        if (!std::isfinite(knots_[i].x) || !std::isfinite(knots_[i].y))
            throw InputError("recalibration model: non-finite knot " + std::to_string(i + 1));
        if (knots_[i].y < 0.0)
            throw InputError("recalibration model: negative fitted value at knot " +
                             std::to_string(i + 1));
        if (i > 0 && !(knots_[i - 1].x < knots_[i].x))
            throw InputError("recalibration model: knot x values must be strictly increasing");
        if (i > 0 && knots_[i].y < knots_[i - 1].y)
            throw InputError("recalibration model: fitted values must be non-decreasing");
    }
}

double RecalibrationModel::evaluate_squared(double x) const {
    if (!std::isfinite(x))
        throw InputError("recalibration model: non-finite query");
    if (x <= knots_.front().x)
        return knots_.front().y;
    if (x >= knots_.back().x)
        return knots_.back().y;
    // first knot strictly above x
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double q, const Knot& k) { return q < k.x; });
    if (kind_ == ModelKind::isotonic_step)
        return std::prev(it)->y;
    const Knot& a = *std::prev(it);
    const Knot& b = *it;
    const double t = (x - a.x) / (b.x - a.x);
    return a.y + t * (b.y - a.y);
}

double RecalibrationModel::apply_one(double u) const {
    if (!std::isfinite(u) || u <= 0.0)
        throw InputError("recalibration apply: uncertainty must be finite and > 0 (got " +
                         format_double(u) + ")");
    return std::sqrt(evaluate_squared(u * u));
}

std::vector<double> RecalibrationModel::apply(std::span<const double> u) const {
    std::vector<double> out;
    out.reserve(u.size());
    for (double v : u)
        out.push_back(apply_one(v));
    return out;
}

nlohmann::ordered_json RecalibrationModel::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = to_string(kind_);
    auto& knots = j["knots"] = nlohmann::ordered_json::array();
    for (const auto& k : knots_)
        knots.push_back({k.x, k.y});
    return j;
}

RecalibrationModel RecalibrationModel::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("knots"))
        throw InputError("recalibration model: JSON must carry 'kind' and 'knots'");
    const ModelKind kind = model_kind_from_string(j.at("kind").get<std::string>());
    std::vector<Knot> knots;
    for (const auto& entry : j.at("knots")) {
        if (!entry.is_array() || entry.size() != 2)
            throw InputError("recalibration model: each knot must be a [x, y] pair");
        knots.push_back({entry[0].get<double>(), entry[1].get<double>()});
    }
    return RecalibrationModel(kind, std::move(knots));
}

namespace {

// A maximal constant run of the monotone fit, kept as sums so level means
// are exact weighted averages of the pooled inputs.
struct Level {
    double w_sum = 0.0;
    double wy_sum = 0.0;
    double wx_sum = 0.0;
    std::size_t first = 0;  // index of the first pooled point in the level

    double mean() const { return wy_sum / w_sum; }
};

struct PooledInput {
    std::vector<double> x, y, w;
};

void check_fit_input(std::span<const double> x, std::span<const double> y,
                     std::span<const double> w) {
    if (x.size() != y.size())
        throw InputError("isotonic fit: x and y differ in length");
    if (x.size() < 2)
        throw InputError("isotonic fit: at least 2 points required");
    if (!w.empty() && w.size() != x.size())
        throw InputError("isotonic fit: weights differ in length from data");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]))
            throw InputError("isotonic fit: non-finite x at point " + std::to_string(i + 1));
        if (!std::isfinite(y[i]) || y[i] < 0.0)
            throw InputError("isotonic fit: y must be finite and >= 0 at point " +
                             std::to_string(i + 1));
        if (!w.empty() && (!std::isfinite(w[i]) || w[i] <= 0.0))
            throw InputError("isotonic fit: weights must be finite and > 0 (point " +
                             std::to_string(i + 1) + ")");
    }
}

// Sorts by x and pools exact ties by weighted mean. Each tie group is
// summed in (y, w)-sorted order, so the pooled values are bit-identical
// however the input rows were arranged.
PooledInput pool_by_x(std::span<const double> x, std::span<const double> y,
                      std::span<const double> w) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    PooledInput pooled;
    std::vector<std::pair<double, double>> group;  // (y, w) of one tie
    std::size_t i = 0;
    while (i < order.size()) {
        const double xv = x[order[i]];
        group.clear();
        std::size_t j = i;
        for (; j < order.size() && x[order[j]] == xv; ++j)
            group.emplace_back(y[order[j]], w.empty() ? 1.0 : w[order[j]]);
        std::sort(group.begin(), group.end());
        double w_sum = 0.0, wy_sum = 0.0;
        for (const auto& [yv, wv] : group) {
            w_sum += wv;
            wy_sum += wv * yv;
        }
        pooled.x.push_back(xv);
        pooled.y.push_back(wy_sum / w_sum);
        pooled.w.push_back(w_sum);
        i = j;
    }
    return pooled;
}

// Pool-adjacent-violators over points already in ascending-x order.
// Also merges equal adjacent means, so level means strictly increase.
std::vector<Level> pava_levels(std::span<const double> x, std::span<const double> y,
                               std::span<const double> w) {
    std::vector<Level> levels;
    levels.reserve(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        levels.push_back({wi, wi * y[i], wi * x[i], i});
        while (levels.size() > 1 &&
               levels[levels.size() - 2].mean() >= levels.back().mean()) {
            Level& prev = levels[levels.size() - 2];
            prev.w_sum += levels.back().w_sum;
            prev.wy_sum += levels.back().wy_sum;
            prev.wx_sum += levels.back().wx_sum;
            levels.pop_back();
        }
    }
    return levels;
}

} // namespace

std::vector<double> pava_fit(std::span<const double> y, std::span<const double> w) {
    if (y.empty())
        throw InputError("isotonic fit: empty input");
    if (!w.empty() && w.size() != y.size())
        throw InputError("isotonic fit: weights differ in length from data");
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!w.empty() && (!std::isfinite(w[i]) || w[i] <= 0.0))
            throw InputError("isotonic fit: weights must be finite and > 0 (point " +
                             std::to_string(i + 1) + ")");
    std::vector<double> x(y.size());
    std::iota(x.begin(), x.end(), 0.0);
    const auto levels = pava_levels(x, y, w);
    std::vector<double> fitted(y.size());
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const std::size_t end = l + 1 < levels.size() ? levels[l + 1].first : y.size();
        std::fill(fitted.begin() + static_cast<std::ptrdiff_t>(levels[l].first),
                  fitted.begin() + static_cast<std::ptrdiff_t>(end), levels[l].mean());
    }
    return fitted;
}

RecalibrationModel fit_isotonic(std::span<const double> x, std::span<const double> y,
                                std::span<const double> w) {
    check_fit_input(x, y, w);
    const PooledInput pooled = pool_by_x(x, y, w);
    const auto levels = pava_levels(pooled.x, pooled.y, pooled.w);
    std::vector<Knot> knots;
    knots.reserve(levels.size());
    for (const auto& level : levels)
        knots.push_back({pooled.x[level.first], level.mean()});
    return RecalibrationModel(ModelKind::isotonic_step, std::move(knots));
}

RecalibrationModel fit_centered_isotonic(std::span<const double> x, std::span<const double> y,
                                         std::span<const double> w) {
    check_fit_input(x, y, w);
    const PooledInput pooled = pool_by_x(x, y, w);
    const auto levels = pava_levels(pooled.x, pooled.y, pooled.w);
    std::vector<Knot> knots;
    knots.reserve(levels.size());
    for (const auto& level : levels)
        knots.push_back({level.wx_sum / level.w_sum, level.mean()});
    return RecalibrationModel(ModelKind::centered_isotonic, std::move(knots));
}

RecalibrationModel fit_recalibration(const Dataset& d, ModelKind kind) {
    std::vector<double> x(d.size()), y(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        x[i] = d.uncertainty(i) * d.uncertainty(i);
        y[i] = d.error(i) * d.error(i);
    }
    return kind == ModelKind::isotonic_step ? fit_isotonic(x, y)
                                            : fit_centered_isotonic(x, y);
}

} // namespace uqcal

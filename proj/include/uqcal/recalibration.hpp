#ifndef UQCAL_RECALIBRATION_HPP
#define UQCAL_RECALIBRATION_HPP

#include <span>
#include <string>
#include <vector>

#include "uqcal/dataset.hpp"

#include "json.hpp"

namespace uqcal {

enum class ModelKind { isotonic_step, centered_isotonic };

ModelKind model_kind_from_string(const std::string& name);
std::string to_string(ModelKind kind);

struct Knot {
    double x = 0.0;  // squared uncertainty
    double y = 0.0;  // fitted squared error
};

// Monotone map from squared uncertainty to calibrated squared error.
// isotonic_step evaluates as a right-continuous step over its level sets;
// centered_isotonic interpolates linearly between level-set centroids.
// Both clamp to the end values outside the knot range.
class RecalibrationModel {
public:
    RecalibrationModel(ModelKind kind, std::vector<Knot> knots);

    ModelKind kind() const { return kind_; }
    const std::vector<Knot>& knots() const { return knots_; }

    // f(u^2): the calibrated squared error at squared uncertainty x.
    double evaluate_squared(double x) const;

    // sqrt(f(u^2)): the recalibrated uncertainty for one record.
    double apply_one(double u) const;
    std::vector<double> apply(std::span<const double> u) const;

    nlohmann::ordered_json to_json() const;
    static RecalibrationModel from_json(const nlohmann::json& j);

private:
    ModelKind kind_;
    std::vector<Knot> knots_;
};

// Weighted least-squares monotone (non-decreasing) fit of y by pool
// adjacent violators; y must already be in ascending-x order. Empty w
// means unit weights.
std::vector<double> pava_fit(std::span<const double> y, std::span<const double> w = {});

// Step model from PAVA level sets. Ties in x are pre-pooled by weighted
// mean, so the fit does not depend on the order within a tie.
RecalibrationModel fit_isotonic(std::span<const double> x, std::span<const double> y,
                                std::span<const double> w = {});

// Centered variant: each level set collapses to its weighted x-centroid,
// giving a strictly increasing interpolated map wherever levels differ.
RecalibrationModel fit_centered_isotonic(std::span<const double> x, std::span<const double> y,
                                         std::span<const double> w = {});

// Fits x = u^2 against y = E^2 with unit weights.
RecalibrationModel fit_recalibration(const Dataset& d, ModelKind kind);

} // namespace uqcal

#endif

#include "erasim/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "erasim/errors.hpp"

namespace erasim {

ProtocolSchedule::ProtocolSchedule(std::vector<SchedulePoint> points)
    : points_(std::move(points)) {
    if (points_.empty()) {
        throw usage_error("schedule: needs at least one point");
    }
    if (points_.front().t != 0.0) {
        throw usage_error("schedule: first point must be at t = 0, got t = " +
                          std::to_string(points_.front().t));
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].t)) {
            throw usage_error("schedule: point times must be finite");
        }
        points_[i].control.validate();
        if (i > 0 && !(points_[i].t > points_[i - 1].t)) {
            throw usage_error("schedule: point times must be strictly increasing, got " +
                              std::to_string(points_[i - 1].t) + " then " +
                              std::to_string(points_[i].t));
        }
    }
}

ProtocolSchedule ProtocolSchedule::constant(const ControlState& control) {
    return ProtocolSchedule({SchedulePoint{0.0, control}});
}

ProtocolSchedule ProtocolSchedule::constant_hold(const ControlState& control, double duration) {
    if (duration == 0.0) {
        return constant(control);
    }
    return ProtocolSchedule({SchedulePoint{0.0, control}, SchedulePoint{duration, control}});
}

bool ProtocolSchedule::is_constant() const {
    const ControlState& first = points_.front().control;
    return std::all_of(points_.begin(), points_.end(), [&](const SchedulePoint& p) {
        return p.control.barrier_scale == first.barrier_scale && p.control.tilt == first.tilt;
    });
}

ControlState ProtocolSchedule::at(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw usage_error("schedule: query time must be nonnegative and finite");
    }
    if (t >= points_.back().t) {
        return points_.back().control;
    }
    // First knot strictly past t; t < back().t guarantees one exists and
    // that it is not the first knot (t >= 0 = front().t).
    auto hi = std::upper_bound(points_.begin(), points_.end(), t,
                               [](double v, const SchedulePoint& p) { return v < p.t; });
    auto lo = hi - 1;
    const double w = (t - lo->t) / (hi->t - lo->t);
    ControlState out;
    out.barrier_scale = lo->control.barrier_scale +
                        w * (hi->control.barrier_scale - lo->control.barrier_scale);
    out.tilt = lo->control.tilt + w * (hi->control.tilt - lo->control.tilt);
    return out;
}

}  // namespace erasim

#pragma once

#include <vector>

#include "erasim/model.hpp"

namespace erasim {

// Piecewise-linear control protocol: a list of (time, barrier_scale, tilt)
// knots starting at t = 0 with strictly increasing times. Between knots both
// controls interpolate linearly; past the last knot they hold their final
// values.
struct SchedulePoint {
    double t = 0.0;
    ControlState control;
};

class ProtocolSchedule {
  public:
    explicit ProtocolSchedule(std::vector<SchedulePoint> points);

    // Protocol that holds a single control state forever. Duration 0.
    static ProtocolSchedule constant(const ControlState& control);

    // Same control held for a positive duration.
    static ProtocolSchedule constant_hold(const ControlState& control, double duration);

    ControlState at(double t) const;
    double duration() const { return points_.back().t; }
    bool is_constant() const;
    const std::vector<SchedulePoint>& points() const { return points_; }

  private:
    std::vector<SchedulePoint> points_;
};

}  // namespace erasim

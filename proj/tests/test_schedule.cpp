#include <doctest.h>

#include <vector>

#include "erasim/errors.hpp"
#include "erasim/protocols.hpp"
#include "erasim/schedule.hpp"

using namespace erasim;

TEST_SUITE("schedule") {

TEST_CASE("linear interpolation between knots") {
    ProtocolSchedule schedule({{0.0, {1.0, 0.0}}, {2.0, {0.0, 4.0}}});
    CHECK(schedule.at(0.0).barrier_scale == 1.0);
    CHECK(schedule.at(1.0).barrier_scale == doctest::Approx(0.5));
    CHECK(schedule.at(1.0).tilt == doctest::Approx(2.0));
    CHECK(schedule.at(2.0).barrier_scale == 0.0);
    CHECK(schedule.duration() == 2.0);
}

TEST_CASE("holds the final control past the end") {
    ProtocolSchedule schedule({{0.0, {1.0, 0.0}}, {1.0, {0.5, 3.0}}});
    CHECK(schedule.at(10.0).barrier_scale == 0.5);
    CHECK(schedule.at(10.0).tilt == 3.0);
}

TEST_CASE("interpolating equal endpoint values is exact") {
    // The reset protocol relies on this: a constant segment cannot introduce
    // rounding work, so conservative protocols report exactly zero work.
    const double value = 0.1234567890123456;
    ProtocolSchedule schedule({{0.0, {value, 7.7}}, {3.0, {value, 7.7}}});
    for (double t = 0.0; t <= 3.0; t += 0.137) {
        CHECK(schedule.at(t).barrier_scale == value);
        CHECK(schedule.at(t).tilt == 7.7);
    }
}

TEST_CASE("constant and constant_hold") {
    const ProtocolSchedule constant = ProtocolSchedule::constant({0.7, -1.0});
    CHECK(constant.is_constant());
    CHECK(constant.duration() == 0.0);
    CHECK(constant.at(100.0).barrier_scale == 0.7);

    const ProtocolSchedule held = ProtocolSchedule::constant_hold({0.7, -1.0}, 5.0);
    CHECK(held.is_constant());
    CHECK(held.duration() == 5.0);
    CHECK(held.at(2.5).tilt == -1.0);
}

TEST_CASE("rejects malformed point lists") {
    using Points = std::vector<SchedulePoint>;
    CHECK_THROWS_AS(ProtocolSchedule(Points{}), usage_error);
    CHECK_THROWS_AS(ProtocolSchedule(Points{{1.0, {1.0, 0.0}}}), usage_error);  // must start at 0
    CHECK_THROWS_AS(ProtocolSchedule(Points{{0.0, {1.0, 0.0}}, {0.0, {0.5, 0.0}}}), usage_error);
    CHECK_THROWS_AS(
        ProtocolSchedule(Points{{0.0, {1.0, 0.0}}, {2.0, {0.5, 0.0}}, {1.0, {1.0, 0.0}}}),
        usage_error);
    CHECK_THROWS_AS(ProtocolSchedule(Points{{0.0, {2.0, 0.0}}}), usage_error);  // invalid control
}

TEST_CASE("reset protocol has the documented five-knot shape") {
    const ProtocolSchedule schedule = make_reset_schedule(8.0, 0.9, 12.0);
    const auto& points = schedule.points();
    REQUIRE(points.size() == 5);
    CHECK(points[0].t == 0.0);
    CHECK(points[0].control.barrier_scale == 1.0);
    CHECK(points[0].control.tilt == 0.0);
    CHECK(points[1].t == 2.0);
    CHECK(points[1].control.barrier_scale == doctest::Approx(0.1));
    CHECK(points[1].control.tilt == 0.0);
    CHECK(points[2].t == 4.0);
    CHECK(points[2].control.barrier_scale == doctest::Approx(0.1));
    CHECK(points[2].control.tilt == 12.0);
    CHECK(points[3].t == 6.0);
    CHECK(points[3].control.barrier_scale == 1.0);
    CHECK(points[3].control.tilt == 12.0);
    CHECK(points[4].t == 8.0);
    CHECK(points[4].control.barrier_scale == 1.0);
    CHECK(points[4].control.tilt == 0.0);
}

TEST_CASE("reset protocol validates its arguments") {
    CHECK_THROWS_AS(make_reset_schedule(0.0, 0.9, 12.0), usage_error);
    CHECK_THROWS_AS(make_reset_schedule(-1.0, 0.9, 12.0), usage_error);
    CHECK_THROWS_AS(make_reset_schedule(8.0, 1.5, 12.0), usage_error);
    CHECK_THROWS_AS(make_reset_schedule(8.0, -0.1, 12.0), usage_error);
}

TEST_CASE("passive protocol is constant at full barrier") {
    const PotentialSpec spec{4.0, 1.0};
    const BathParams bath{1.0, 1.0};
    const ProtocolSchedule schedule = make_passive_ite_schedule(20.0, {1.0}, spec, bath);
    CHECK(schedule.is_constant());
    CHECK(schedule.at(0.0).barrier_scale == 1.0);
    CHECK(schedule.at(0.0).tilt == 0.0);
    // duration = multiplier * tau0 * exp(E/kbt)
    CHECK(schedule.duration() == doctest::Approx(20.0 * std::exp(4.0)));
    CHECK_THROWS_AS(make_passive_ite_schedule(0.0, {1.0}, spec, bath), usage_error);
}

}  // TEST_SUITE

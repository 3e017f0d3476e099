#ifndef COVNET_GEOMETRY_HPP
#define COVNET_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace covnet {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(const Point2& a, const Point2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Closed axis-aligned rectangle; boundary points count as inside.
struct Rect {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    bool contains(const Point2& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
};

// The five per-step maneuvers. Index order is part of the label encoding
// and of every tie-break rule, so it is fixed here once.
enum class MotionPrimitive : std::uint8_t {
    Forward = 0,
    Backward = 1,
    Left = 2,
    Right = 3,
    Idle = 4,
};

inline constexpr int kNumPrimitives = 5;

inline constexpr std::array<MotionPrimitive, kNumPrimitives> all_primitives() {
    return {MotionPrimitive::Forward, MotionPrimitive::Backward,
            MotionPrimitive::Left, MotionPrimitive::Right,
            MotionPrimitive::Idle};
}

// Unit direction of travel; Idle is the zero vector.
inline Point2 primitive_direction(MotionPrimitive m) {
    switch (m) {
    case MotionPrimitive::Forward: return {0.0, 1.0};
    case MotionPrimitive::Backward: return {0.0, -1.0};
    case MotionPrimitive::Left: return {-1.0, 0.0};
    case MotionPrimitive::Right: return {1.0, 0.0};
    case MotionPrimitive::Idle: return {0.0, 0.0};
    }
    return {0.0, 0.0};
}

inline std::string_view primitive_name(MotionPrimitive m) {
    switch (m) {
    case MotionPrimitive::Forward: return "forward";
    case MotionPrimitive::Backward: return "backward";
    case MotionPrimitive::Left: return "left";
    case MotionPrimitive::Right: return "right";
    case MotionPrimitive::Idle: return "idle";
    }
    return "?";
}

} // namespace covnet

#endif // COVNET_GEOMETRY_HPP

#pragma once

namespace vcmbench {

// Axis-aligned box in pixel corners, x_min < x_max and y_min < y_max.
struct Box {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const {
    return width() > 0.0 && height() > 0.0 ? width() * height() : 0.0;
  }
  bool well_ordered() const { return x_min < x_max && y_min < y_max; }

  friend bool operator==(const Box&, const Box&) = default;
};

// Intersection over union; 0 for disjoint or zero-area boxes.
double iou(const Box& a, const Box& b);

}  // namespace vcmbench

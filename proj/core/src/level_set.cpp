#include "alfem/level_set.hpp"

#include <sstream>

#include "alfem/error.hpp"

namespace alfem {

LevelSet LevelSet::circle(const Point& center, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("circle radius must be positive");
  LevelSet ls;
  ls.kind_ = Kind::circle;
  ls.center_ = center;
  ls.radius_ = radius;
  return ls;
}

LevelSet LevelSet::half_circle(double radius) {
  LevelSet ls = circle(Point::Zero(), radius);
  ls.kind_ = Kind::half_circle;
  return ls;
}

LevelSet LevelSet::vertical_line(double x0) {
  LevelSet ls;
  ls.kind_ = Kind::vertical_line;
  ls.x0_ = x0;
  return ls;
}

double LevelSet::operator()(const Point& p) const {
  switch (kind_) {
    case Kind::circle:
    case Kind::half_circle: return (p - center_).norm() - radius_;
    case Kind::vertical_line: return p.x() - x0_;
  }
  return 0.0;
}

std::string LevelSet::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::circle:
      os << "circle(center=(" << center_.x() << "," << center_.y() << "),r=" << radius_ << ")";
      break;
    case Kind::half_circle: os << "half_circle(r=" << radius_ << ")"; break;
    case Kind::vertical_line: os << "vertical_line(x0=" << x0_ << ")"; break;
  }
  return os.str();
}

}  // namespace alfem

#include "stochrel/state_space.hpp"

namespace stochrel {

bool Box::contains(const Point& p) const {
  if (p.size() != lo.size()) return false;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < lo[k] || p[k] > hi[k]) return false;
  }
  return true;
}

std::size_t Box::volume() const {
  std::size_t v = 1;
  for (std::size_t k = 0; k < lo.size(); ++k) v *= static_cast<std::size_t>(hi[k] - lo[k] + 1);
  return v;
}

std::string point_label(const Point& p) {
  if (p.size() == 1) return std::to_string(p[0]);
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(p[k]);
  }
  return s + ")";
}

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error("state space must contain at least one state");
  build_index();
}

StateSpace::StateSpace(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw Error("state space must contain at least one state");
  const auto d = points_.front().size();
  labels_.reserve(points_.size());
  for (const auto& p : points_) {
    if (p.size() != d) throw Error("grid points must share one dimension");
    labels_.push_back(point_label(p));
  }
  build_index();
}

StateSpace StateSpace::grid(const Box& box) {
  if (box.lo.size() != box.hi.size() || box.lo.empty()) throw Error("malformed box");
  for (std::size_t k = 0; k < box.lo.size(); ++k) {
    if (box.lo[k] > box.hi[k]) throw Error("empty box coordinate range");
  }
  std::vector<Point> pts;
  pts.reserve(box.volume());
  Point p = box.lo;
  while (true) {
    pts.push_back(p);
    std::size_t k = p.size();
    while (k > 0) {
      --k;
      if (p[k] < box.hi[k]) {
        ++p[k];
        break;
      }
      p[k] = box.lo[k];
      if (k == 0) {
        StateSpace s(std::move(pts));
        s.box_ = box;
        return s;
      }
    }
  }
}

StateSpace StateSpace::range(std::int64_t lo, std::int64_t hi) { return grid(Box{{lo}, {hi}}); }

void StateSpace::build_index() {
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) throw Error("duplicate state label '" + labels_[i] + "'");
  }
}

std::optional<std::size_t> StateSpace::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t StateSpace::index_of(const std::string& label) const {
  auto i = find(label);
  if (!i) throw Error("unknown state '" + label + "'");
  return *i;
}

const Point& StateSpace::point(std::size_t i) const {
  if (points_.empty()) throw Error("state space has no integer coordinates");
  return points_.at(i);
}

std::size_t StateSpace::dims() const { return points_.empty() ? 0 : points_.front().size(); }

std::optional<std::size_t> StateSpace::find(const Point& p) const {
  if (box_) {
    if (!box_->contains(p)) return std::nullopt;
    std::size_t idx = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      idx = idx * static_cast<std::size_t>(box_->hi[k] - box_->lo[k] + 1) +
            static_cast<std::size_t>(p[k] - box_->lo[k]);
    }
    return idx;
  }
  if (points_.empty()) return std::nullopt;
  return find(point_label(p));
}

}  // namespace stochrel

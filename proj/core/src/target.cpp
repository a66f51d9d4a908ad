#include "teichflow/target.hpp"

#include <cmath>
#include <numeric>

#include "teichflow/errors.hpp"

namespace teichflow {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void check_dim(const TargetManifold& m, std::span<const double> v, const char* what) {
  if (static_cast<int>(v.size()) != m.ambient_dim()) {
    throw DomainError(std::string(what) + ": expected ambient dimension " +
                      std::to_string(m.ambient_dim()) + ", got " + std::to_string(v.size()));
  }
}

}  // namespace

TargetManifold TargetManifold::circle() { return {TargetKind::circle, 2}; }

TargetManifold TargetManifold::sphere(int n) {
  if (n < 1) throw DomainError("sphere dimension must be positive");
  return {TargetKind::sphere, n + 1};
}

TargetManifold TargetManifold::euclidean(int dim) {
  if (dim < 1) throw DomainError("euclidean dimension must be positive");
  return {TargetKind::euclidean, dim};
}

TargetManifold TargetManifold::parse(const std::string& name) {
  if (name == "circle") return circle();
  auto suffix = [&](const std::string& prefix) -> int {
    const std::string rest = name.substr(prefix.size());
    if (rest.empty()) throw DomainError("missing dimension in target '" + name + "'");
    std::size_t used = 0;
    const int n = std::stoi(rest, &used);
    if (used != rest.size()) throw DomainError("bad target '" + name + "'");
    return n;
  };
  if (name.rfind("sphere", 0) == 0) return sphere(suffix("sphere"));
  if (name.rfind("euclidean", 0) == 0) return euclidean(suffix("euclidean"));
  throw DomainError("unknown target '" + name + "'");
}

std::string TargetManifold::name() const {
  switch (kind_) {
    case TargetKind::circle:
      return "circle";
    case TargetKind::sphere:
      return "sphere" + std::to_string(dim_ - 1);
    case TargetKind::euclidean:
      return "euclidean" + std::to_string(dim_);
  }
  return "?";
}

void TargetManifold::project_in_place(std::span<double> p) const {
  if (!is_round()) return;
  const double r = norm(p);
  if (r == 0.0) throw DomainError("cannot project the zero vector onto a sphere");
  for (double& x : p) x /= r;
}

void TargetManifold::tangent_project_in_place(std::span<const double> u,
                                              std::span<double> v) const {
  if (!is_round()) return;
  const double c = dot(u, v);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * u[k];
}

double TargetManifold::distance_to(std::span<const double> p) const {
  if (!is_round()) return 0.0;
  return std::abs(norm(p) - 1.0);
}

AmbientVector project(const TargetManifold& m, std::span<const double> p) {
  check_dim(m, p, "project");
  AmbientVector out(p.begin(), p.end());
  m.project_in_place(out);
  return out;
}

AmbientVector second_fundamental_form(const TargetManifold& m, std::span<const double> u,
                                      std::span<const double> x, std::span<const double> y) {
  check_dim(m, u, "second_fundamental_form");
  check_dim(m, x, "second_fundamental_form");
  check_dim(m, y, "second_fundamental_form");
  AmbientVector out(u.size(), 0.0);
  if (!m.is_round()) return out;
  if (m.distance_to(u) > kTangencyTolerance) {
    throw ContractViolation("second_fundamental_form: base point is not on the target");
  }
  const auto tangent = [&](std::span<const double> v) {
    return std::abs(dot(u, v)) <= kTangencyTolerance * std::max(1.0, norm(v));
  };
  if (!tangent(x) || !tangent(y)) {
    throw ContractViolation("second_fundamental_form: arguments are not tangent at u");
  }
  const double xy = dot(x, y);
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = xy * u[k];
  return out;
}

AmbientVector tangent_project(const TargetManifold& m, std::span<const double> u,
                              std::span<const double> v) {
  check_dim(m, u, "tangent_project");
  check_dim(m, v, "tangent_project");
  AmbientVector out(v.begin(), v.end());
  m.tangent_project_in_place(u, out);
  return out;
}

UnitSpeedCurve::UnitSpeedCurve(TargetManifold target, double length, Rule rule, std::string tag)
    : target_(target), length_(length), rule_(std::move(rule)), tag_(std::move(tag)) {
  if (!(length > 0.0)) throw DomainError("curve length must be positive");
}

UnitSpeedCurve UnitSpeedCurve::segment(double length, int dim) {
  return {TargetManifold::euclidean(dim), length,
          [](double t, std::span<double> out) {
            std::fill(out.begin(), out.end(), 0.0);
            out[0] = t;
          },
          "segment"};
}

UnitSpeedCurve UnitSpeedCurve::circle_arc(double length) {
  return {TargetManifold::circle(), length,
          [](double t, std::span<double> out) {
            out[0] = std::cos(t);
            out[1] = std::sin(t);
          },
          "circle_arc"};
}

UnitSpeedCurve UnitSpeedCurve::great_circle_arc(double length) {
  return {TargetManifold::sphere(2), length,
          [](double t, std::span<double> out) {
            out[0] = std::cos(t);
            out[1] = std::sin(t);
            out[2] = 0.0;
          },
          "great_circle_arc"};
}

UnitSpeedCurve UnitSpeedCurve::planar_arc(double length, double radius) {
  if (!(radius > 0.0)) throw DomainError("arc radius must be positive");
  return {TargetManifold::euclidean(2), length,
          [radius](double t, std::span<double> out) {
            out[0] = radius * std::sin(t / radius);
            out[1] = radius * (1.0 - std::cos(t / radius));
          },
          "planar_arc"};
}

AmbientVector curve_eval(const UnitSpeedCurve& c, double t) {
  const double half = 0.5 * c.length();
  if (!(std::abs(t) <= half * (1.0 + 1e-14))) {
    throw DomainError("curve parameter outside [-L/2, L/2]");
  }
  AmbientVector out(static_cast<std::size_t>(c.target().ambient_dim()));
  c.eval(t, out);
  return out;
}

}  // namespace teichflow

/*
 * Copyright 2026 The kakeya-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "kakeya/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kakeya/error.hpp"
#include "kakeya/parallel.hpp"

namespace kakeya {

// -------------------------------------------------------- PointFunction

PointFunction::PointFunction(AffineSpace space) : space_(std::move(space)), v_(space_.size(), 0.0) {}

PointFunction::PointFunction(AffineSpace space, std::vector<double> values)
    : space_(std::move(space)), v_(std::move(values)) {
  require(v_.size() == space_.size(), ErrorCode::DimensionMismatch,
          "function has " + std::to_string(v_.size()) + " values for " +
              std::to_string(space_.size()) + " points");
  for (auto& x : v_) {
    require(std::isfinite(x), ErrorCode::InvalidArgument, "function values must be finite");
    x = std::fabs(x);
  }
}

PointFunction PointFunction::indicator(const AffineSpace& space, const PointSet& set) {
  PointFunction f(space);
  for (auto p : set) {
    require(p < space.size(), ErrorCode::InvalidArgument, "point outside the space");
    f.v_[p] = 1.0;
  }
  return f;
}

PointFunction PointFunction::constant(const AffineSpace& space, double c) {
  return PointFunction(space, std::vector<double>(space.size(), c));
}

void PointFunction::set(PointIndex i, double value) {
  require(i < v_.size(), ErrorCode::InvalidArgument, "point outside the space");
  require(std::isfinite(value), ErrorCode::InvalidArgument, "function values must be finite");
  v_[i] = std::fabs(value);
}

bool PointFunction::is_zero() const noexcept {
  return std::all_of(v_.begin(), v_.end(), [](double x) { return x == 0.0; });
}

PointSet PointFunction::support() const {
  PointSet s;
  for (PointIndex i = 0; i < v_.size(); ++i) {
    if (v_[i] != 0.0) s.push_back(i);
  }
  return s;
}

PointFunction PointFunction::operator+(const PointFunction& o) const {
  require(o.v_.size() == v_.size() && *o.space_.field() == *space_.field(), ErrorCode::DimensionMismatch,
          "functions on different spaces");
  std::vector<double> r(v_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = v_[i] + o.v_[i];
  return PointFunction(space_, std::move(r));
}

PointFunction PointFunction::scaled(double c) const {
  std::vector<double> r(v_);
  for (auto& x : r) x *= c;
  return PointFunction(space_, std::move(r));
}

// ---------------------------------------------------------------- norms

namespace {

void check_exponent(double p) {
  require(p >= 1.0 && !std::isnan(p), ErrorCode::BadExponent,
          "norm exponent must be >= 1 or infinity, got " + std::to_string(p));
}

}  // namespace

double lp_norm(std::span<const double> values, double p, bool normalized) {
  check_exponent(p);
  if (values.empty()) return 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
  }
  // Neumaier summation of |v|^p.
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double term = std::pow(std::fabs(v), p);
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  sum += comp;
  if (normalized) sum /= static_cast<double>(values.size());
  return std::pow(sum, 1.0 / p);
}

double lp_norm_sorted(std::span<const double> values, double p, bool normalized) {
  check_exponent(p);
  if (values.empty()) return 0.0;
  std::vector<double> terms;
  terms.reserve(values.size());
  for (double v : values) terms.push_back(std::isinf(p) ? std::fabs(v) : std::pow(std::fabs(v), p));
  std::sort(terms.begin(), terms.end());
  if (std::isinf(p)) return terms.back();
  double sum = 0.0;
  for (double t : terms) sum += t;
  if (normalized) sum /= static_cast<double>(values.size());
  return std::pow(sum, 1.0 / p);
}

std::string_view domain_name(Domain d) noexcept {
  switch (d) {
    case Domain::Directions: return "directions";
    case Domain::HyperplanePoints: return "hyperplane_points";
    case Domain::VarietyPoints: return "variety_points";
    case Domain::AmbientPoints: return "ambient_points";
    case Domain::Grassmannian: return "grassmannian";
  }
  return "unknown";
}

double sum_over(const PointFunction& f, const PointSet& points) {
  double s = 0.0;
  for (auto p : points) s += f[p];
  return s;
}

bool witnesses_reproduce(const PointFunction& f, const MaximalResult& r) {
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (!r.witnesses[i]) {
      if (r.values[i] != 0.0) return false;
      continue;
    }
    if (sum_over(f, r.witnesses[i]->summed) != r.values[i]) return false;
  }
  return true;
}

// ------------------------------------------------------- coset machinery

namespace {

std::pair<double, std::uint64_t> first_max(const std::vector<double>& v) {
  std::uint64_t arg = 0;
  for (std::uint64_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[arg]) arg = i;
  }
  return {v[arg], arg};
}

}  // namespace

MaximalResult kakeya_maximal(const PointFunction& f) {
  const AffineSpace& space = f.space();
  const auto dirs = enum_directions(space.field(), space.dim());
  const auto coords = coordinate_table(space);
  MaximalResult r;
  r.domain = Domain::Directions;
  r.keys.resize(dirs.size());
  r.values.resize(dirs.size());
  r.witnesses.resize(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) {
    const KPlane sub = direction_subspace(dirs[i]);
    const CosetIndexer summer(space, sub);
    const auto [value, coset] = first_max(summer.sums(f.values(), coords));
    const Line line{summer.offset(coset), dirs[i]};
    r.keys[i] = i;
    r.values[i] = value;
    r.witnesses[i] = Witness{to_json(line), line_points(space, line)};
  });
  return r;
}

MaximalResult kplane_maximal(const PointFunction& f, const Grassmannian& gr) {
  const AffineSpace& space = f.space();
  const auto coords = coordinate_table(space);
  MaximalResult r;
  r.domain = Domain::Grassmannian;
  r.keys.resize(gr.size());
  r.values.resize(gr.size());
  r.witnesses.resize(gr.size());
  parallel_for(gr.size(), [&](std::size_t i) {
    const CosetIndexer summer(space, gr[i]);
    const auto [value, coset] = first_max(summer.sums(f.values(), coords));
    KPlane plane = gr[i];
    plane.offset = summer.offset(coset);
    r.keys[i] = i;
    r.values[i] = value;
    r.witnesses[i] = Witness{to_json(plane), kplane_points(space, plane)};
  });
  return r;
}

MaximalResult kplane_maximal(const PointFunction& f, std::size_t k) {
  return kplane_maximal(f, Grassmannian(f.space(), k));
}

// ------------------------------------------------------- curve operators

std::vector<ParametricCurve> line_family(const AffineSpace& space) {
  std::vector<ParametricCurve> out;
  for (const auto& l : all_lines(space)) out.push_back(ParametricCurve::from_line(space, l));
  return out;
}

namespace {

std::vector<CurveImage> images_of(const AffineSpace& space, const std::vector<ParametricCurve>& family) {
  std::vector<CurveImage> images(family.size());
  parallel_for(family.size(), [&](std::size_t i) { images[i] = curve_points(space, family[i]); });
  return images;
}

}  // namespace

MaximalResult curve_maximal(const PointFunction& f, const std::vector<ParametricCurve>& family) {
  const AffineSpace& space = f.space();
  require(space.dim() >= 1, ErrorCode::InvalidArgument, "dimension must be >= 1");
  const std::uint64_t q = space.q();
  const std::uint64_t domain = space.size() / q;
  for (const auto& c : family) {
    require(c.dim() == space.dim(), ErrorCode::DimensionMismatch, "curve dimension");
  }
  MaximalResult r;
  r.domain = Domain::HyperplanePoints;
  r.keys.resize(domain);
  for (std::uint64_t w = 0; w < domain; ++w) r.keys[w] = w;
  r.values.assign(domain, 0.0);
  r.witnesses.resize(domain);

  const auto images = images_of(space, family);
  std::vector<PointSet> off(family.size());
  std::vector<double> sums(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    for (auto p : images[i].points) {
      if (p % q != 0) off[i].push_back(p);
    }
    sums[i] = sum_over(f, off[i]);
  });
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (auto p : images[i].points) {
      if (p % q != 0) continue;
      const std::uint64_t w = p / q;
      if (!r.witnesses[w] || sums[i] > r.values[w]) {
        r.values[w] = sums[i];
        r.witnesses[w] = Witness{to_json(family[i]), off[i]};
      }
    }
  }
  return r;
}

MaximalResult variety_maximal(const PointFunction& f, const PointSet& W,
                              const std::vector<Polynomial>& ambient,
                              const std::vector<AnchoredCurve>& family, VarietySum mode) {
  const AffineSpace& space = f.space();
  require(!ambient.empty(), ErrorCode::InvalidArgument, "the ambient algebraic set needs at least one equation");
  for (const auto& p : ambient) {
    require(p.n_vars() == space.dim(), ErrorCode::DimensionMismatch, "ambient polynomial arity");
  }
  MaximalResult r;
  r.domain = Domain::VarietyPoints;
  r.keys = W;
  r.values.assign(W.size(), 0.0);
  r.witnesses.resize(W.size());

  std::vector<char> in_ambient;
  if (mode == VarietySum::OffAmbient) {
    in_ambient.assign(space.size(), 0);
    Point x(space.dim());
    for (PointIndex i = 0; i < space.size(); ++i) {
      space.decode_into(i, x);
      in_ambient[i] = std::all_of(ambient.begin(), ambient.end(),
                                  [&](const Polynomial& p) { return p.eval(x) == 0; });
    }
  }

  std::vector<PointSet> summed(family.size());
  std::vector<double> sums(family.size());
  std::vector<std::size_t> slot(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& ac = family[i];
    require(ac.curve.dim() == space.dim(), ErrorCode::DimensionMismatch, "curve dimension");
    auto it = std::lower_bound(W.begin(), W.end(), ac.anchor);
    require(it != W.end() && *it == ac.anchor, ErrorCode::InvalidArgument,
            "anchor " + std::to_string(ac.anchor) + " is not a point of W");
    slot[i] = static_cast<std::size_t>(it - W.begin());
  }
  parallel_for(family.size(), [&](std::size_t i) {
    const auto& ac = family[i];
    const CurveImage img = curve_points(space, ac.curve);
    require(contains(img.points, ac.anchor), ErrorCode::AnchorMissing,
            "curve " + to_json(ac.curve).dump() + " does not pass through its anchor");
    require(!curve_in_zero_set(ac.curve, ambient), ErrorCode::ContainmentViolation,
            "curve " + to_json(ac.curve).dump() + " lies in the ambient algebraic set");
    for (auto p : img.points) {
      if (mode == VarietySum::AllPoints || !in_ambient[p]) summed[i].push_back(p);
    }
    sums[i] = sum_over(f, summed[i]);
  });
  for (std::size_t i = 0; i < family.size(); ++i) {
    const std::size_t w = slot[i];
    if (!r.witnesses[w] || sums[i] > r.values[w]) {
      r.values[w] = sums[i];
      r.witnesses[w] = Witness{to_json(family[i].curve), summed[i]};
    }
  }
  return r;
}

std::vector<AnchoredCurve> lines_through_points(const AffineSpace& space, const PointSet& W) {
  std::vector<AnchoredCurve> out;
  for (auto w : W) {
    for (const auto& l : lines_through(space, space.decode(w))) {
      out.push_back({w, ParametricCurve::from_line(space, l)});
    }
  }
  return out;
}

namespace {

MaximalResult ambient_result(const AffineSpace& space, const std::optional<PointSet>& W) {
  MaximalResult r;
  r.domain = Domain::AmbientPoints;
  if (W) {
    for (auto p : *W) require(p < space.size(), ErrorCode::InvalidArgument, "point outside the space");
    r.keys = *W;
  } else {
    r.keys.resize(space.size());
    for (PointIndex i = 0; i < space.size(); ++i) r.keys[i] = i;
  }
  r.values.assign(r.keys.size(), 0.0);
  r.witnesses.resize(r.keys.size());
  return r;
}

/// Slot of each point in the result, or npos.
std::vector<std::size_t> slots(const AffineSpace& space, const MaximalResult& r) {
  std::vector<std::size_t> s(space.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < r.keys.size(); ++i) s[r.keys[i]] = i;
  return s;
}

}  // namespace

MaximalResult nikodym_maximal(const PointFunction& f, const std::optional<PointSet>& W) {
  const AffineSpace& space = f.space();
  MaximalResult r = ambient_result(space, W);
  const auto slot = slots(space, r);
  const auto dirs = enum_directions(space.field(), space.dim());
  const auto coords = coordinate_table(space);
  std::vector<std::vector<double>> sums(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t i) {
    const KPlane sub = direction_subspace(dirs[i]);
    sums[i] = CosetIndexer(space, sub).sums(f.values(), coords);
  });
  // Best (direction, coset) per slot; first direction wins ties.
  std::vector<std::pair<std::size_t, std::uint64_t>> best(r.keys.size(), {0, 0});
  std::vector<char> seen(r.keys.size(), 0);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const KPlane sub = direction_subspace(dirs[i]);
    const CosetIndexer summer(space, sub);
    const std::size_t n = space.dim();
    for (PointIndex x = 0; x < space.size(); ++x) {
      const std::size_t s = slot[x];
      if (s == static_cast<std::size_t>(-1)) continue;
      const std::uint64_t c = summer.coset_of(std::span<const Elem>(coords).subspan(x * n, n));
      if (!seen[s] || sums[i][c] > r.values[s]) {
        seen[s] = 1;
        r.values[s] = sums[i][c];
        best[s] = {i, c};
      }
    }
  }
  for (std::size_t s = 0; s < r.keys.size(); ++s) {
    const auto [i, c] = best[s];
    const KPlane sub = direction_subspace(dirs[i]);
    const Line line{CosetIndexer(space, sub).offset(c), dirs[i]};
    r.witnesses[s] = Witness{to_json(line), line_points(space, line)};
  }
  return r;
}

MaximalResult nikodym_maximal(const PointFunction& f, const std::vector<ParametricCurve>& family,
                              const std::optional<PointSet>& W) {
  const AffineSpace& space = f.space();
  MaximalResult r = ambient_result(space, W);
  const auto slot = slots(space, r);
  for (const auto& c : family) {
    require(c.dim() == space.dim(), ErrorCode::DimensionMismatch, "curve dimension");
  }
  const auto images = images_of(space, family);
  std::vector<double> sums(family.size());
  parallel_for(family.size(), [&](std::size_t i) { sums[i] = sum_over(f, images[i].points); });
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (auto p : images[i].points) {
      const std::size_t s = slot[p];
      if (s == static_cast<std::size_t>(-1)) continue;
      if (!r.witnesses[s] || sums[i] > r.values[s]) {
        r.values[s] = sums[i];
        r.witnesses[s] = Witness{to_json(family[i]), images[i].points};
      }
    }
  }
  return r;
}

}  // namespace kakeya

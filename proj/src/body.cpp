#include "johnforge/body.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

namespace johnforge {
namespace {

constexpr double kUnitNormalTol = 1e-10;
constexpr double kHullTol = 1e-9;

// 2D convex hull, counter-clockwise, collinear points dropped.
std::vector<Vector> hull2d(const Matrix& pts) {
  std::vector<Vector> p;
  p.reserve(pts.rows());
  for (int i = 0; i < pts.rows(); ++i) p.push_back(pts.row(i).transpose());
  std::sort(p.begin(), p.end(), [](const Vector& a, const Vector& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  p.erase(std::unique(p.begin(), p.end(),
                      [](const Vector& a, const Vector& b) {
                        return (a - b).norm() < kHullTol;
                      }),
          p.end());
  auto cross = [](const Vector& o, const Vector& a, const Vector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  const int m = static_cast<int>(p.size());
  if (m < 3) throw DegenerateHull("hull2d: fewer than 3 distinct points");
  std::vector<Vector> h(2 * m);
  int k = 0;
  for (int i = 0; i < m; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= kHullTol) --k;
    h[k++] = p[i];
  }
  for (int i = m - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && cross(h[k - 2], h[k - 1], p[i]) <= kHullTol) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw DegenerateHull("hull2d: degenerate (collinear) input");
  return h;
}

void facets_from_hull2d(const std::vector<Vector>& hull, Matrix& normals,
                        Vector& offsets) {
  const int m = static_cast<int>(hull.size());
  normals.resize(m, 2);
  offsets.resize(m);
  for (int i = 0; i < m; ++i) {
    const Vector& a = hull[i];
    const Vector& b = hull[(i + 1) % m];
    Vector u(2);
    u << b[1] - a[1], a[0] - b[0];  // outward for CCW order
    const double len = u.norm();
    if (len < kHullTol) throw DegenerateHull("facets_from_hull2d: zero edge");
    u /= len;
    normals.row(i) = u.transpose();
    offsets[i] = u.dot(a);
  }
}

// Brute-force facet enumeration over vertex triples; desk-scale inputs.
void facets3d(const Matrix& pts, Matrix& normals, Vector& offsets) {
  const int m = static_cast<int>(pts.rows());
  if (m < 4) throw DegenerateHull("facets3d: need at least 4 points");
  std::vector<Vector> us;
  std::vector<double> hs;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        Vector a = pts.row(i), b = pts.row(j), c = pts.row(k);
        Eigen::Vector3d u = Eigen::Vector3d(b - a).cross(Eigen::Vector3d(c - a));
        const double len = u.norm();
        if (len < kHullTol) continue;
        u /= len;
        double h = u.dot(Eigen::Vector3d(a));
        // Try both orientations; keep the one with all points on the inside.
        for (int s = 0; s < 2; ++s) {
          bool face = true;
          for (int t = 0; t < m && face; ++t)
            if (u.dot(Eigen::Vector3d(pts.row(t))) > h + kHullTol) face = false;
          if (face) {
            bool dup = false;
            for (size_t q = 0; q < us.size() && !dup; ++q)
              if ((us[q] - Vector(u)).norm() < 1e-7 && std::abs(hs[q] - h) < 1e-7)
                dup = true;
            if (!dup) {
              us.push_back(u);
              hs.push_back(h);
            }
            break;
          }
          u = -u;
          h = -h;
        }
      }
  if (us.size() < 4) throw DegenerateHull("facets3d: degenerate point set");
  normals.resize(static_cast<int>(us.size()), 3);
  offsets.resize(static_cast<int>(us.size()));
  for (size_t q = 0; q < us.size(); ++q) {
    normals.row(static_cast<int>(q)) = us[q].transpose();
    offsets[static_cast<int>(q)] = hs[q];
  }
}

void build_hrep(const Matrix& vertices, Matrix& normals, Vector& offsets) {
  const int n = static_cast<int>(vertices.cols());
  if (n == 2) {
    facets_from_hull2d(hull2d(vertices), normals, offsets);
  } else if (n == 3) {
    facets3d(vertices, normals, offsets);
  } else {
    throw InvalidInput("V-polytope supported only for n <= 3");
  }
  if (offsets.minCoeff() <= kHullTol)
    throw OriginNotInterior("V-polytope: origin is not strictly interior");
}

}  // namespace

ConvexBody ConvexBody::hpolytope(Matrix normals, Vector offsets) {
  if (normals.rows() != offsets.size() || normals.rows() == 0)
    throw DimensionMismatch("hpolytope: normals/offsets mismatch");
  for (int j = 0; j < normals.rows(); ++j) {
    if (std::abs(normals.row(j).norm() - 1.0) > kUnitNormalTol)
      throw InvalidInput("hpolytope: facet normal is not unit length");
    if (!(offsets[j] > 0))
      throw OriginNotInterior("hpolytope: nonpositive offset");
  }
  ConvexBody b;
  b.kind_ = BodyKind::HPolytope;
  b.dim_ = static_cast<int>(normals.cols());
  b.normals_ = std::move(normals);
  b.offsets_ = std::move(offsets);
  return b;
}

ConvexBody ConvexBody::vpolytope(Matrix vertices) {
  const int n = static_cast<int>(vertices.cols());
  if (n < 2 || n > 3) throw InvalidInput("vpolytope: n must be 2 or 3");
  ConvexBody b;
  b.kind_ = BodyKind::VPolytope;
  b.dim_ = n;
  build_hrep(vertices, b.normals_, b.offsets_);
  b.vertices_ = std::move(vertices);
  return b;
}

ConvexBody ConvexBody::pnorm_ball(double p, double radius, int dim) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw InvalidInput("pnorm_ball: p must lie in (1, inf)");
  if (!(radius > 0)) throw InvalidInput("pnorm_ball: radius must be positive");
  ConvexBody b;
  b.kind_ = BodyKind::PNormBall;
  b.dim_ = dim;
  b.p_ = p;
  b.radius_ = radius;
  return b;
}

ConvexBody ConvexBody::unit_ball(int dim) {
  ConvexBody b;
  b.kind_ = BodyKind::UnitBall;
  b.dim_ = dim;
  return b;
}

double ConvexBody::gauge(const Vector& x) const {
  if (x.size() != dim_) throw DimensionMismatch("gauge: wrong dimension");
  switch (kind_) {
    case BodyKind::UnitBall:
      return x.norm();
    case BodyKind::PNormBall: {
      double s = 0;
      for (int i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), p_);
      return std::pow(s, 1.0 / p_) / radius_;
    }
    case BodyKind::HPolytope:
    case BodyKind::VPolytope: {
      double g = 0;
      for (int j = 0; j < normals_.rows(); ++j)
        g = std::max(g, normals_.row(j).dot(x) / offsets_[j]);
      return g;
    }
  }
  return 0;
}

Vector ConvexBody::normal(const Vector& x) const {
  if (x.size() != dim_) throw DimensionMismatch("normal: wrong dimension");
  const double nx = x.norm();
  if (nx == 0) throw InvalidInput("normal: undefined at the origin");
  switch (kind_) {
    case BodyKind::UnitBall:
      return x / nx;
    case BodyKind::PNormBall: {
      Vector g(x.size());
      for (int i = 0; i < x.size(); ++i)
        g[i] = (x[i] >= 0 ? 1.0 : -1.0) * std::pow(std::abs(x[i]), p_ - 1.0);
      const double gn = g.norm();
      if (gn == 0) throw InvalidInput("normal: degenerate gradient");
      return g / gn;
    }
    case BodyKind::HPolytope:
    case BodyKind::VPolytope: {
      int best = -1, second = -1;
      double bs = -1e300, ss = -1e300;
      for (int j = 0; j < normals_.rows(); ++j) {
        const double s = normals_.row(j).dot(x) / offsets_[j];
        if (s > bs) {
          second = best;
          ss = bs;
          best = j;
          bs = s;
        } else if (s > ss) {
          second = j;
          ss = s;
        }
      }
      if (second >= 0 && bs - ss <= 1e-10)
        throw AmbiguousNormal("normal: point lies on a polytope edge/vertex");
      return normals_.row(best).transpose();
    }
  }
  throw InvalidInput("normal: unreachable");
}

Matrix ConvexBody::vertices() const {
  if (kind_ == BodyKind::VPolytope) return vertices_;
  if (kind_ != BodyKind::HPolytope)
    throw InvalidInput("vertices: only polytope variants have vertices");
  const int n = dim_;
  if (n > 3) throw InvalidInput("vertices: H-polytope enumeration needs n <= 3");
  const int m = static_cast<int>(normals_.rows());
  std::vector<Vector> vs;
  std::vector<int> idx(n);
  auto try_subset = [&](const std::vector<int>& sel) {
    Matrix A(n, n);
    Vector b(n);
    for (int i = 0; i < n; ++i) {
      A.row(i) = normals_.row(sel[i]);
      b[i] = offsets_[sel[i]];
    }
    Eigen::FullPivLU<Matrix> lu(A);
    if (!lu.isInvertible()) return;
    Vector v = lu.solve(b);
    for (int j = 0; j < m; ++j)
      if (normals_.row(j).dot(v) > offsets_[j] + 1e-8) return;
    for (const auto& u : vs)
      if ((u - v).norm() < 1e-8) return;
    vs.push_back(v);
  };
  if (n == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) try_subset({i, j});
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k) try_subset({i, j, k});
  }
  if (static_cast<int>(vs.size()) < n + 1)
    throw DegenerateHull("vertices: H-polytope is degenerate or unbounded");
  Matrix out(static_cast<int>(vs.size()), n);
  for (size_t i = 0; i < vs.size(); ++i)
    out.row(static_cast<int>(i)) = vs[i].transpose();
  return out;
}

ConvexBody vpoly_to_hpoly(const ConvexBody& body) {
  if (body.kind() != BodyKind::VPolytope)
    throw InvalidInput("vpoly_to_hpoly: input is not a V-polytope");
  return ConvexBody::hpolytope(body.facet_normals(), body.facet_offsets());
}

ConvexBody transform(const ConvexBody& body, const Matrix& A, const Vector& v) {
  const int n = body.dim();
  if (A.rows() != n || A.cols() != n || v.size() != n)
    throw DimensionMismatch("transform: wrong dimensions");
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 0 || smax / smin > 1e12)
    throw SingularTransform("transform: matrix is singular or ill-conditioned");
  switch (body.kind()) {
    case BodyKind::VPolytope: {
      Matrix V = body.vertices();
      Matrix W = (A * V.transpose()).transpose();
      W.rowwise() += v.transpose();
      return ConvexBody::vpolytope(W);  // ctor checks the origin stays interior
    }
    case BodyKind::HPolytope: {
      // AK + v = { y : <A^{-T} u_j, y> <= h_j + <A^{-T} u_j, v> }
      Matrix Ainv = A.inverse();
      Matrix normals(body.facet_normals().rows(), n);
      Vector offsets(body.facet_offsets().size());
      for (int j = 0; j < normals.rows(); ++j) {
        Vector u = Ainv.transpose() * body.facet_normals().row(j).transpose();
        const double len = u.norm();
        u /= len;
        const double h = body.facet_offsets()[j] / len + u.dot(v);
        if (!(h > 0))
          throw OriginNotInterior("transform: origin leaves the interior");
        normals.row(j) = u.transpose();
        offsets[j] = h;
      }
      return ConvexBody::hpolytope(std::move(normals), std::move(offsets));
    }
    case BodyKind::UnitBall:
    case BodyKind::PNormBall: {
      if (v.norm() > 0)
        throw UnsupportedTransform("transform: ball variants accept v = 0 only");
      const double c = smax;
      const bool conformal = (smax - smin) <= 1e-12 * smax;
      const bool scalar = (A - c * Matrix::Identity(n, n)).norm() <= 1e-12 * c;
      if (body.kind() == BodyKind::UnitBall && conformal)
        return ConvexBody::pnorm_ball(2.0, c, n);
      if (body.kind() == BodyKind::PNormBall &&
          (scalar || (body.p() == 2.0 && conformal)))
        return ConvexBody::pnorm_ball(body.p(), body.radius() * c, n);
      throw UnsupportedTransform(
          "transform: general linear images of ball variants not representable");
    }
  }
  throw InvalidInput("transform: unreachable");
}

std::string ConvexBody::to_json() const {
  nlohmann::ordered_json j;
  switch (kind_) {
    case BodyKind::HPolytope: {
      j["type"] = "hpolytope";
      auto& nr = j["normals"] = nlohmann::ordered_json::array();
      for (int i = 0; i < normals_.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < normals_.cols(); ++k) row.push_back(normals_(i, k));
        nr.push_back(row);
      }
      auto& of = j["offsets"] = nlohmann::json::array();
      for (int i = 0; i < offsets_.size(); ++i) of.push_back(offsets_[i]);
      break;
    }
    case BodyKind::VPolytope: {
      j["type"] = "vpolytope";
      auto& vr = j["vertices"] = nlohmann::ordered_json::array();
      for (int i = 0; i < vertices_.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < vertices_.cols(); ++k) row.push_back(vertices_(i, k));
        vr.push_back(row);
      }
      break;
    }
    case BodyKind::PNormBall:
      j["type"] = "pnorm";
      j["p"] = p_;
      j["radius"] = radius_;
      j["dim"] = dim_;
      break;
    case BodyKind::UnitBall:
      j["type"] = "ball";
      j["dim"] = dim_;
      break;
  }
  return j.dump();
}

ConvexBody ConvexBody::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("body JSON parse error: ") + e.what());
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "hpolytope") {
    const auto& nr = j.at("normals");
    const auto& of = j.at("offsets");
    if (nr.empty()) throw InvalidInput("body JSON: empty normals");
    Matrix normals(static_cast<int>(nr.size()),
                   static_cast<int>(nr[0].size()));
    for (size_t i = 0; i < nr.size(); ++i)
      for (size_t k = 0; k < nr[i].size(); ++k)
        normals(static_cast<int>(i), static_cast<int>(k)) =
            nr[i][k].get<double>();
    Vector offsets(static_cast<int>(of.size()));
    for (size_t i = 0; i < of.size(); ++i)
      offsets[static_cast<int>(i)] = of[i].get<double>();
    return hpolytope(std::move(normals), std::move(offsets));
  }
  if (type == "vpolytope") {
    const auto& vr = j.at("vertices");
    if (vr.empty()) throw InvalidInput("body JSON: empty vertices");
    Matrix vertices(static_cast<int>(vr.size()),
                    static_cast<int>(vr[0].size()));
    for (size_t i = 0; i < vr.size(); ++i)
      for (size_t k = 0; k < vr[i].size(); ++k)
        vertices(static_cast<int>(i), static_cast<int>(k)) =
            vr[i][k].get<double>();
    return vpolytope(std::move(vertices));
  }
  if (type == "pnorm")
    return pnorm_ball(j.at("p").get<double>(), j.at("radius").get<double>(),
                      j.value("dim", 2));
  if (type == "ball") return unit_ball(j.value("dim", 2));
  throw InvalidInput("body JSON: unknown type '" + type + "'");
}

}  // namespace johnforge

#include "courant/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "courant/constants.hpp"
#include "courant/error.hpp"

namespace courant {

using nlohmann::json;

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) fail(ErrorKind::validation, std::string("domain: missing field '") + key + "'");
  return doc.at(key);
}

double number(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number()) fail(ErrorKind::validation, std::string("domain: field '") + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_integer()) fail(ErrorKind::validation, std::string("domain: field '") + key + "' must be an integer");
  return v.get<int>();
}

Point2 point(const json& v, const char* key) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(ErrorKind::validation, std::string("domain: field '") + key + "' must hold [x, y] pairs");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

RasterDomain raster_from_json(const json& doc) {
  const int m = integer(doc, "m");
  if (m != 2 && m != 3) fail(ErrorKind::validation, "domain: field 'm' must be 2 or 3");
  const double h = number(doc, "h");
  Vec3 origin{0.0, 0.0, 0.0};
  if (doc.contains("origin")) {
    const json& o = doc.at("origin");
    if (!o.is_array() || static_cast<int>(o.size()) != m) fail(ErrorKind::validation, "domain: field 'origin' must have m entries");
    for (int a = 0; a < m; ++a) {
      if (!o[a].is_number()) fail(ErrorKind::validation, "domain: field 'origin' must be numeric");
      origin[a] = o[a].get<double>();
    }
  }
  const json& rows = field(doc, "mask");
  auto bad = [] { fail(ErrorKind::validation, "domain: field 'mask' must be a rectangular nested 0/1 array"); };
  Index3 dims{1, 1, 1};
  std::vector<std::uint8_t> mask;
  auto read_plane = [&](const json& plane) {
    if (!plane.is_array() || plane.empty()) bad();
    if (dims[1] == 1 && mask.empty()) dims[1] = static_cast<int>(plane.size());
    if (static_cast<int>(plane.size()) != dims[1]) bad();
    for (const json& row : plane) {
      if (!row.is_array() || row.empty()) bad();
      if (dims[0] == 1 && mask.empty()) dims[0] = static_cast<int>(row.size());
      if (static_cast<int>(row.size()) != dims[0]) bad();
      for (const json& c : row) {
        if (!c.is_number_integer()) bad();
        mask.push_back(c.get<int>() != 0 ? 1 : 0);
      }
    }
  };
  if (!rows.is_array() || rows.empty()) bad();
  if (m == 2) {
    read_plane(rows);
  } else {
    dims[2] = static_cast<int>(rows.size());
    for (const json& plane : rows) read_plane(plane);
  }
  return RasterDomain(m, h, origin, dims, std::move(mask));
}

}  // namespace

Domain domain_from_json(const json& doc) {
  const json& t = field(doc, "type");
  if (!t.is_string()) fail(ErrorKind::validation, "domain: field 'type' must be a string");
  const std::string type = t.get<std::string>();
  if (type == "raster") return raster_from_json(doc);
  if (type == "polygon") {
    const json& vs = field(doc, "vertices");
    if (!vs.is_array()) fail(ErrorKind::validation, "domain: field 'vertices' must be an array");
    std::vector<Point2> pts;
    for (const json& v : vs) pts.push_back(point(v, "vertices"));
    return ConvexPolygon(std::move(pts));
  }
  if (type == "disk") {
    Disk d;
    if (doc.contains("center")) d.center = point(doc.at("center"), "center");
    d.radius = number(doc, "radius");
    if (!(d.radius > 0.0) || !std::isfinite(d.radius)) fail(ErrorKind::validation, "domain: field 'radius' must be positive");
    return d;
  }
  if (type == "square_fractal") return build_snowflake(integer(doc, "generations"));
  if (type == "cube_fractal") return build_cube_fractal(number(doc, "s"), integer(doc, "generations"));
  fail(ErrorKind::validation, "domain: unknown type '" + type + "'");
}

Domain read_domain(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::validation, "domain: cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorKind::validation, "domain: '" + path + "' is not valid JSON: " + e.what());
  }
  return domain_from_json(doc);
}

json raster_to_json(const RasterDomain& raster) {
  const int m = raster.dim();
  const Index3& d = raster.dims();
  json origin = json::array();
  for (int a = 0; a < m; ++a) origin.push_back(raster.origin()[a]);
  auto plane = [&](int k) {
    json rows = json::array();
    for (int j = 0; j < d[1]; ++j) {
      json row = json::array();
      for (int i = 0; i < d[0]; ++i) row.push_back(raster.inside(raster.index(i, j, k)) ? 1 : 0);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  json mask;
  if (m == 2) {
    mask = plane(0);
  } else {
    mask = json::array();
    for (int k = 0; k < d[2]; ++k) mask.push_back(plane(k));
  }
  return {{"type", "raster"}, {"m", m}, {"h", raster.spacing()}, {"origin", origin}, {"mask", std::move(mask)}};
}

json domain_to_json(const Domain& domain) {
  return std::visit(overloaded{
                        [](const RasterDomain& r) { return raster_to_json(r); },
                        [](const ConvexPolygon& p) {
                          json vs = json::array();
                          for (const auto& v : p.vertices()) vs.push_back({v[0], v[1]});
                          return json{{"type", "polygon"}, {"vertices", vs}};
                        },
                        [](const Disk& d) {
                          return json{{"type", "disk"}, {"center", {d.center[0], d.center[1]}}, {"radius", d.radius}};
                        },
                        [](const SnowflakeSpec& s) { return json{{"type", "square_fractal"}, {"generations", s.generations}}; },
                        [](const CubeFractalSpec& c) {
                          return json{{"type", "cube_fractal"}, {"s", c.s}, {"generations", c.generations}};
                        },
                    },
                    domain);
}

std::string domain_type(const Domain& domain) {
  static const char* names[] = {"raster", "polygon", "disk", "square_fractal", "cube_fractal"};
  return names[domain.index()];
}

int domain_dimension(const Domain& domain) {
  if (const auto* r = std::get_if<RasterDomain>(&domain)) return r->dim();
  return std::holds_alternative<CubeFractalSpec>(domain) ? 3 : 2;
}

double domain_measure(const Domain& domain) {
  return std::visit(overloaded{
                        [](const RasterDomain& r) { return r.measure(); },
                        [](const ConvexPolygon& p) { return p.area(); },
                        [](const Disk& d) { return d.area(); },
                        [](const SnowflakeSpec& s) { return s.measure(); },
                        [](const CubeFractalSpec& c) { return cube_fractal_stats(c.s).measure; },
                    },
                    domain);
}

RasterDomain domain_raster(const Domain& domain, std::optional<double> h) {
  constexpr double kDefaultH = 1.0 / 128.0;
  return std::visit(
      overloaded{
          [&](const RasterDomain& r) {
            if (h && std::abs(*h - r.spacing()) > 1e-12 * r.spacing()) {
              fail(ErrorKind::validation, "h: a raster domain is fixed at its own spacing");
            }
            return r;
          },
          [&](const ConvexPolygon& p) { return rasterize(p, h.value_or(kDefaultH)); },
          [&](const Disk& d) { return rasterize(d, h.value_or(kDefaultH)); },
          [&](const SnowflakeSpec& s) {
            if (!h) return rasterize(s);
            const double q = 1.0 / (*h * std::pow(3.0, s.generations));
            if (std::abs(q - std::round(q)) > 1e-9 || std::round(q) < 1.0) {
              fail(ErrorKind::alignment, "h: must be 3^-J / q for a positive integer q");
            }
            return rasterize(s, static_cast<int>(std::round(q)));
          },
          [&](const CubeFractalSpec& c) {
            if (h) return rasterize(c, *h);
            const double inv = 1.0 / c.s;
            const bool odd_integer = std::abs(inv - std::round(inv)) < 1e-9 && static_cast<long>(std::round(inv)) % 2 == 1;
            return rasterize(c, odd_integer ? std::pow(c.s, c.generations) : 1.0 / 64.0);
          },
      },
      domain);
}

MuFunction domain_mu(const Domain& domain) {
  if (const auto* p = std::get_if<ConvexPolygon>(&domain)) {
    return {[body = *p](double eps) { return mu(body, eps); }, p->area(), std::nullopt};
  }
  if (const auto* d = std::get_if<Disk>(&domain)) {
    return {[disk = *d](double eps) { return mu(disk, eps); }, d->area(), std::nullopt};
  }
  auto f = std::make_shared<const DistanceField>(domain_raster(domain));
  return {[f](double eps) { return f->mu(eps); }, f->measure(), f->spacing()};
}

EpsilonOmega domain_epsilon(const Domain& domain) {
  const PleijelConstants c = pleijel_constants(domain_dimension(domain));
  if (const auto* p = std::get_if<ConvexPolygon>(&domain)) return epsilon_omega(*p, c);
  if (const auto* d = std::get_if<Disk>(&domain)) return epsilon_omega(*d, c);
  return epsilon_omega(DistanceField(domain_raster(domain)), c);
}

BoundReport domain_bound_report(const Domain& domain, bool analytic) {
  const int m = domain_dimension(domain);
  if (std::holds_alternative<SnowflakeSpec>(domain)) {
    // The closed forms describe the full snowflake, not the truncation.
    return make_bound_report(2, 2.0, snowflake_epsilon_lower(), "snowflake_closed_form");
  }
  if (const auto* cf = std::get_if<CubeFractalSpec>(&domain)) {
    return make_bound_report(3, cube_fractal_stats(cf->s).measure, cube_fractal_epsilon_lower(cf->s),
                             "cube_fractal_closed_form");
  }
  if (analytic) {
    const ConvexPolygon* p = std::get_if<ConvexPolygon>(&domain);
    const Disk* d = std::get_if<Disk>(&domain);
    if (p || d) {
      const double area = p ? p->area() : d->area();
      const double perim = p ? p->perimeter() : d->perimeter();
      return make_bound_report(2, area, convex_bounds(2, area, perim).eps_lower, "convex_lower_bound");
    }
    fail(ErrorKind::validation, "analytic: no analytic critical width for a raster domain");
  }
  const EpsilonOmega e = domain_epsilon(domain);
  return make_bound_report(m, domain_measure(domain), e.value, e.provenance, e.resolution_h);
}

std::optional<std::uint64_t> exact_counting_function(const Domain& domain, double lambda) {
  if (const auto* p = std::get_if<ConvexPolygon>(&domain)) {
    if (const auto sides = p->rectangle_sides()) return rectangle_counting_function((*sides)[0], (*sides)[1], lambda);
    return std::nullopt;
  }
  if (const auto* r = std::get_if<RasterDomain>(&domain)) {
    if (r->dim() != 2 || r->inside_count() == 0) return std::nullopt;
    int lo[2] = {r->dims()[0], r->dims()[1]}, hi[2] = {-1, -1};
    for (std::size_t idx = 0; idx < r->size(); ++idx) {
      if (!r->inside(idx)) continue;
      const Index3 ijk = r->coords(idx);
      for (int a = 0; a < 2; ++a) {
        lo[a] = std::min(lo[a], ijk[a]);
        hi[a] = std::max(hi[a], ijk[a]);
      }
    }
    const std::size_t box = static_cast<std::size_t>(hi[0] - lo[0] + 1) * static_cast<std::size_t>(hi[1] - lo[1] + 1);
    if (box != r->inside_count()) return std::nullopt;
    return rectangle_counting_function((hi[0] - lo[0] + 1) * r->spacing(), (hi[1] - lo[1] + 1) * r->spacing(), lambda);
  }
  return std::nullopt;
}

}  // namespace courant

#include "helicoid/meshio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include "format.hpp"
#include "helicoid/diffgeo.hpp"
#include "helicoid/errors.hpp"

namespace helicoid {

namespace {

double field_value(const std::string& name, const FundamentalForms& f, const Curvatures& c) {
  if (name == "H") return c.H;
  if (name == "K") return c.K;
  if (name == "E") return f.E;
  if (name == "F") return f.F;
  if (name == "G") return f.G;
  if (name == "L") return f.L;
  if (name == "M") return f.M;
  if (name == "N") return f.N;
  if (name == "detI") return f.detI;
  throw DomainError("unknown field '" + name + "'");
}

template <class Writer>
void with_file(const std::string& path, std::ios::openmode mode, Writer&& w) {
  std::ofstream os(path, mode);
  if (!os) throw IOError("cannot open '" + path + "' for writing");
  w(os);
  os.flush();
  if (!os) throw IOError("write to '" + path + "' failed");
}

template <class T>
void put_le(std::ostream& os, T v) {
  static_assert(std::endian::native == std::endian::little, "PLY writer assumes little-endian");
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

}  // namespace

double GridSpec::r_at(int i) const {
  return nr == 1 ? r_min : r_min + (r_max - r_min) * i / (nr - 1);
}

double GridSpec::theta_at(int j) const {
  const double span = theta_max - theta_min;
  if (wrap) return theta_min + span * j / ntheta;
  return ntheta == 1 ? theta_min : theta_min + span * j / (ntheta - 1);
}

std::size_t MeshBuffer::degenerate_count() const {
  return static_cast<std::size_t>(std::count(degenerate.begin(), degenerate.end(), 1));
}

const ScalarField* MeshBuffer::field(const std::string& name) const {
  for (const ScalarField& f : fields)
    if (f.name == name) return &f;
  return nullptr;
}

const std::vector<std::string>& known_fields() {
  static const std::vector<std::string> names = {"H", "K", "E", "F", "G", "L", "M", "N", "detI"};
  return names;
}

MeshBuffer sample_grid(const SurfaceSpec& spec, const GridSpec& grid,
                       const std::vector<std::string>& fields, bool with_normals) {
  spec.validate();
  if (grid.nr < 2 || grid.ntheta < 2) throw DomainError("mesh grid needs nr, ntheta >= 2");
  if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min) || !std::isfinite(grid.r_max))
    throw DomainError("mesh r-range must satisfy 0 < r_min < r_max");
  if (!(grid.theta_max > grid.theta_min) || !std::isfinite(grid.theta_max - grid.theta_min))
    throw DomainError("mesh theta-range must satisfy theta_min < theta_max");
  for (const std::string& name : fields)
    if (std::find(known_fields().begin(), known_fields().end(), name) == known_fields().end())
      throw DomainError("unknown field '" + name + "'");

  MeshBuffer mesh;
  mesh.grid = grid;
  const std::size_t nv = std::size_t(grid.nr) * std::size_t(grid.ntheta);
  mesh.vertices.reserve(nv);
  mesh.degenerate.assign(nv, 0);
  for (const std::string& name : fields) mesh.fields.push_back({name, std::vector<double>(nv)});
  if (with_normals) mesh.normals.resize(nv, Vec3::Zero());

  const bool need_forms = with_normals || !fields.empty();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < grid.nr; ++i) {
    for (int j = 0; j < grid.ntheta; ++j) {
      const std::size_t idx = std::size_t(i) * grid.ntheta + j;
      const double r = grid.r_at(i), t = grid.theta_at(j);
      const Jet2 jt = jet(spec, r, t);
      if (!jt.p.allFinite()) throw DomainError("surface evaluated to a non-finite point");
      mesh.vertices.push_back(jt.p);
      if (!need_forms) continue;
      try {
        const FundamentalForms f = fundamental_forms(jt);
        const Curvatures c = curvatures(f);
        for (ScalarField& sf : mesh.fields) sf.values[idx] = field_value(sf.name, f, c);
        if (with_normals) mesh.normals[idx] = f.normal;
      } catch (const DegenerateMetric&) {
        mesh.degenerate[idx] = 1;
        for (ScalarField& sf : mesh.fields) sf.values[idx] = nan;
      }
    }
  }

  const int cols = grid.wrap ? grid.ntheta : grid.ntheta - 1;
  mesh.faces.reserve(std::size_t(grid.nr - 1) * cols * 2);
  for (int i = 0; i + 1 < grid.nr; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int jn = (j + 1) % grid.ntheta;
      const auto v00 = std::uint32_t(i * grid.ntheta + j);
      const auto v01 = std::uint32_t(i * grid.ntheta + jn);
      const auto v10 = std::uint32_t((i + 1) * grid.ntheta + j);
      const auto v11 = std::uint32_t((i + 1) * grid.ntheta + jn);
      mesh.faces.push_back({v00, v10, v11});
      mesh.faces.push_back({v00, v11, v01});
    }
  }
  return mesh;
}

void write_obj(const MeshBuffer& mesh, std::ostream& os) {
  using detail::fmt17;
  for (const Vec3& v : mesh.vertices)
    os << "v " << fmt17(v.x()) << ' ' << fmt17(v.y()) << ' ' << fmt17(v.z()) << '\n';
  for (const Vec3& n : mesh.normals)
    os << "vn " << fmt17(n.x()) << ' ' << fmt17(n.y()) << ' ' << fmt17(n.z()) << '\n';
  for (const auto& f : mesh.faces)
    os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_obj(const MeshBuffer& mesh, const std::string& path) {
  with_file(path, std::ios::out | std::ios::trunc, [&](std::ostream& os) { write_obj(mesh, os); });
}

void write_ply(const MeshBuffer& mesh, std::ostream& os) {
  const bool normals = !mesh.normals.empty();
  os << "ply\nformat binary_little_endian 1.0\n";
  os << "element vertex " << mesh.vertices.size() << '\n';
  os << "property double x\nproperty double y\nproperty double z\n";
  if (normals) os << "property double nx\nproperty double ny\nproperty double nz\n";
  for (const ScalarField& f : mesh.fields) os << "property double " << f.name << '\n';
  os << "element face " << mesh.faces.size() << '\n';
  os << "property list uchar uint vertex_indices\nend_header\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    for (int k = 0; k < 3; ++k) put_le(os, mesh.vertices[i][k]);
    if (normals)
      for (int k = 0; k < 3; ++k) put_le(os, mesh.normals[i][k]);
    for (const ScalarField& f : mesh.fields) put_le(os, f.values[i]);
  }
  for (const auto& f : mesh.faces) {
    put_le(os, std::uint8_t{3});
    for (std::uint32_t idx : f) put_le(os, idx);
  }
}

void write_ply(const MeshBuffer& mesh, const std::string& path) {
  with_file(path, std::ios::out | std::ios::trunc | std::ios::binary,
            [&](std::ostream& os) { write_ply(mesh, os); });
}

void write_fields_csv(const MeshBuffer& mesh, std::ostream& os) {
  using detail::fmt17;
  const bool flags = mesh.degenerate_count() > 0;
  os << "r,theta,x,y,z";
  for (const ScalarField& f : mesh.fields) os << ',' << f.name;
  if (flags) os << ",degenerate";
  os << '\n';
  const int nt = mesh.grid.ntheta;
  for (std::size_t idx = 0; idx < mesh.vertices.size(); ++idx) {
    const int i = int(idx / nt), j = int(idx % nt);
    const Vec3& v = mesh.vertices[idx];
    os << fmt17(mesh.grid.r_at(i)) << ',' << fmt17(mesh.grid.theta_at(j)) << ',' << fmt17(v.x())
       << ',' << fmt17(v.y()) << ',' << fmt17(v.z());
    for (const ScalarField& f : mesh.fields) os << ',' << fmt17(f.values[idx]);
    if (flags) os << ',' << int(mesh.degenerate[idx]);
    os << '\n';
  }
}

void write_fields_csv(const MeshBuffer& mesh, const std::string& path) {
  with_file(path, std::ios::out | std::ios::trunc,
            [&](std::ostream& os) { write_fields_csv(mesh, os); });
}

}  // namespace helicoid

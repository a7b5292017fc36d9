#pragma once

// Tensor-grid sampling of a surface into a triangle mesh with optional
// per-vertex scalar fields, and writers for OBJ, binary PLY and CSV.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "helicoid/surfaces.hpp"

namespace helicoid {

struct GridSpec {
  int nr = 64;
  int ntheta = 128;
  double r_min = 0.2, r_max = 1.5;
  double theta_min = 0.0, theta_max = 6.283185307179586;
  /// When set, theta covers [theta_min, theta_max) and the last column is
  /// stitched to the first.
  bool wrap = true;

  double r_at(int i) const;
  double theta_at(int j) const;
};

struct ScalarField {
  std::string name;
  std::vector<double> values;
};

struct MeshBuffer {
  GridSpec grid;
  std::vector<Vec3> vertices;
  std::vector<Vec3> normals;  ///< empty unless requested
  std::vector<ScalarField> fields;
  std::vector<std::array<std::uint32_t, 3>> faces;
  /// 1 where forms or curvatures could not be computed (fields hold NaN).
  std::vector<std::uint8_t> degenerate;

  std::size_t degenerate_count() const;
  const ScalarField* field(const std::string& name) const;
};

/// Names accepted by sample_grid.
const std::vector<std::string>& known_fields();

/// Vertex (i, j) sits at index i * ntheta + j. Each quad is split along its
/// (i, j) -> (i+1, j+1) diagonal.
MeshBuffer sample_grid(const SurfaceSpec& spec, const GridSpec& grid,
                       const std::vector<std::string>& fields, bool with_normals = false);

/// "v x y z", optional "vn", then "f i j k" (1-based), 17 significant digits.
void write_obj(const MeshBuffer& mesh, std::ostream& os);
void write_obj(const MeshBuffer& mesh, const std::string& path);

/// Binary little-endian PLY with double vertex properties (and fields).
void write_ply(const MeshBuffer& mesh, std::ostream& os);
void write_ply(const MeshBuffer& mesh, const std::string& path);

/// Header r,theta,x,y,z,<fields>; a trailing "degenerate" column is added
/// only when some vertex is flagged.
void write_fields_csv(const MeshBuffer& mesh, std::ostream& os);
void write_fields_csv(const MeshBuffer& mesh, const std::string& path);

}  // namespace helicoid

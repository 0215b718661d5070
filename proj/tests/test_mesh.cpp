#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "sgdg/errors.hpp"
#include "sgdg/mesh.hpp"
#include "test_util.hpp"

using namespace sgdg;

TEST_CASE("affine square element") {
  const LobattoOperator op = lobatto_operator(3);
  StructuredSpec spec;
  const Mesh m = structured_mesh(spec, op);
  CHECK(m.elements.size() == 16);
  double total = 0.0;
  for (const Element& e : m.elements) {
    CHECK(e.volume == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
    total += e.volume;
    for (std::size_t q = 0; q < e.x.size(); ++q) {
      CHECK(e.jac[q] == doctest::Approx(1.0 / 64.0).epsilon(1e-13));
      CHECK(e.jxi[q][0] == doctest::Approx(0.125).epsilon(1e-13));
      CHECK(std::abs(e.jxi[q][1]) <= 1e-15);
      CHECK(std::abs(e.jeta[q][0]) <= 1e-15);
      CHECK(e.jeta[q][1] == doctest::Approx(0.125).epsilon(1e-13));
    }
    CHECK(metric_identity_residual(e, op) <= 1e-14);
    for (int k = 0; k < op.n(); ++k) {
      CHECK(e.face_normal[0][k][0] == doctest::Approx(1.0));
      CHECK(e.face_normal[1][k][1] == doctest::Approx(1.0));
      CHECK(e.face_normal[2][k][0] == doctest::Approx(-1.0));
      CHECK(e.face_normal[3][k][1] == doctest::Approx(-1.0));
      CHECK(e.face_jac[0][k] == doctest::Approx(0.125));
    }
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);
  validate_connectivity(m);
}

TEST_CASE("warped mesh metrics") {
  const LobattoOperator op = lobatto_operator(4);
  StructuredSpec spec;
  spec.warp = 0.05;
  const Mesh m = structured_mesh(spec, op);
  double total = 0.0;
  for (const Element& e : m.elements) {
    for (double J : e.jac) CHECK(J > 0.0);
    CHECK(metric_identity_residual(e, op) <= 1e-12);
    CHECK(averaged_normal_identity_residual(e, op) <= 1e-12);
    total += e.volume;
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);
  validate_connectivity(m);

  // the surface Jacobian times the unit normal is the contravariant vector
  const Element& e = m.elements[5];
  const int n = op.n();
  for (int k = 0; k < n; ++k) {
    const Vec2 a = e.face_jac[0][k] * e.face_normal[0][k];
    CHECK(a[0] == doctest::Approx(e.jxi[op.p + n * k][0]).epsilon(1e-14));
    CHECK(a[1] == doctest::Approx(e.jxi[op.p + n * k][1]).epsilon(1e-14));
  }
}

TEST_CASE("folded elements are rejected") {
  const LobattoOperator op = lobatto_operator(3);
  StructuredSpec spec;
  spec.warp = 0.5;
  CHECK_THROWS_AS(structured_mesh(spec, op), MeshError);
  spec.warp = 0.0;
  spec.nx = 0;
  CHECK_THROWS_AS(structured_mesh(spec, op), ConfigError);
  spec.nx = 2;
  spec.left = BoundaryKind::kSymmetry;
  CHECK_THROWS_AS(structured_mesh(spec, op), ConfigError);
}

TEST_CASE("averaged normals") {
  const LobattoOperator op = lobatto_operator(3);
  StructuredSpec spec;
  spec.warp = 0.04;
  const Mesh m = structured_mesh(spec, op);
  const Element& e = m.elements[6];
  const int n = op.n();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Vec2 self = normal_average(e, op.p, RefDir::kXi, i, j, i);
      CHECK(self[0] == e.jxi[i + n * j][0]);
      CHECK(self[1] == e.jxi[i + n * j][1]);
      for (int k = 0; k < n; ++k) {
        const Vec2 a = normal_average(e, op.p, RefDir::kXi, i, j, k);
        const Vec2 b = normal_average(e, op.p, RefDir::kXi, k, j, i);
        CHECK(a[0] == b[0]);
        CHECK(a[1] == b[1]);
        const Vec2 c = normal_average(e, op.p, RefDir::kEta, i, j, k);
        const Vec2 d = normal_average(e, op.p, RefDir::kEta, i, k, j);
        CHECK(c[0] == d[0]);
        CHECK(c[1] == d[1]);
      }
    }
  const Mesh flat = structured_mesh(StructuredSpec{}, op);
  const Vec2 avg = normal_average(flat.elements[0], op.p, RefDir::kEta, 1, 0, 3);
  CHECK(avg[1] == doctest::Approx(flat.elements[0].jeta[0][1]));
}

TEST_CASE("segments") {
  const LobattoOperator op = lobatto_operator(2);
  const Element e = build_segment(0.5, 2.0, op);
  for (double J : e.jac) CHECK(J == doctest::Approx(0.75));
  CHECK(e.face_normal[0][0][0] == 1.0);
  CHECK(e.face_normal[1][0][0] == -1.0);
  const Mesh m = interval_mesh(5, -1.0, 1.0, op, BoundaryKind::kPeriodic, BoundaryKind::kPeriodic);
  CHECK(m.elements[0].link[1].elem == 4);
  CHECK(m.elements[4].link[0].elem == 0);
  validate_connectivity(m);
  CHECK_THROWS_AS(interval_mesh(0, 0.0, 1.0, op), ConfigError);
}

TEST_CASE("mesh file round trip") {
  const LobattoOperator op = lobatto_operator(2);
  StructuredSpec spec;
  spec.nx = 3;
  spec.ny = 2;
  spec.warp = 0.03;
  spec.bottom = spec.top = BoundaryKind::kSymmetry;
  const Mesh m = structured_mesh(spec, op);
  const std::string path = (std::filesystem::temp_directory_path() / "sgdg_roundtrip.mesh").string();
  write_mesh(m, path);
  const Mesh r = read_mesh(path, op);
  REQUIRE(r.elements.size() == m.elements.size());
  for (std::size_t e = 0; e < m.elements.size(); ++e) {
    for (std::size_t q = 0; q < m.elements[e].x.size(); ++q) CHECK(r.elements[e].jac[q] == m.elements[e].jac[q]);
    for (int f = 0; f < 4; ++f) {
      CHECK(r.elements[e].link[f].elem == m.elements[e].link[f].elem);
      CHECK(r.elements[e].link[f].kind == m.elements[e].link[f].kind);
    }
  }
  CHECK_THROWS_AS(read_mesh(path, lobatto_operator(3)), MeshError);
  CHECK_THROWS_AS(read_mesh("/nonexistent/mesh.txt", op), ConfigError);
}

TEST_CASE("hand-built mesh with a reversed face") {
  const LobattoOperator op = lobatto_operator(2);
  const std::string path = testutil::write_rotated_pair_mesh(op);
  const Mesh m = read_mesh(path, op);
  CHECK(m.elements[0].link[0].elem == 1);
  CHECK(m.elements[0].link[0].face == 0);
  CHECK(m.elements[0].link[0].reversed);
  for (int k = 0; k < op.n(); ++k) {
    const int a = m.face_node(0, k);
    const int b = m.face_node(0, m.neighbour_face_node(m.elements[0].link[0], k));
    CHECK(m.elements[0].x[a][0] == doctest::Approx(m.elements[1].x[b][0]));
    CHECK(m.elements[0].x[a][1] == doctest::Approx(m.elements[1].x[b][1]));
  }

  // a face listed with the wrong orientation no longer matches
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto pos = text.find("0 0 1 0 1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 9, "0 0 1 0 0");
  const std::string bad = path + ".bad";
  std::ofstream(bad) << text;
  CHECK_THROWS_AS(read_mesh(bad, op), MeshError);
}

TEST_CASE("boundary tags") {
  CHECK(boundary_kind_from_string("symmetry") == BoundaryKind::kSymmetry);
  CHECK(boundary_kind_from_string("supersonic-inflow") == BoundaryKind::kSupersonicInflow);
  CHECK(std::string(to_string(BoundaryKind::kNonreflective)) == "nonreflective");
  CHECK_THROWS_AS(boundary_kind_from_string("wall"), ConfigError);
}

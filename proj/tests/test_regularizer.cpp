#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <curvreg/regularizer.hpp>
#include <curvreg/synthetic.hpp>

#include "oracles.hpp"

using namespace curvreg;

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

RegState full_state(const Graph& g) {
  RegConfig cfg;
  cfg.kind = RegKind::full_pairs;
  return build_state(g, cfg);
}

}  // namespace

TEST_CASE("regularizer kind names round-trip") {
  REQUIRE(reg_kind_name(RegKind::none) == "none");
  REQUIRE(reg_kind_name(RegKind::full_pairs) == "c");
  REQUIRE(reg_kind_name(RegKind::sampled_pairs) == "s");
  REQUIRE(reg_kind_name(RegKind::walks) == "a");
  for (const char* s : {"none", "c", "s", "a", "full", "sampled", "walk"})
    REQUIRE(reg_kind_name(parse_reg_kind(s)) != "");
  REQUIRE(parse_reg_kind("c") == RegKind::full_pairs);
  REQUIRE(parse_reg_kind("s") == RegKind::sampled_pairs);
  REQUIRE(parse_reg_kind("a") == RegKind::walks);
  REQUIRE_THROWS_AS(parse_reg_kind("bogus"), std::invalid_argument);
}

TEST_CASE("path cache construction per kind") {
  SECTION("none is inactive") {
    RegConfig cfg;
    RegState st = build_state(path_graph(5), cfg);
    REQUIRE_FALSE(st.active());
    REQUIRE(st.paths.paths.empty());
  }
  SECTION("full pairs on a triangle: one path per unordered pair") {
    Graph g = complete_graph(3);
    RegState st = full_state(g);
    REQUIRE(st.active());
    REQUIRE(st.paths.paths.size() == 3);
    REQUIRE(st.paths.source == PathSource::all_pairs);
  }
  SECTION("full pairs is capped with advice to sample") {
    Graph g = path_graph(kFullPairsNodeCap + 1);
    RegConfig cfg;
    cfg.kind = RegKind::full_pairs;
    REQUIRE_THROWS_WITH(build_state(g, cfg),
                        Catch::Matchers::ContainsSubstring("--reg s"));
  }
  SECTION("sampled pairs: C(size, 2) paths on a connected graph") {
    Graph g = path_graph(10);
    RegConfig cfg;
    cfg.kind = RegKind::sampled_pairs;
    cfg.sample_size = 3;
    cfg.seed = 5;
    RegState st = build_state(g, cfg);
    REQUIRE(st.paths.paths.size() == 3);  // C(3,2)
    REQUIRE(st.paths.source == PathSource::sampled_pairs);
    RegState again = build_state(g, cfg);
    REQUIRE(st.paths.content_hash() == again.paths.content_hash());
  }
  SECTION("sample size larger than n clamps to n") {
    Graph g = path_graph(6);
    RegConfig cfg;
    cfg.kind = RegKind::sampled_pairs;
    cfg.sample_size = 64;
    RegState st = build_state(g, cfg);
    REQUIRE(st.paths.paths.size() == 15);  // C(6,2)
  }
  SECTION("walk kind generates or shares walks") {
    Graph g = cycle_graph(8);
    RegConfig cfg;
    cfg.kind = RegKind::walks;
    cfg.walks_per_node = 2;
    cfg.walk_length = 5;
    cfg.seed = 9;
    RegState own = build_state(g, cfg);
    REQUIRE(own.paths.source == PathSource::random_walk);
    REQUIRE_FALSE(own.paths.paths.empty());

    PathSet shared = random_walks(g, 3, 6, WalkStrategy{}, 123);
    RegState borrowed = build_state(g, cfg, &shared);
    REQUIRE(borrowed.paths.content_hash() == shared.content_hash());
  }
}

TEST_CASE("curvature penalty values on hand-checked embeddings") {
  Graph g = path_graph(3);
  RegState st = full_state(g);  // paths: [0,1], [0,1,2], [1,2]

  SECTION("collinear embedding has zero penalty") {
    Matrix m = from_rows({{0, 0}, {1, 0}, {2, 0}});
    REQUIRE(omega_loss(m, st) == Catch::Approx(0.0).margin(1e-15));
  }
  SECTION("right angle costs 1 - cos(pi/2) = 1") {
    Matrix m = from_rows({{0, 0}, {1, 0}, {1, 1}});
    REQUIRE(omega_loss(m, st) == Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("full backtrack costs 1 - cos(pi) = 2") {
    Matrix m = from_rows({{0, 0}, {1, 0}, {0, 1e-30}});
    // displacement 1->2 is almost exactly opposite to 0->1
    REQUIRE(omega_loss(m, st) == Catch::Approx(2.0).margin(1e-9));
  }
}

TEST_CASE("curvature penalty equals the sum over curvature-field samples") {
  for (std::uint32_t seed = 0; seed < 8; ++seed) {
    Graph g = oracles::random_connected_graph(9, 0.2, seed);
    RegState st = full_state(g);
    Matrix m = oracles::random_embedding(9, 3, seed + 50);
    CurvatureField f = curvature_field(m, st.paths, g.n);
    double expected = 0.0;
    for (const auto& s : f.samples) expected += 1.0 - s.cosine;
    OmegaResult r = omega_loss_grad(m, st);
    REQUIRE(r.loss == Catch::Approx(expected).epsilon(1e-12));
    REQUIRE(r.samples_used == static_cast<long long>(f.samples.size()));
    REQUIRE(r.loss >= 0.0);
  }
}

TEST_CASE("curvature penalty is invariant to rigid motion and scale") {
  Graph g = oracles::random_connected_graph(8, 0.3, 3u);
  RegState st = full_state(g);
  Matrix m = oracles::random_embedding(8, 3, 17u);
  double base = omega_loss(m, st);

  SECTION("translation") {
    Matrix shifted = m;
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) shifted.at(i, j) += 3.7 * (j + 1);
    REQUIRE(omega_loss(shifted, st) == Catch::Approx(base).epsilon(1e-12));
  }
  SECTION("uniform scaling") {
    Matrix scaled = m;
    for (auto& v : scaled.data) v *= 17.0;
    REQUIRE(omega_loss(scaled, st) == Catch::Approx(base).epsilon(1e-9));
  }
  SECTION("plane rotation") {
    Matrix rotated = m;
    double c = std::cos(0.83), s = std::sin(0.83);
    for (int i = 0; i < m.rows; ++i) {
      double a = rotated.at(i, 0), b = rotated.at(i, 1);
      rotated.at(i, 0) = c * a - s * b;
      rotated.at(i, 1) = s * a + c * b;
    }
    REQUIRE(omega_loss(rotated, st) == Catch::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("curvature gradient matches central finite differences") {
  int checked = 0;
  for (std::uint32_t seed = 0; checked < 20; ++seed) {
    int n = 5 + static_cast<int>(seed % 6);
    int d = (seed % 2 == 0) ? 2 : 4;
    Graph g = oracles::random_connected_graph(n, 0.25, seed + 200);
    RegState st = full_state(g);
    if (st.paths.total_interior() == 0) continue;
    Matrix m = oracles::random_embedding(n, d, seed + 31);
    Matrix analytic = omega_gradient(m, st);
    Matrix fd = oracles::fd_gradient([&](const Matrix& x) { return omega_loss(x, st); }, m);
    double err = oracles::gradient_rel_err(analytic, fd);
    INFO("seed " << seed << " n " << n << " d " << d << " err " << err);
    REQUIRE(err < 1e-4);
    ++checked;
  }
}

TEST_CASE("curvature gradient structure") {
  Graph g = path_graph(6);
  RegState st = full_state(g);

  SECTION("straight lines are stationary points") {
    Matrix m(6, 2);
    for (int i = 0; i < 6; ++i) {
      m.at(i, 0) = 1.5 * i;
      m.at(i, 1) = 0.5 * i;
    }
    Matrix grad = omega_gradient(m, st);
    for (double v : grad.data) REQUIRE(std::abs(v) < 1e-12);
  }
  SECTION("gradient rows sum to zero (translation invariance)") {
    Matrix m = oracles::random_embedding(6, 3, 77u);
    Matrix grad = omega_gradient(m, st);
    for (int j = 0; j < grad.cols; ++j) {
      double col = 0.0;
      for (int i = 0; i < grad.rows; ++i) col += grad.at(i, j);
      REQUIRE(std::abs(col) < 1e-9);
    }
  }
  SECTION("degenerate samples are skipped consistently with the curvature field") {
    // Nodes 0 and 1 coincide: every angle touching that segment is skipped by
    // both the penalty and the diagnostic field, so the penalty must equal
    // the sum of 1 - cos over exactly the field's surviving samples.
    Matrix m = oracles::random_embedding(6, 2, 12u);
    for (int j = 0; j < m.cols; ++j) m.at(1, j) = m.at(0, j);
    Matrix grad(m.rows, m.cols);
    OmegaResult r = omega_loss_grad(m, st, &grad);
    REQUIRE(r.degenerate_skips > 0);
    CurvatureField f = curvature_field(m, st.paths, 6);
    REQUIRE(r.degenerate_skips == f.degenerate_skips);
    REQUIRE(r.samples_used == static_cast<long long>(f.samples.size()));
    double expected = 0.0;
    for (const auto& s : f.samples) expected += 1.0 - s.cosine;
    REQUIRE(r.loss == Catch::Approx(expected).epsilon(1e-12));
    REQUIRE(grad.all_finite());
  }
}

TEST_CASE("fully degenerate penalty evaluation is an error") {
  Graph g = path_graph(4);
  RegState st = full_state(g);
  Matrix m(4, 2);  // all nodes at the origin
  REQUIRE_THROWS_WITH(omega_loss(m, st), Catch::Matchers::ContainsSubstring("degenerate"));
}

TEST_CASE("paths without interior vertices cost nothing") {
  Graph g = complete_graph(4);  // all shortest paths are single edges
  RegState st = full_state(g);
  Matrix m = oracles::random_embedding(4, 2, 9u);
  OmegaResult r = omega_loss_grad(m, st);
  REQUIRE(r.loss == 0.0);
  REQUIRE(r.samples_used == 0);
}

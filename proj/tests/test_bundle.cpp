#include <doctest.h>

#include <cmath>
#include <vector>

#include "swsh/bundle.hpp"
#include "swsh/random.hpp"

using swsh::cdouble;
using swsh::EmbeddedSection;
using swsh::GridFunction;
using swsh::Vec3;

namespace {

const cdouble kI{0.0, 1.0};

GridFunction constant(const swsh::GridPtr& g, int s, cdouble v) {
  GridFunction f(g, s);
  for (auto& x : f.samples) x = v;
  return f;
}

// Section whose value at each node is multiplied by a node-dependent scalar.
EmbeddedSection pointwise_scaled(const EmbeddedSection& a, const std::vector<double>& w) {
  EmbeddedSection out = a;
  for (std::size_t node = 0; node < a.grid->node_count(); ++node) {
    for (int c = 0; c < a.dim(); ++c) out.at(node, c) *= w[node];
  }
  return out;
}

double max_abs_interior(const EmbeddedSection& s) { return swsh::max_abs(s); }

}  // namespace

TEST_CASE("embedding and extraction") {
  const auto g = swsh::make_grid(6);
  const EmbeddedSection one = swsh::embed(constant(g, -1, 1.0));
  CHECK(one.helicity == 1);
  CHECK(one.dim() == 3);
  for (int i = 0; i < g->theta_count(); ++i) {
    for (int k = 0; k < g->phi_count(); ++k) {
      const auto et = g->e_theta(i, k);
      const auto ep = g->e_phi(i, k);
      for (int d = 0; d < 3; ++d) {
        const cdouble want = (et[static_cast<std::size_t>(d)] + kI * ep[static_cast<std::size_t>(d)]) / std::sqrt(2.0);
        CHECK(std::abs(one.at(g->index(i, k), d) - want) <= 1e-15);
      }
    }
  }
  CHECK(swsh::transversality_residual(one) <= 1e-15);

  swsh::Rng rng(1);
  for (const int h : {-2, -1, 1, 2}) {
    const GridFunction f = swsh::synthesize(swsh::random_coefficients(rng, -h, 5), g);
    const EmbeddedSection a = swsh::embed(f);
    CHECK(a.dim() == (std::abs(h) == 1 ? 3 : 9));
    CHECK(swsh::transversality_residual(a) <= 1e-12);
    CHECK(swsh::fiber_residual(a) <= 1e-12);
    const GridFunction back = swsh::extract(a);
    CHECK(back.spin_weight == f.spin_weight);
    for (std::size_t n = 0; n < f.samples.size(); ++n) {
      CHECK(std::abs(back.samples[n] - f.samples[n]) <= 1e-14 * (1 + std::abs(f.samples[n])));
    }
    CHECK(swsh::norm(a) == doctest::Approx(swsh::norm(f)).epsilon(1e-13));
  }

  CHECK_THROWS_AS(swsh::embed(constant(g, 3, 1.0)), swsh::Error);
  CHECK_THROWS_AS(swsh::embed(constant(g, 0, 1.0)), swsh::Error);
  CHECK_THROWS_AS(swsh::helicity_basis(3, 1.0, 0.0), swsh::Error);
}

TEST_CASE("embedded top mode has a finite pole limit") {
  const auto g = swsh::make_grid(6);
  const EmbeddedSection a = swsh::embed(swsh::sample_swsh(g, {-1, 1, 1}));
  const auto est = swsh::pole_limit_extrapolate(swsh::extract(a), swsh::Pole::North, 1);
  CHECK(std::isfinite(est.value.real()));
  CHECK(std::abs(est.value + std::sqrt(3.0 / (4.0 * swsh::kPi))) <= 1e-8);
  CHECK(est.residual <= 1e-8);
}

TEST_CASE("gauge covariance of the embedding") {
  const auto g = swsh::make_grid(6);
  std::vector<double> xi(g->node_count());
  for (std::size_t n = 0; n < xi.size(); ++n) xi[n] = 0.1 + 0.77 * static_cast<double>(n % 13);
  swsh::Rng rng(2);
  for (const int h : {-2, -1, 1, 2}) {
    const GridFunction f = swsh::synthesize(swsh::random_coefficients(rng, -h, 4), g);
    const EmbeddedSection direct = swsh::embed(f);
    const EmbeddedSection gauged = swsh::embed(swsh::apply_gauge(f, xi));
    CHECK(swsh::max_abs(direct - gauged) <= 1e-12);
  }
}

TEST_CASE("rotation generator on modes") {
  const auto g = swsh::make_grid(8);
  const Vec3 z{0, 0, 1};
  for (const int s : {-1, -2}) {
    for (int j = std::abs(s); j <= 4; ++j) {
      for (int m = -j; m <= j; ++m) {
        const EmbeddedSection a = swsh::embed(swsh::sample_swsh(g, {s, j, m}));
        CHECK(swsh::max_abs(swsh::apply_J_rotation(a, z) - cdouble(m) * a) <= 1e-6);
      }
    }
  }
  const EmbeddedSection zero(g, 1);
  CHECK(swsh::max_abs(swsh::apply_J_rotation(zero, z)) == 0.0);

  // (J_x + i J_y) raises m with the ladder coefficient.
  for (int m = -3; m < 3; ++m) {
    const EmbeddedSection a = swsh::embed(swsh::sample_swsh(g, {-1, 3, m}));
    const EmbeddedSection raised = swsh::apply_J_rotation(a, {1, 0, 0}) +
                                   kI * swsh::apply_J_rotation(a, {0, 1, 0});
    const double coeff = std::sqrt(double((3 - m) * (3 + 1 + m)));
    const EmbeddedSection want = cdouble(coeff) * swsh::embed(swsh::sample_swsh(g, {-1, 3, m + 1}));
    CHECK(swsh::max_abs(raised - want) <= 1e-5);
  }
  CHECK_THROWS_AS(swsh::apply_J_rotation(zero, {0, 0, 0}), swsh::Error);
}

TEST_CASE("projected spin on the frame section") {
  const auto g = swsh::make_grid(6);
  for (const int h : {-2, -1, 1, 2}) {
    const EmbeddedSection e = swsh::embed(constant(g, -h, 1.0));
    const auto par = swsh::apply_projected_spin(e);
    double worst = 0.0;
    for (int a = 0; a < 3; ++a) {
      std::vector<double> w(g->node_count());
      for (int i = 0; i < g->theta_count(); ++i) {
        for (int k = 0; k < g->phi_count(); ++k) {
          w[g->index(i, k)] = h * g->k_hat(i, k)[static_cast<std::size_t>(a)];
        }
      }
      worst = std::max(worst, swsh::max_abs(par.axis[static_cast<std::size_t>(a)] -
                                            pointwise_scaled(e, w)));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("projected orbital on the frame section") {
  const auto g = swsh::make_grid(6);
  for (const int h : {-2, -1, 1, 2}) {
    const EmbeddedSection e = swsh::embed(constant(g, -h, 1.0));
    const auto perp = swsh::frame_orbital_action(g, h);
    std::vector<double> wx(g->node_count());
    for (int i = 0; i < g->theta_count(); ++i) {
      for (int k = 0; k < g->phi_count(); ++k) {
        const double ct = g->cos_theta(i);
        wx[g->index(i, k)] = h * ct * ct / g->sin_theta(i) * std::cos(g->phi(k));
      }
    }
    CHECK(max_abs_interior(perp.axis[0] - pointwise_scaled(e, wx)) <= 1e-10);
    // J_⊥z ê_h = -h cos θ ê_h
    std::vector<double> wz(g->node_count());
    for (int i = 0; i < g->theta_count(); ++i) {
      for (int k = 0; k < g->phi_count(); ++k) wz[g->index(i, k)] = -h * g->cos_theta(i);
    }
    CHECK(swsh::max_abs(perp.axis[2] - pointwise_scaled(e, wz)) <= 1e-10);
    for (const auto& axis : perp.axis) CHECK(swsh::transversality_residual(axis) <= 1e-10);
    // J_∥ + J_⊥ generates the rotation of the constant section, whose J_z is 0 (m = 0)
    // only through the sum: J_∥z + J_⊥z = h cos θ - h cos θ = 0.
    const auto par = swsh::apply_projected_spin(e);
    CHECK(swsh::max_abs(par.axis[2] + perp.axis[2]) <= 1e-10);
  }
}

TEST_CASE("J_par is a point operator") {
  const auto g = swsh::make_grid(7);
  swsh::Rng rng(4);
  for (const int h : {1, 2, -1}) {
    const EmbeddedSection a = swsh::random_section(rng, g, h, 4);
    EmbeddedSection b = swsh::random_section(rng, g, h, 4);
    const std::size_t node = g->index(3, 5);
    for (int c = 0; c < a.dim(); ++c) b.at(node, c) = a.at(node, c);
    const auto pa = swsh::apply_projected_spin(a);
    const auto pb = swsh::apply_projected_spin(b);
    for (int ax = 0; ax < 3; ++ax) {
      for (int c = 0; c < a.dim(); ++c) {
        CHECK(std::abs(pa.axis[static_cast<std::size_t>(ax)].at(node, c) -
                       pb.axis[static_cast<std::size_t>(ax)].at(node, c)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("product rule at h = 2") {
  const auto g = swsh::make_grid(8);
  swsh::Rng rng(6);
  const EmbeddedSection a = swsh::random_section(rng, g, 1, 2);
  const EmbeddedSection b = swsh::random_section(rng, g, 1, 2);
  const EmbeddedSection ab = swsh::tensor_product(a, b);
  CHECK(ab.helicity == 2);
  CHECK(swsh::fiber_residual(ab) <= 1e-12);

  const auto spin_ab = swsh::apply_projected_spin(ab);
  const auto spin_a = swsh::apply_projected_spin(a);
  const auto spin_b = swsh::apply_projected_spin(b);
  const auto orb_ab = swsh::apply_projected_orbital(ab);
  const auto orb_a = swsh::apply_projected_orbital(a);
  const auto orb_b = swsh::apply_projected_orbital(b);
  for (std::size_t ax = 0; ax < 3; ++ax) {
    const EmbeddedSection spin_rule =
        swsh::tensor_product(spin_a.axis[ax], b) + swsh::tensor_product(a, spin_b.axis[ax]);
    CHECK(swsh::max_abs(spin_ab.axis[ax] - spin_rule) <= 1e-10);
    const EmbeddedSection orb_rule =
        swsh::tensor_product(orb_a.axis[ax], b) + swsh::tensor_product(a, orb_b.axis[ax]);
    CHECK(swsh::max_abs(orb_ab.axis[ax] - orb_rule) <= 1e-8);
  }
  CHECK_THROWS_AS(swsh::tensor_product(a, ab), swsh::Error);
}

TEST_CASE("lemma: P∘S + P∘L generates rotations") {
  const auto g = swsh::make_grid(8);
  swsh::Rng rng(8);
  for (const int h : {-1, 1, 2}) {
    for (int n = 0; n < 4; ++n) {
      const EmbeddedSection a = swsh::random_section(rng, g, h, 8 - std::abs(h));
      const auto par = swsh::apply_projected_spin(a);
      const auto perp = swsh::apply_projected_orbital(a);
      for (const Vec3 v : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}, Vec3{0.6, -0.8, 0}}) {
        const EmbeddedSection split = par.along(v) + perp.along(v);
        CHECK(swsh::max_abs(split - swsh::apply_J_rotation(a, v)) / swsh::norm(a) <= 1e-5);
        CHECK(swsh::transversality_residual(perp.along(v)) <= 1e-10);
        CHECK(swsh::fiber_residual(par.along(v)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("commutator report") {
  const auto g = swsh::make_grid(8);
  const std::vector<EmbeddedSection> zero{EmbeddedSection(g, 1)};
  const auto z = swsh::commutator_report(1, zero);
  CHECK(z.parallel_parallel == 0.0);
  CHECK(z.perp_parallel == 0.0);
  CHECK(z.perp_perp == 0.0);

  swsh::Rng rng(7);
  std::vector<EmbeddedSection> sections;
  for (int n = 0; n < 10; ++n) sections.push_back(swsh::random_section(rng, g, 1, 5));
  const auto r = swsh::commutator_report(1, sections);
  CHECK(r.sections == 10);
  CHECK(r.parallel_parallel <= 1e-5);
  CHECK(r.perp_parallel <= 1e-5);
  CHECK(r.perp_perp <= 1e-5);
  CHECK(r.parallel_so3_defect >= 0.1);
  CHECK(r.perp_so3_defect >= 0.1);
  CHECK(r.parallel_witness < 10);

  CHECK_THROWS_AS(swsh::commutator_report(3, sections), swsh::Error);
  CHECK_THROWS_AS(swsh::commutator_report(2, sections), swsh::Error);
}

#include "salt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>

#include "salt/galerkin.hpp"
#include "salt/operators.hpp"
#include "salt/random.hpp"
#include "salt/spectral.hpp"
#include "salt/vorticity.hpp"

namespace salt {

namespace {

double l2n(const VectorField& f) { return std::sqrt(std::max(0.0, l2_inner(f, f))); }

double safe_ratio(double num, double den) {
  if (num == 0.0) return 0.0;
  return den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
}

class Suite {
 public:
  explicit Suite(const LemmaSuiteOptions& o) : o_(o) {}

  VectorField field(FieldKind kind, std::uint64_t member) const {
    return random_field({.dim = o_.dim, .cutoff = o_.cutoff, .kind = kind, .decay = 2.0, .seed = o_.seed,
                         .member = member});
  }

  VectorField xi(std::uint64_t member) const {
    const int kx = std::max(2, o_.cutoff / 2);
    VectorField x = random_field({.dim = o_.dim, .cutoff = kx, .kind = FieldKind::kDivergenceFree, .decay = 2.0,
                                  .seed = o_.seed ^ 0x9e3779b97f4a7c15ull, .member = member});
    if (o_.zero_xi) x *= 0.0;
    return x;
  }

  void identity(const std::string& name, const std::function<double(int)>& residual) {
    double worst = 0.0;
    for (int t = 0; t < o_.trials; ++t) worst = std::max(worst, residual(t));
    report_.entries.push_back(
        {name, CheckKind::kIdentity, o_.dim, o_.cutoff, worst, kIdentityTolerance, worst <= kIdentityTolerance});
  }

  void inequality(const std::string& name, const std::function<double(int)>& slack) {
    double worst = std::numeric_limits<double>::infinity();
    for (int t = 0; t < o_.trials; ++t) worst = std::min(worst, slack(t));
    report_.entries.push_back(
        {name, CheckKind::kInequality, o_.dim, o_.cutoff, worst, kSlackTolerance, worst >= -kSlackTolerance});
  }

  LemmaReport run() {
    const auto member = [](int t, int j) { return static_cast<std::uint64_t>(100 * t + j); };

    identity("leray_orthogonality", [&](int t) {
      const VectorField f = field(FieldKind::kGeneral, member(t, 0));
      const LerayDecomposition d = leray_project(f);
      return std::abs(l2_inner(d.solenoidal, d.gradient_part)) / l2_inner(f, f);
    });
    identity("leray_reconstruction", [&](int t) {
      const VectorField f = field(FieldKind::kGeneral, member(t, 0));
      const LerayDecomposition d = leray_project(f);
      VectorField r = d.solenoidal + d.gradient_part;
      for (int c = 0; c < f.dim(); ++c) r[c][WaveVector{0, 0, 0}] += d.constant_part[static_cast<std::size_t>(c)];
      return relative_residual(r, f);
    });
    identity("transport_antisymmetry", [&](int t) {
      const VectorField phi = field(FieldKind::kDivergenceFree, member(t, 0));
      const VectorField f = field(FieldKind::kGeneral, member(t, 1));
      const VectorField g = field(FieldKind::kGeneral, member(t, 2));
      const VectorField lf = nonlinear_L(phi, f);
      const VectorField lg = nonlinear_L(phi, g);
      const double a = l2_inner(lf, g);
      const double b = -l2_inner(f, lg);
      return safe_ratio(std::abs(a - b), l2n(lf) * l2n(g) + l2n(f) * l2n(lg));
    });
    identity("transport_cancellation", [&](int t) {
      const VectorField phi = field(FieldKind::kDivergenceFree, member(t, 0));
      const VectorField f = field(FieldKind::kGeneral, member(t, 1));
      const VectorField lf = nonlinear_L(phi, f);
      return safe_ratio(std::abs(l2_inner(lf, f)), l2n(lf) * l2n(f));
    });
    identity("stokes_after_leray", [&](int t) {
      const VectorField f = field(FieldKind::kGeneral, member(t, 0));
      return relative_residual(stokes_apply(leray(f)), -1.0 * leray(laplacian(f)));
    });
    identity("leray_B_commutes_with_leray", [&](int t) {
      const VectorField x = xi(member(t, 3));
      const VectorField f = field(FieldKind::kGeneral, member(t, 0));
      return relative_residual(leray(salt_B(x, f)), leray(salt_B(x, leray(f))));
    });
    identity("stokes_power_moving", [&](int t) {
      const VectorField f = field(FieldKind::kDivergenceFree, member(t, 0));
      const VectorField g = field(FieldKind::kDivergenceFree, member(t, 1));
      double worst = 0.0;
      for (int m = 1; m <= 3; ++m) {
        const double a = m_inner(f, g, m);
        const double scale = std::sqrt(m_norm_sq(f, m) * m_norm_sq(g, m));
        for (int p = 0; p <= 2 * m; ++p) {
          const double b = l2_inner(stokes_power(f, 0.5 * p), stokes_power(g, 0.5 * (2 * m - p)));
          worst = std::max(worst, safe_ratio(std::abs(a - b), scale));
        }
      }
      return worst;
    });
    identity("transport_T_adjoint", [&](int t) {
      const VectorField x = xi(member(t, 3));
      const VectorField f = field(FieldKind::kGeneral, member(t, 0));
      const VectorField g = field(FieldKind::kGeneral, member(t, 1));
      const VectorField tf = transport_T(x, f);
      const VectorField tg = transport_T_star(x, g);
      return safe_ratio(std::abs(l2_inner(tf, g) - l2_inner(f, tg)), l2n(tf) * l2n(g) + l2n(f) * l2n(tg));
    });
    identity("salt_B_adjoint", [&](int t) {
      const VectorField x = xi(member(t, 3));
      const VectorField f = field(FieldKind::kGeneral, member(t, 0));
      const VectorField g = field(FieldKind::kGeneral, member(t, 1));
      const VectorField bf = salt_B(x, f);
      const VectorField bg = salt_B_star(x, g);
      return safe_ratio(std::abs(l2_inner(bf, g) - l2_inner(f, bg)), l2n(bf) * l2n(g) + l2n(f) * l2n(bg));
    });
    identity("commutator_closed_form", [&](int t) {
      const VectorField x = xi(member(t, 3));
      const VectorField f = field(FieldKind::kGeneral, member(t, 0));
      return relative_residual(commutator_delta_B(x, f), closed_form_commutator(x, f));
    });
    identity("ito_correction_association", [&](int t) {
      const std::vector<VectorField> xs{xi(member(t, 3)), xi(member(t, 4))};
      const VectorField f = field(FieldKind::kDivergenceFree, member(t, 0));
      return relative_residual(ito_correction(xs, f), ito_correction_composed(xs, f));
    });
    if (o_.dim == 3) {
      identity("curl_of_B", [&](int t) {
        const VectorField x = xi(member(t, 3));
        const VectorField f = field(FieldKind::kDivergenceFree, member(t, 0));
        return relative_residual(curl(salt_B(x, f)), vort_L(x, curl(f)));
      });
      identity("curl_of_nonlinear", [&](int t) {
        const VectorField f = field(FieldKind::kDivergenceFree, member(t, 0));
        return relative_residual(curl(nonlinear_L(f, f)), vort_L(f, curl(f)));
      });
      identity("biot_savart_round_trip", [&](int t) {
        const VectorField w = curl(field(FieldKind::kGeneral, member(t, 0)));
        return relative_residual(curl(biot_savart(w)), w);
      });
    }

    const GalerkinBasis basis(o_.dim, o_.cutoff);
    const std::size_t n = tail_rank(basis);
    for (int m = 0; m <= 2; ++m) {
      inequality("projection_self_adjoint_m" + std::to_string(m), [&, m](int t) {
        const VectorField f = field(FieldKind::kDivergenceFree, member(t, 0));
        const VectorField g = field(FieldKind::kDivergenceFree, member(t, 1));
        const VectorField pf = project_Pn(f, n, basis).resized(o_.cutoff);
        const VectorField pg = project_Pn(g, n, basis).resized(o_.cutoff);
        const double diff = std::abs(m_inner(pf, g, m) - m_inner(f, pg, m));
        return -safe_ratio(diff, std::sqrt(m_norm_sq(f, m) * m_norm_sq(g, m)));
      });
    }
    inequality("projection_tail_bound",
               [&](int t) { return tail_bound_slack(o_.dim, o_.cutoff, o_.seed, member(t, 0)); });
    identity("projection_tail_eigenmode", [&](int) { return tail_eigenmode_residual(o_.dim, o_.cutoff); });
    return std::move(report_);
  }

 private:
  LemmaSuiteOptions o_;
  LemmaReport report_;
};

}  // namespace

std::size_t tail_rank(const GalerkinBasis& basis) {
  if (basis.size() < 2) throw ArgumentError("tail checks need at least two basis modes");
  return std::min(basis.size() - 1, (basis.size() / 2) | 1u);
}

double tail_bound_slack(int dim, int cutoff, std::uint64_t seed, std::uint64_t member) {
  const GalerkinBasis basis(dim, cutoff);
  const std::size_t n = tail_rank(basis);
  const VectorField f = random_field({.dim = dim, .cutoff = cutoff, .kind = FieldKind::kDivergenceFree, .decay = 2.0,
                                      .seed = seed, .member = member});
  const VectorField tail = f - project_Pn(f, n, basis).resized(cutoff);
  return (m_norm_sq(f, 1) / basis.mode(n - 1).lambda - l2_inner(tail, tail)) / l2_inner(f, f);
}

double tail_eigenmode_residual(int dim, int cutoff) {
  const GalerkinBasis basis(dim, cutoff);
  const std::size_t n = tail_rank(basis);
  const VectorField a = basis.mode_field(n);
  const VectorField tail = a - project_Pn(a, n, basis);
  const double lhs = l2_inner(tail, tail);
  const double rhs = m_norm_sq(a, 1) / basis.mode(n - 1).lambda;
  return std::abs(lhs - rhs) / rhs;
}

bool LemmaReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const LemmaEntry& e) { return e.passed; });
}

void LemmaReport::write_csv(std::ostream& out, bool header) const {
  if (header) out << "check,kind,N,K,value,tolerance,passed\n";
  out << std::setprecision(6) << std::scientific;
  for (const LemmaEntry& e : entries)
    out << e.name << ',' << (e.kind == CheckKind::kIdentity ? "identity" : "inequality") << ',' << e.dim << ','
        << e.cutoff << ',' << e.value << ',' << e.tolerance << ',' << (e.passed ? 1 : 0) << '\n';
  out << std::defaultfloat;
}

void LemmaReport::write_summary(std::ostream& out) const {
  for (const LemmaEntry& e : entries)
    out << (e.passed ? "ok   " : "FAIL ") << std::left << std::setw(36) << e.name << " N=" << e.dim
        << " K=" << e.cutoff << (e.kind == CheckKind::kIdentity ? "  residual " : "  slack ") << std::scientific
        << std::setprecision(3) << e.value << std::defaultfloat << std::right << '\n';
}

LemmaReport lemma_suite(const LemmaSuiteOptions& options) {
  if (options.dim != 2 && options.dim != 3) throw ArgumentError("lemma suite dimension must be 2 or 3");
  if (options.cutoff < 2) throw ArgumentError("lemma suite cutoff must be at least 2");
  if (options.trials < 1) throw ArgumentError("lemma suite needs at least one trial");
  return Suite(options).run();
}

GridSample finite_difference_oracle(const ScalarField& f, int axis, int resolution) {
  if (axis < 1 || axis > f.dim()) throw ArgumentError("finite difference axis out of range");
  const GridSample g = to_grid(f, resolution);
  GridSample d = g;
  const auto r = static_cast<std::size_t>(resolution);
  std::size_t stride = 1;
  for (int j = f.dim(); j > axis; --j) stride *= r;
  const double inv_2h = static_cast<double>(resolution) / (2.0 * kTwoPi);
  for (std::size_t p = 0; p < g.values.size(); ++p) {
    const std::size_t pos = (p / stride) % r;
    const std::size_t base = p - pos * stride;
    const std::size_t up = base + ((pos + 1) % r) * stride;
    const std::size_t down = base + ((pos + r - 1) % r) * stride;
    d.values[p] = (g.values[up] - g.values[down]) * inv_2h;
  }
  return d;
}

}  // namespace salt

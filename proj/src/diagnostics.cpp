#include "salt/diagnostics.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>

namespace salt {

DiagnosticsRecord state_norms(std::span<const double> coords, const GalerkinBasis& basis, double t) {
  if (coords.size() != basis.size()) throw ArgumentError("state_norms: coordinate length mismatch");
  std::vector<double> l2(coords.size()), h1(coords.size()), h2(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const double lam = basis.mode(i).lambda;
    const double x2 = coords[i] * coords[i];
    l2[i] = x2;
    h1[i] = lam * x2;
    h2[i] = lam * lam * x2;
  }
  return {t, pairwise_sum(l2), pairwise_sum(h1), pairwise_sum(h2), 0.0};
}

BlowupMonitor::BlowupMonitor(double threshold) : threshold_(threshold) {}

double BlowupMonitor::update(double t, double h1_sq, double h2_sq) {
  if (started_) {
    if (t < last_t_) throw ArgumentError("blow-up monitor fed a decreasing time");
    integral_ += 0.5 * (t - last_t_) * (last_h2_ + h2_sq);
  }
  started_ = true;
  last_t_ = t;
  last_h2_ = h2_sq;
  sup_h1_ = std::max(sup_h1_, h1_sq);
  return value();
}

double blowup_functional(std::span<const DiagnosticsRecord> records) {
  BlowupMonitor m(std::numeric_limits<double>::infinity());
  for (const DiagnosticsRecord& r : records) m.update(r.t, r.h1_sq, r.h2_sq);
  return m.value();
}

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  out << "t,l2_sq,h1_sq,h2_sq,blowup_partial\n" << std::setprecision(17);
  for (const DiagnosticsRecord& r : records)
    out << r.t << ',' << r.l2_sq << ',' << r.h1_sq << ',' << r.h2_sq << ',' << r.blowup_partial << '\n';
}

}  // namespace salt

#include <cmath>
#include <sstream>

#include "cmdnls/hardy.hpp"
#include "cmdnls/runner.hpp"

namespace cmdnls {

void InitialDatum::validate() const {
  if (std::abs(std::abs(c) - 1.0) > 1e-12)
    throw ConfigError("datum: background constant c must be unimodular");
  switch (kind) {
    case DatumKind::constant:
      break;
    case DatumKind::gaussian_bump:
      if (terms.size() != 1) throw ConfigError("datum: gaussian_bump takes exactly one term");
      [[fallthrough]];
    case DatumKind::multi_bump:
      for (const auto& t : terms)
        if (!(t.width > 0.0)) throw ConfigError("datum: Gaussian widths must be positive");
      break;
    case DatumKind::rational:
      for (const auto& t : terms)
        if (!(t.width > 0.0))
          throw ConfigError("datum: rational pole x_j - i b_j must lie in the lower half-plane (b > 0); "
                            "the datum would not be Hardy");
      break;
  }
}

DatumResult build_datum_checked(const InitialDatum& d, const GridSpec& g) {
  d.validate();
  DatumResult out{Field(g), {}};
  Field pert(g);
  if (d.kind == DatumKind::gaussian_bump || d.kind == DatumKind::multi_bump) {
    CVec s(g.N(), cplx{});
    for (const auto& t : d.terms)
      for (std::size_t j = 0; j < g.N(); ++j) {
        const double y = (g.x(j) - t.offset) / t.width;
        s[j] += t.amplitude * std::exp(-y * y);
      }
    pert = szego_project(Field::from_samples(g, s));
  } else if (d.kind == DatumKind::rational) {
    CVec s(g.N(), cplx{});
    for (const auto& t : d.terms) {
      for (std::size_t j = 0; j < g.N(); ++j) s[j] += t.amplitude / (g.x(j) - t.offset + kI * t.width);
      if (g.L() / t.width < 50.0) {
        std::ostringstream os;
        os << "rational term with b = " << t.width << ": L/b = " << g.L() / t.width
           << " < 50, expect visible periodization error from the 1/x tail";
        out.warnings.push_back(os.str());
      }
    }
    pert = Field::from_samples(g, s);
    if (d.project) pert = szego_project(pert);
  }
  cplx c = d.c;
  if (d.balance_mass && d.kind != DatumKind::constant) {
    // mean |rho c + p|^2 = rho^2 + 2 rho Re(conj(c) p_0) + sum |p_k|^2 = 1
    double P = 0.0;
    for (const auto& v : pert.coeffs()) P += std::norm(v);
    const double beta = (std::conj(d.c) * pert.coeffs()[0]).real();
    const double disc = beta * beta + 1.0 - P;
    if (!(disc > 0.0)) throw ConfigError("datum: cannot balance the mass of this perturbation");
    c *= -beta + std::sqrt(disc);
  }
  pert.coeffs()[0] += c;
  out.field = zero_unpaired_mode(std::move(pert));
  return out;
}

Field build_datum(const InitialDatum& d, const GridSpec& g) { return build_datum_checked(d, g).field; }

InitialDatum gaussian_datum(double amplitude) {
  InitialDatum d;
  d.kind = DatumKind::gaussian_bump;
  d.terms = {DatumTerm{amplitude, 1.0, 0.0}};
  return d;
}

InitialDatum two_bump_datum() {
  InitialDatum d;
  d.kind = DatumKind::multi_bump;
  d.terms = {DatumTerm{{0.1, 0.0}, 1.0, -3.0}, DatumTerm{{0.0, 0.08}, 0.7, 2.5}};
  return d;
}

InitialDatum rational_datum(cplx a, double b) {
  InitialDatum d;
  d.kind = DatumKind::rational;
  d.terms = {DatumTerm{a, b, 0.0}};
  return d;
}

InitialDatum constant_datum(cplx c) {
  InitialDatum d;
  d.kind = DatumKind::constant;
  d.c = c;
  d.terms.clear();
  return d;
}

}  // namespace cmdnls

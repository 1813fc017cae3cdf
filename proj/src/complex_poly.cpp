#include "keller/complex_poly.hpp"

#include "keller/errors.hpp"

namespace keller {

ComplexPoly::ComplexPoly(std::vector<ComplexRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void ComplexPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().re == 0 && coeffs_.back().im == 0) coeffs_.pop_back();
}

ComplexPoly ComplexPoly::from_zi(const Poly& p) {
  if (p.dim() != 2) throw DimensionError("complex polynomial text must use exactly the variables z and i");
  std::vector<ComplexRational> c;
  for (const auto& [mono, coeff] : p.terms()) {
    const std::size_t k = mono[0];
    if (c.size() <= k) c.resize(k + 1, {Rational(0), Rational(0)});
    switch (mono[1] % 4) {
      case 0:
        c[k].re += coeff;
        break;
      case 1:
        c[k].im += coeff;
        break;
      case 2:
        c[k].re -= coeff;
        break;
      default:
        c[k].im -= coeff;
        break;
    }
  }
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::derivative() const {
  std::vector<ComplexRational> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    const Rational kk(static_cast<unsigned long>(k));
    d.push_back({coeffs_[k].re * kk, coeffs_[k].im * kk});
  }
  return ComplexPoly(std::move(d));
}

ComplexRational ComplexPoly::evaluate(const ComplexRational& z) const {
  ComplexRational acc{Rational(0), Rational(0)};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<Poly, Poly> ComplexPoly::real_parts() const {
  const Poly x = Poly::variable(2, 0);
  const Poly y = Poly::variable(2, 1);
  Poly re(2), im(2);
  Poly pr = Poly::constant(2, Rational(1));  // Re (x + iy)^k
  Poly pi(2);                                // Im (x + iy)^k
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k > 0) {
      Poly nr = pr * x - pi * y;
      Poly ni = pr * y + pi * x;
      pr = std::move(nr);
      pi = std::move(ni);
    }
    const auto& c = coeffs_[k];
    re += pr * c.re - pi * c.im;
    im += pr * c.im + pi * c.re;
  }
  return {std::move(re), std::move(im)};
}

Rational ComplexPoly::modulus_bound(const Rational& radius) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * radius + it->l1();
  return acc;
}

std::string to_string(const ComplexPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    const auto& c = p.coeffs()[k];
    if (c.re == 0 && c.im == 0) continue;
    std::string coeff;
    if (c.im == 0) {
      coeff = to_string(c.re);
    } else if (c.re == 0) {
      coeff = to_string(c.im) + "*i";
    } else {
      coeff = "(" + to_string(c.re) + (c.im > 0 ? " + " : " - ") + to_string(abs_value(c.im)) + "*i)";
    }
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += coeff;
    } else {
      out += coeff + "*z" + (k > 1 ? "^" + std::to_string(k) : "");
    }
  }
  return out;
}

}  // namespace keller

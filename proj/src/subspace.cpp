#include "deltam/subspace.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "deltam/linalg.hpp"

namespace deltam {

Subspace::Subspace(AmbientSpace ambient, std::vector<ExpPolynomial> generators,
                   const Tolerance& tol)
    : ambient_(std::move(ambient)), gens_(std::move(generators)) {
  std::vector<Vector> coords;
  coords.reserve(gens_.size());
  for (const auto& g : gens_) coords.push_back(coordinates(g, ambient_, tol));
  basis_ = orthonormal_basis(coords, tol);
}

Subspace Subspace::from_coordinates(AmbientSpace ambient, const std::vector<Vector>& coords,
                                    const Tolerance& tol) {
  std::vector<ExpPolynomial> gens;
  gens.reserve(coords.size());
  for (const auto& v : coords) gens.push_back(deltam::from_coordinates(ambient, v));
  return Subspace(std::move(ambient), std::move(gens), tol);
}

double Subspace::residual(const Vector& coords) const {
  return projection_residual(coords, basis_);
}

bool Subspace::contains(const ExpPolynomial& f, const Tolerance& tol) const {
  const Vector v = coordinates(f, ambient_, tol);
  return residual(v) <= tol.threshold(two_norm(v));
}

double ExactStep::value() const {
  return a_.to_double() + b_.to_double() * std::sqrt(2.0);
}

std::string ExactStep::str() const {
  if (b_.is_zero()) return a_.str();
  std::string root = b_.str() + "*sqrt2";
  if (a_.is_zero()) return root;
  return b_.sign() < 0 ? a_.str() + root : a_.str() + "+" + root;
}

namespace {

[[noreturn]] void bad_step(const std::string& text) {
  throw std::invalid_argument("cannot parse step '" + text +
                              "': expected a+b*sqrt2 with rational a, b");
}

}  // namespace

ExactStep ExactStep::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) bad_step(text);

  // Split into signed summands; '+' and '-' only occur as term separators
  // or leading signs since rationals are plain p/q.
  Rational a(0), b(0);
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) bad_step(text);
    i = j;

    bool root = false;
    if (term.size() >= 5 && term.compare(term.size() - 5, 5, "sqrt2") == 0) {
      root = true;
      term.erase(term.size() - 5);
      if (!term.empty() && term.back() == '*') term.pop_back();
    }
    Rational c(1);
    if (!term.empty()) {
      try {
        c = Rational::parse(term);
      } catch (const std::invalid_argument&) {
        bad_step(text);
      }
    } else if (!root) {
      bad_step(text);
    }
    if (sign < 0) c = -c;
    (root ? b : a) += c;
  }
  return ExactStep(std::move(a), std::move(b));
}

bool ratio_is_rational(const ExactStep& x, const ExactStep& y) {
  if (y.is_zero()) throw std::invalid_argument("ratio_is_rational: zero denominator step");
  // x / y in Q means x = q y for rational q, which forces the coefficient
  // pairs (a1, b1) and (a2, b2) to be proportional over Q.
  return (x.rational_part() * y.root_part() - y.rational_part() * x.root_part()).is_zero();
}

}  // namespace deltam

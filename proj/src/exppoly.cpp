#include "deltam/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "deltam/errors.hpp"

namespace deltam {

namespace {

bool freq_less(Scalar a, Scalar b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::string freq_str(Scalar z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

void check_exp_range(Scalar lambda, double h) {
  if (lambda.real() * h > 709.0) {
    std::ostringstream os;
    os << "exponential overflow: exp(" << lambda.real() * h
       << ") at frequency " << freq_str(lambda);
    throw OverflowError(os.str());
  }
}

}  // namespace

ExpPolynomial::ExpPolynomial(std::vector<ExpTerm> terms, const Tolerance& tol) {
  for (auto& t : terms) {
    if (t.p.is_zero()) continue;
    bool merged = false;
    for (auto& u : terms_) {
      if (std::abs(t.lambda - u.lambda) <= tol.threshold(std::abs(u.lambda))) {
        u.p = u.p + t.p;
        merged = true;
        break;
      }
    }
    if (!merged) terms_.push_back(std::move(t));
  }
  std::erase_if(terms_, [](const ExpTerm& t) { return t.p.is_zero(); });
  std::sort(terms_.begin(), terms_.end(),
            [](const ExpTerm& a, const ExpTerm& b) { return freq_less(a.lambda, b.lambda); });
}

ExpPolynomial ExpPolynomial::from_polynomial(Polynomial p) {
  if (p.is_zero()) return ExpPolynomial();
  return ExpPolynomial({{Scalar(0), std::move(p)}});
}

ExpPolynomial ExpPolynomial::basis(Scalar lambda, std::size_t k) {
  return ExpPolynomial({{lambda, Polynomial::monomial(k)}});
}

double ExpPolynomial::coeff_norm() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, t.p.max_abs_coeff());
  return m;
}

bool ExpPolynomial::is_zero_within(const Tolerance& tol, double scale) const {
  return coeff_norm() <= tol.threshold(scale);
}

ExpPolynomial ExpPolynomial::operator+(const ExpPolynomial& o) const {
  std::vector<ExpTerm> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return ExpPolynomial(std::move(all));
}

ExpPolynomial ExpPolynomial::operator-(const ExpPolynomial& o) const {
  return *this + o * Scalar(-1);
}

ExpPolynomial ExpPolynomial::operator*(Scalar s) const {
  if (s == Scalar(0)) return ExpPolynomial();
  std::vector<ExpTerm> out = terms_;
  for (auto& t : out) t.p = t.p * s;
  return ExpPolynomial(std::move(out));
}

ExpPolynomial ExpPolynomial::cleaned(double cutoff) const {
  std::vector<ExpTerm> out;
  for (const auto& t : terms_) {
    std::vector<Scalar> c = t.p.coeffs();
    for (auto& a : c)
      if (std::abs(a) <= cutoff) a = Scalar(0);
    Polynomial p(std::move(c), cutoff);
    if (!p.is_zero()) out.push_back({t.lambda, std::move(p)});
  }
  return ExpPolynomial(std::move(out));
}

Scalar evaluate(const ExpPolynomial& f, double t) {
  Scalar acc(0);
  for (const auto& term : f.terms()) {
    check_exp_range(term.lambda, t);
    acc += term.p.evaluate(t) * std::exp(term.lambda * t);
  }
  return acc;
}

ExpPolynomial translate(const ExpPolynomial& f, double h) {
  std::vector<ExpTerm> out;
  out.reserve(f.terms().size());
  for (const auto& term : f.terms()) {
    check_exp_range(term.lambda, h);
    const Scalar w = std::exp(term.lambda * h);
    out.push_back({term.lambda, term.p.shifted(h) * w});
  }
  return ExpPolynomial(std::move(out));
}

AmbientSpace::AmbientSpace(std::vector<FreqBlock> blocks, const Tolerance& tol) {
  FreqBlock zero{Scalar(0), 0};
  std::vector<FreqBlock> rest;
  bool have_zero = false;
  for (auto& b : blocks) {
    if (std::abs(b.lambda) <= tol.eps()) {
      if (have_zero) throw std::invalid_argument("ambient space: duplicate zero frequency");
      have_zero = true;
      zero = {Scalar(0), b.mult};
      continue;
    }
    if (b.mult == 0) continue;
    rest.push_back(b);
  }
  std::sort(rest.begin(), rest.end(),
            [](const FreqBlock& a, const FreqBlock& b) { return freq_less(a.lambda, b.lambda); });
  for (std::size_t i = 0; i + 1 < rest.size(); ++i) {
    const double sep = std::abs(rest[i].lambda - rest[i + 1].lambda);
    if (sep <= tol.threshold(std::abs(rest[i].lambda)))
      throw std::invalid_argument("ambient space: duplicate frequency " +
                                  freq_str(rest[i].lambda));
  }
  blocks_.push_back(zero);
  blocks_.insert(blocks_.end(), rest.begin(), rest.end());
}

std::size_t AmbientSpace::dim() const noexcept {
  std::size_t d = 0;
  for (const auto& b : blocks_) d += b.mult;
  return d;
}

std::size_t AmbientSpace::offset(std::size_t i) const {
  std::size_t o = 0;
  for (std::size_t k = 0; k < i; ++k) o += blocks_[k].mult;
  return o;
}

std::optional<std::size_t> AmbientSpace::find(Scalar lambda, const Tolerance& tol) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (std::abs(lambda - blocks_[i].lambda) <= tol.threshold(std::abs(blocks_[i].lambda)))
      return i;
  return std::nullopt;
}

Vector coordinates(const ExpPolynomial& f, const AmbientSpace& S, const Tolerance& tol) {
  Vector v(S.dim(), Scalar(0));
  for (const auto& term : f.terms()) {
    const auto bi = S.find(term.lambda, tol);
    if (!bi)
      throw NotInAmbientError("frequency " + freq_str(term.lambda) +
                              " not in ambient space");
    const FreqBlock& b = S.block(*bi);
    if (term.p.degree() >= static_cast<int>(b.mult))
      throw NotInAmbientError("degree " + std::to_string(term.p.degree()) +
                              " at frequency " + freq_str(b.lambda) +
                              " exceeds multiplicity " + std::to_string(b.mult));
    const std::size_t off = S.offset(*bi);
    for (std::size_t k = 0; k < term.p.coeffs().size(); ++k)
      v[off + k] += term.p.coeff(k);
  }
  return v;
}

ExpPolynomial from_coordinates(const AmbientSpace& S, const Vector& v) {
  if (v.size() != S.dim())
    throw std::invalid_argument("from_coordinates: vector length " +
                                std::to_string(v.size()) + " does not match dimension " +
                                std::to_string(S.dim()));
  std::vector<ExpTerm> terms;
  std::size_t off = 0;
  for (const auto& b : S.blocks()) {
    std::vector<Scalar> c(v.begin() + off, v.begin() + off + b.mult);
    Polynomial p(std::move(c));
    if (!p.is_zero()) terms.push_back({b.lambda, std::move(p)});
    off += b.mult;
  }
  return ExpPolynomial(std::move(terms));
}

AmbientSpace hull(std::span<const ExpPolynomial> funcs, std::size_t min_zero_mult,
                  const Tolerance& tol) {
  std::vector<FreqBlock> blocks{{Scalar(0), min_zero_mult}};
  for (const auto& f : funcs) {
    for (const auto& term : f.terms()) {
      const std::size_t need = static_cast<std::size_t>(term.p.degree()) + 1;
      bool found = false;
      for (auto& b : blocks) {
        const bool zero_block = (b.lambda == Scalar(0));
        const double sep = std::abs(term.lambda - b.lambda);
        if ((zero_block && std::abs(term.lambda) <= tol.eps()) ||
            (!zero_block && sep <= tol.threshold(std::abs(b.lambda)))) {
          b.mult = std::max(b.mult, need);
          found = true;
          break;
        }
      }
      if (!found) blocks.push_back({term.lambda, need});
    }
  }
  return AmbientSpace(std::move(blocks), tol);
}

RealForm realify(const ExpPolynomial& f, const Tolerance& tol) {
  const double scale = f.coeff_norm();
  const double thresh = tol.threshold(scale);
  std::vector<bool> taken(f.terms().size(), false);
  RealForm out;

  const auto& ts = f.terms();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (taken[i]) continue;
    taken[i] = true;
    const Scalar lam = ts[i].lambda;

    if (std::abs(lam.imag()) <= tol.eps()) {
      // Real frequency: coefficients must be real.
      std::vector<Scalar> c = ts[i].p.coeffs();
      for (auto& a : c) {
        if (std::abs(a.imag()) > thresh)
          throw std::invalid_argument("realify: non-real coefficient at real frequency");
        a = Scalar(a.real(), 0.0);
      }
      out.terms.push_back({lam.real(), 0.0, Polynomial(std::move(c)), Polynomial()});
      continue;
    }

    // Find the conjugate partner.
    std::size_t j = ts.size();
    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (taken[k]) continue;
      if (std::abs(ts[k].lambda - std::conj(lam)) <= tol.threshold(std::abs(lam))) {
        j = k;
        break;
      }
    }
    if (j == ts.size())
      throw std::invalid_argument("realify: frequency " + std::to_string(lam.real()) +
                                  "+" + std::to_string(lam.imag()) +
                                  "i has no conjugate partner");
    taken[j] = true;

    // With c at alpha + i beta and d at alpha - i beta, realness means
    // d = conj(c); the pair sums to 2 Re(c) cos - 2 Im(c) sin.
    const Polynomial& c = ts[i].p;
    const Polynomial& d = ts[j].p;
    const int deg = std::max(c.degree(), d.degree());
    std::vector<Scalar> cosc(deg + 1, Scalar(0)), sinc(deg + 1, Scalar(0));
    for (int k = 0; k <= deg; ++k) {
      const Scalar a = c.coeff(k), b = d.coeff(k);
      if (std::abs(b - std::conj(a)) > thresh)
        throw std::invalid_argument("realify: conjugate coefficients do not match");
      cosc[k] = Scalar(2.0 * a.real(), 0.0);
      sinc[k] = Scalar(-2.0 * a.imag(), 0.0);
    }
    const double beta = std::abs(lam.imag());
    // Orient so beta >= 0; flipping beta flips the sine part.
    const double flip = lam.imag() >= 0 ? 1.0 : -1.0;
    Polynomial sp(std::move(sinc));
    out.terms.push_back({lam.real(), beta, Polynomial(std::move(cosc)), sp * Scalar(flip)});
  }
  return out;
}

double evaluate(const RealForm& f, double t) {
  double acc = 0.0;
  for (const auto& term : f.terms) {
    if (term.alpha * t > 709.0) throw OverflowError("exponential overflow in real form");
    const double e = std::exp(term.alpha * t);
    acc += e * (term.cos_part.evaluate(t).real() * std::cos(term.beta * t) +
                term.sin_part.evaluate(t).real() * std::sin(term.beta * t));
  }
  return acc;
}

}  // namespace deltam

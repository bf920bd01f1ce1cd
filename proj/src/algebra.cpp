#include "cohstate/algebra.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace cohstate {

namespace {

void check_mode(int modes, int i) {
  if (i < 1 || i > modes) {
    throw std::out_of_range("mode index " + std::to_string(i) + " outside [1, " +
                            std::to_string(modes) + "]");
  }
}

void check_same_modes(const OperatorPoly& a, const OperatorPoly& b) {
  if (a.modes() != b.modes()) {
    throw std::invalid_argument("operator dimension mismatch: " + std::to_string(a.modes()) +
                                " vs " + std::to_string(b.modes()) + " modes");
  }
}

bool product_is_normal(const std::vector<Ladder>& factors) {
  return std::adjacent_find(factors.begin(), factors.end(), [](const Ladder& a, const Ladder& b) {
           return !a.dagger && b.dagger;
         }) == factors.end();
}

// Sorts the creator block and the annihilator block of a normal-ordered product.
void canonicalize(std::vector<Ladder>& factors) {
  auto split = std::find_if(factors.begin(), factors.end(), [](const Ladder& f) { return !f.dagger; });
  std::sort(factors.begin(), split);
  std::sort(split, factors.end());
}

}  // namespace

int NormalTerm::body() const {
  return static_cast<int>(std::max(creators.size(), annihilators.size()));
}

OperatorPoly::OperatorPoly(int modes) : modes_(modes) {
  if (modes < 1) throw std::invalid_argument("operator needs at least one mode");
}

OperatorPoly OperatorPoly::identity(int modes, Complex c) {
  OperatorPoly p(modes);
  p.add_term({c, {}});
  return p;
}

OperatorPoly OperatorPoly::creator(int modes, int i) {
  OperatorPoly p(modes);
  p.add_term({1.0, {Ladder{i, true}}});
  return p;
}

OperatorPoly OperatorPoly::annihilator(int modes, int i) {
  OperatorPoly p(modes);
  p.add_term({1.0, {Ladder{i, false}}});
  return p;
}

OperatorPoly OperatorPoly::from_normal(int modes, const NormalTerm& term) {
  Product prod{term.coeff, {}};
  prod.factors.reserve(term.creators.size() + term.annihilators.size());
  for (int i : term.creators) prod.factors.push_back({i, true});
  for (int i : term.annihilators) prod.factors.push_back({i, false});
  canonicalize(prod.factors);
  OperatorPoly p(modes);
  p.add_term(std::move(prod));
  return p;
}

void OperatorPoly::add_term(Product term) {
  for (const Ladder& f : term.factors) check_mode(modes_, f.mode);
  terms_.push_back(std::move(term));
}

bool OperatorPoly::is_normal_ordered() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Product& t) { return product_is_normal(t.factors); });
}

std::vector<NormalTerm> OperatorPoly::normal_terms() const {
  std::vector<NormalTerm> out;
  out.reserve(terms_.size());
  for (const Product& t : terms_) {
    if (!product_is_normal(t.factors)) {
      throw std::logic_error("normal_terms: operator is not normal ordered");
    }
    NormalTerm nt{t.coeff, {}, {}};
    for (const Ladder& f : t.factors) (f.dagger ? nt.creators : nt.annihilators).push_back(f.mode);
    std::sort(nt.creators.begin(), nt.creators.end());
    std::sort(nt.annihilators.begin(), nt.annihilators.end());
    out.push_back(std::move(nt));
  }
  return out;
}

OperatorPoly& OperatorPoly::operator+=(const OperatorPoly& other) {
  check_same_modes(*this, other);
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

OperatorPoly& OperatorPoly::operator-=(const OperatorPoly& other) {
  check_same_modes(*this, other);
  for (Product t : other.terms_) {
    t.coeff = -t.coeff;
    terms_.push_back(std::move(t));
  }
  return *this;
}

OperatorPoly& OperatorPoly::operator*=(Complex c) {
  for (Product& t : terms_) t.coeff *= c;
  return *this;
}

OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }
OperatorPoly operator*(Complex c, OperatorPoly p) { return p *= c; }
OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b) { return multiply(a, b); }

OperatorPoly bilinear(int modes, int i, int j, Complex c) {
  OperatorPoly p(modes);
  p.add_term({c, {Ladder{i, true}, Ladder{j, false}}});
  return p;
}

OperatorPoly number_operator(int modes) {
  OperatorPoly p(modes);
  for (int i = 1; i <= modes; ++i) p += bilinear(modes, i, i);
  return p;
}

OperatorPoly multiply(const OperatorPoly& p, const OperatorPoly& q) {
  check_same_modes(p, q);
  OperatorPoly out(p.modes());
  for (const auto& a : p.terms()) {
    for (const auto& b : q.terms()) {
      OperatorPoly::Product prod{a.coeff * b.coeff, a.factors};
      prod.factors.insert(prod.factors.end(), b.factors.begin(), b.factors.end());
      out.add_term(std::move(prod));
    }
  }
  return out;
}

OperatorPoly normal_order(const OperatorPoly& p) {
  OperatorPoly out(p.modes());
  // Depth-first rewriting; each swap removes one inversion, so this terminates.
  std::vector<OperatorPoly::Product> work(p.terms().rbegin(), p.terms().rend());
  while (!work.empty()) {
    OperatorPoly::Product term = std::move(work.back());
    work.pop_back();
    auto& f = term.factors;
    auto it = std::adjacent_find(f.begin(), f.end(), [](const Ladder& a, const Ladder& b) {
      return !a.dagger && b.dagger;
    });
    if (it == f.end()) {
      canonicalize(f);
      out.add_term(std::move(term));
      continue;
    }
    const auto k = static_cast<std::size_t>(it - f.begin());
    if (f[k].mode == f[k + 1].mode) {
      OperatorPoly::Product contracted = term;
      contracted.factors.erase(contracted.factors.begin() + static_cast<std::ptrdiff_t>(k),
                               contracted.factors.begin() + static_cast<std::ptrdiff_t>(k + 2));
      work.push_back(std::move(contracted));
    }
    std::swap(f[k], f[k + 1]);
    work.push_back(std::move(term));
  }
  return out;
}

OperatorPoly adjoint(const OperatorPoly& p) {
  OperatorPoly out(p.modes());
  for (const auto& t : p.terms()) {
    OperatorPoly::Product d{std::conj(t.coeff), {}};
    d.factors.reserve(t.factors.size());
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
      d.factors.push_back({it->mode, !it->dagger});
    }
    out.add_term(std::move(d));
  }
  return out;
}

OperatorPoly simplify(const OperatorPoly& p, double tol) {
  std::map<std::vector<Ladder>, Complex> merged;
  for (const auto& t : p.terms()) {
    std::vector<Ladder> key = t.factors;
    if (product_is_normal(key)) canonicalize(key);
    merged[std::move(key)] += t.coeff;
  }
  OperatorPoly out(p.modes());
  for (auto& [key, coeff] : merged) {
    const double mag = std::abs(coeff);
    if (mag == 0.0 || mag < tol) continue;
    out.add_term({coeff, key});
  }
  return out;
}

bool equivalent(const OperatorPoly& a, const OperatorPoly& b, double tol) {
  return simplify(normal_order(a - b), tol).empty();
}

}  // namespace cohstate

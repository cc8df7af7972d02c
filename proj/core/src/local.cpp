#include "dfred/local.hpp"

#include <algorithm>
#include <numeric>

namespace dfred {

XRat Place::local_parameter() const {
  if (at_infinity()) return XRat(XPoly(Coeff(1)), x_var());
  return XRat(x_var() - XPoly(alpha));
}

std::string to_string(const Place& p, const CoeffField& field) {
  if (p.at_infinity()) return "infinity";
  return to_string(p.alpha, field);
}

namespace {

using Terms = Series::Terms;

int valuation_at_place(const XRat& f, const Place& place) {
  return place.at_infinity() ? valuation_at_infinity(f) : valuation_at(f, place.alpha);
}

Integer lcm_int(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// The operator at a place as sum c[i](z) * theta^i.
using ThetaOp = std::vector<Series>;

ThetaOp theta_form(const Ambient& a, const Place& place, int prec) {
  const int n = a.order();
  const OreOperator& l = a.op();
  ThetaOp c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    XRat ai = l.coeff(i) / l.lc();
    if (ai.is_zero()) continue;
    Series s = expand_at(ai, place, prec + n);
    // finite: D^i = z^-i prod_{k<i} (theta - k); infinity: D^i = (-1)^i z^i prod_{k<i} (theta + k)
    Poly<Rational> p(Rational(1));
    for (int k = 0; k < i; ++k) {
      Rational shift = place.at_infinity() ? Rational(k) : Rational(-k);
      p *= Poly<Rational>(std::vector<Rational>{shift, Rational(1)});
    }
    Series base = place.at_infinity() ? s.shifted(Rational(i)) : s.shifted(Rational(-i));
    if (place.at_infinity() && i % 2 == 1) base = -base;
    for (int k = 0; k <= p.degree(); ++k) {
      if (p.coeff(k) == 0) continue;
      c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] + base.scaled(Coeff(p.coeff(k)));
    }
  }
  return c;
}

// sum c_i (theta + g)^i for an exact series g.
ThetaOp twist(const ThetaOp& c, const Series& g) {
  const std::size_t n = c.size() - 1;
  ThetaOp out(n + 1);
  std::vector<Series> h{Series::monomial(Coeff(1), Rational(0))};
  for (std::size_t i = 0; i <= n; ++i) {
    if (i > 0) {
      std::vector<Series> next(h.size() + 1);
      for (std::size_t k = 0; k < h.size(); ++k) {
        next[k] = next[k] + h[k].theta() + g * h[k];
        next[k + 1] = next[k + 1] + h[k];
      }
      h = std::move(next);
    }
    if (c[i].is_exact_zero()) continue;
    for (std::size_t k = 0; k < h.size(); ++k) out[k] = out[k] + c[i] * h[k];
  }
  return out;
}

struct Point {
  int i;
  Rational v;
  Coeff lc;
};

// Coefficient of z^e in an operator coefficient (no logarithms).
Coeff coeff_at(const Series& s, const Rational& e) { return s.coeff(e, 0); }

class Solver {
 public:
  Solver(int n, const Place& place) : n_(n), place_(place) {}

  std::vector<LocalSolution> run(const ThetaOp& c) {
    ExponentialPart none;
    analyze(c, none, std::nullopt, n_);
    if (static_cast<int>(out_.size()) != n_) fail(ErrorCode::kInternal, "wrong number of local solutions");
    return std::move(out_);
  }

  std::vector<ExponentialPart> parts_only(const ThetaOp& c) {
    parts_mode_ = true;
    ExponentialPart none;
    analyze(c, none, std::nullopt, n_);
    return parts_;
  }

 private:
  void analyze(const ThetaOp& c, const ExponentialPart& part, const std::optional<Rational>& qmax, int expected) {
    std::vector<Point> pts;
    for (int i = 0; i <= n_; ++i) {
      const Series& s = c[static_cast<std::size_t>(i)];
      if (auto v = s.valuation()) pts.push_back({i, *v, coeff_at(s, *v)});
    }
    if (pts.empty()) fail(ErrorCode::kValuationUncertain, "operator vanishes to working precision");
    Rational vmin = pts.front().v;
    for (const auto& p : pts) vmin = std::min(vmin, p.v);
    int i0 = 0;
    for (const auto& p : pts)
      if (p.v == vmin) i0 = p.i;

    // Lower hull to the right of i0.
    struct Edge {
      std::size_t from, to;
      Rational slope;
    };
    std::vector<Edge> edges;
    std::size_t cur = 0;
    while (pts[cur].i != i0) ++cur;
    while (cur + 1 < pts.size()) {
      std::size_t best = cur + 1;
      Rational best_slope = (pts[best].v - pts[cur].v) / Rational(pts[best].i - pts[cur].i);
      for (std::size_t j = cur + 2; j < pts.size(); ++j) {
        Rational sl = (pts[j].v - pts[cur].v) / Rational(pts[j].i - pts[cur].i);
        if (sl <= best_slope) {
          best = j;
          best_slope = sl;
        }
      }
      edges.push_back({cur, best, best_slope});
      cur = best;
    }
    auto hull_at = [&](int i) -> Rational {
      if (i <= i0) return vmin;
      for (const auto& e : edges)
        if (pts[e.to].i >= i) return pts[e.from].v + e.slope * Rational(i - pts[e.from].i);
      return pts.back().v;
    };
    // Coefficients not known to be nonzero must stay strictly above the hull.
    for (int i = 0; i <= n_; ++i) {
      const Series& s = c[static_cast<std::size_t>(i)];
      if (s.valuation() || s.is_exact_zero()) continue;
      if (*s.prec() <= hull_at(i)) fail(ErrorCode::kValuationUncertain, "truncation too small for the Newton polygon");
    }

    int found = 0;
    if (i0 > 0) {
      if (parts_mode_) {
        ExponentialPart p = part;
        p.multiplicity = i0;
        parts_.push_back(p);
      } else {
        regular(c, part, vmin, i0);
      }
      found += i0;
    }
    for (const auto& e : edges) {
      if (qmax && e.slope >= *qmax) break;
      const Rational q = e.slope;
      const int a = pts[e.from].i, b = pts[e.to].i;
      // chi(c) = sum over points on the edge of lc_i (-q c)^i, divided by c^a
      std::vector<Coeff> chi(static_cast<std::size_t>(b - a) + 1, Coeff(0));
      for (const auto& p : pts) {
        if (p.i < a || p.i > b) continue;
        if (p.v - q * Rational(p.i - a) != pts[e.from].v) continue;
        Rational mq = -q;
        Rational scale = 1;
        for (int k = 0; k < p.i; ++k) scale *= mq;
        chi[static_cast<std::size_t>(p.i - a)] = p.lc * Coeff(scale);
      }
      auto roots = find_roots(Poly<Coeff>(chi));
      int total = 0;
      for (const auto& r : roots) total += r.multiplicity;
      if (total != b - a) fail(ErrorCode::kUnsupportedField, "exponential part with coefficients outside the constant field");
      for (const auto& r : roots) {
        ExponentialPart np = part;
        np.q[Rational(-q)] += r.value;
        np.s = static_cast<int>(lcm_int(Integer(np.s), q.get_den()).get_si());
        Series g = Series::monomial(r.value * Coeff(Rational(-q)), Rational(-q));
        const std::size_t before = parts_mode_ ? parts_count() : out_.size();
        analyze(twist(c, g), np, q, r.multiplicity);
        const std::size_t after = parts_mode_ ? parts_count() : out_.size();
        if (static_cast<int>(after - before) != r.multiplicity)
          fail(ErrorCode::kInternal, "exponential part multiplicity mismatch");
      }
      found += b - a;
    }
    if (found != expected) fail(ErrorCode::kInternal, "Newton polygon count mismatch");
  }

  std::size_t parts_count() const {
    std::size_t k = 0;
    for (const auto& p : parts_) k += static_cast<std::size_t>(p.multiplicity);
    return k;
  }

  using LogPoly = std::vector<std::vector<Coeff>>;  // [log power][parameter]

  static LogPoly apply_shifted(const Poly<Coeff>& p, const LogPoly& phi, std::size_t nparams) {
    // p(N) applied to phi, N = d/dlog
    LogPoly out(phi.size(), std::vector<Coeff>(nparams, Coeff(0)));
    for (int k = 0; k <= p.degree(); ++k) {
      const Coeff& a = p.coeffs()[static_cast<std::size_t>(k)];
      if (a.is_zero()) continue;
      for (std::size_t l = 0; l + static_cast<std::size_t>(k) < phi.size(); ++l) {
        Rational f = 1;
        for (std::size_t j = 1; j <= static_cast<std::size_t>(k); ++j) f *= Rational(static_cast<long>(l + j));
        const Coeff fa = a * Coeff(f);
        for (std::size_t q = 0; q < nparams; ++q) {
          const Coeff& x = phi[l + static_cast<std::size_t>(k)][q];
          if (!x.is_zero()) out[l][q] += fa * x;
        }
      }
    }
    return out;
  }

  void regular(const ThetaOp& c, const ExponentialPart& part, const Rational& v0, int count) {
    const Rational step(1, part.s);
    // Number of usable coefficient slices.
    int kmax = 1 << 20;
    for (const auto& s : c) {
      if (s.is_exact() || !s.prec()) continue;
      Rational room = (*s.prec() - v0) / step;  // slices with v0 + m*step < prec
      Integer fl = room.get_num() / room.get_den();
      if (Rational(fl) == room) fl -= 1;
      kmax = std::min<long>(kmax, fl.get_si());
    }
    if (kmax > 4096) kmax = 4096;
    if (kmax < 0) fail(ErrorCode::kValuationUncertain, "truncation too small for local solutions");
    // Exact operators still need a finite number of terms.
    kmax = std::min(kmax, budget_ * part.s);

    std::vector<Poly<Coeff>> pm;
    for (int m = 0; m <= kmax; ++m) {
      std::vector<Coeff> cs;
      for (const auto& s : c) cs.push_back(coeff_at(s, v0 + step * Rational(m)));
      pm.push_back(Poly<Coeff>(std::move(cs)));
    }
    const Poly<Coeff>& p0 = pm[0];
    if (p0.degree() != count) fail(ErrorCode::kInternal, "indicial polynomial degree mismatch");
    auto roots = rational_roots(p0);
    int total = 0;
    for (const auto& r : roots) total += r.second;
    if (total != count) fail(ErrorCode::kUnsupportedField, "local exponent outside the rationals");

    // Classes of exponents modulo step.
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (used[i]) continue;
      std::map<int, int> offsets;  // K -> multiplicity
      const Rational r0 = roots[i].first;
      std::size_t nparams = 0;
      for (std::size_t j = i; j < roots.size(); ++j) {
        Rational d = (roots[j].first - r0) / step;
        if (used[j] || d.get_den() != 1) continue;
        used[j] = true;
        offsets[static_cast<int>(d.get_num().get_si())] = roots[j].second;
        nparams += static_cast<std::size_t>(roots[j].second);
      }
      if (offsets.rbegin()->first > kmax) fail(ErrorCode::kValuationUncertain, "truncation too small to separate exponents");
      std::vector<LogPoly> phi;
      std::size_t next_param = 0;
      for (int k = 0; k <= kmax; ++k) {
        const Rational rho = r0 + step * Rational(k);
        std::size_t logs = 1;
        for (int m = 1; m <= k; ++m) logs = std::max(logs, phi[static_cast<std::size_t>(k - m)].size());
        int mu = 0;
        if (auto it = offsets.find(k); it != offsets.end()) mu = it->second;
        LogPoly rhs(logs, std::vector<Coeff>(nparams, Coeff(0)));
        for (int m = 1; m <= k; ++m) {
          const LogPoly& prev = phi[static_cast<std::size_t>(k - m)];
          if (pm[static_cast<std::size_t>(m)].is_zero()) continue;
          const Rational at = r0 + step * Rational(k - m);
          LogPoly t = apply_shifted(pm[static_cast<std::size_t>(m)].taylor_shift(Coeff(at)), prev, nparams);
          for (std::size_t l = 0; l < t.size(); ++l)
            for (std::size_t q = 0; q < nparams; ++q) rhs[l][q] -= t[l][q];
        }
        // p0(rho + N) = N^mu * U(N)
        Poly<Coeff> shifted = p0.taylor_shift(Coeff(rho));
        const Coeff lead = shifted.coeff(mu);
        LogPoly psi(rhs.size(), std::vector<Coeff>(nparams, Coeff(0)));
        for (std::size_t l = rhs.size(); l-- > 0;) {
          for (std::size_t q = 0; q < nparams; ++q) {
            Coeff acc = rhs[l][q];
            for (int kk = 1; mu + kk <= shifted.degree() && l + static_cast<std::size_t>(kk) < psi.size(); ++kk) {
              Rational f = 1;
              for (int j = 1; j <= kk; ++j) f *= Rational(static_cast<long>(l) + j);
              acc -= shifted.coeff(mu + kk) * Coeff(f) * psi[l + static_cast<std::size_t>(kk)][q];
            }
            psi[l][q] = acc / lead;
          }
        }
        LogPoly cur = psi;
        for (int j = 0; j < mu; ++j) {
          LogPoly up(cur.size() + 1, std::vector<Coeff>(nparams, Coeff(0)));
          for (std::size_t l = 0; l < cur.size(); ++l)
            for (std::size_t q = 0; q < nparams; ++q) up[l + 1][q] = cur[l][q] / Coeff(Rational(static_cast<long>(l) + 1));
          cur = std::move(up);
        }
        for (int j = 0; j < mu; ++j) cur[static_cast<std::size_t>(j)][next_param + static_cast<std::size_t>(j)] += Coeff(1);
        next_param += static_cast<std::size_t>(mu);
        while (cur.size() > 1) {
          bool zero = true;
          for (const auto& x : cur.back()) zero = zero && x.is_zero();
          if (!zero) break;
          cur.pop_back();
        }
        phi.push_back(std::move(cur));
      }
      const Rational prec = r0 + step * Rational(kmax + 1);
      for (std::size_t q = 0; q < nparams; ++q) {
        Terms terms;
        for (int k = 0; k <= kmax; ++k) {
          const LogPoly& f = phi[static_cast<std::size_t>(k)];
          for (std::size_t l = 0; l < f.size(); ++l)
            if (!f[l][q].is_zero()) terms[{r0 + step * Rational(k), static_cast<int>(l)}] = f[l][q];
        }
        LocalSolution sol;
        sol.part = part;
        sol.part.multiplicity = 1;
        sol.u = Series::truncated(std::move(terms), prec);
        out_.push_back(std::move(sol));
      }
    }
  }

 public:
  int budget_ = 16;

 private:
  int n_;
  Place place_;
  bool parts_mode_ = false;
  std::vector<LocalSolution> out_;
  std::vector<ExponentialPart> parts_;
};

Series theta_of_q(const ExponentialPart& part) {
  Terms t;
  for (const auto& [e, c] : part.q) t[{e, 0}] = c * Coeff(e);
  return Series::exact(std::move(t));
}

// D (exp(Q) u) / exp(Q) = factor * (theta u + theta(Q) u)
Series twisted_derivative(const Series& u, const Series& tq, const Place& place) {
  Series s = u.theta() + tq * u;
  return place.at_infinity() ? -s.shifted(Rational(1)) : s.shifted(Rational(-1));
}

}  // namespace

Series expand_at(const XRat& f, const Place& place, int prec) {
  if (f.is_zero()) return Series();
  Terms terms;
  if (place.at_infinity()) {
    const int val = f.den().degree() - f.num().degree();
    XPoly nrev = f.num().reversed(f.num().degree());
    XPoly drev = f.den().reversed(f.den().degree());
    if (drev.degree() == 0) {
      const Coeff inv = Coeff(1) / drev.lc();
      for (int j = 0; j <= nrev.degree(); ++j)
        if (!nrev.coeff(j).is_zero()) terms[{Rational(val + j), 0}] = nrev.coeff(j) * inv;
      return Series::exact(std::move(terms));
    }
    const int need = prec - val;
    if (need <= 0) return Series::truncated({}, Rational(prec));
    XPoly zk = XPoly::monomial(Coeff(1), need);
    XPoly s = (nrev * inverse_mod(drev, zk)) % zk;
    for (int j = 0; j <= s.degree(); ++j)
      if (!s.coeff(j).is_zero()) terms[{Rational(val + j), 0}] = s.coeff(j);
    return Series::truncated(std::move(terms), Rational(prec));
  }
  XPoly num = f.num().taylor_shift(place.alpha);
  XPoly den = f.den().taylor_shift(place.alpha);
  const int k = den.low_degree();
  XPoly d0 = exact_div(den, XPoly::monomial(Coeff(1), k));
  if (d0.degree() == 0) {
    const Coeff inv = Coeff(1) / d0.lc();
    for (int j = 0; j <= num.degree(); ++j)
      if (!num.coeff(j).is_zero()) terms[{Rational(j - k), 0}] = num.coeff(j) * inv;
    return Series::exact(std::move(terms));
  }
  const int need = prec + k;
  if (need <= 0) return Series::truncated({}, Rational(prec));
  XPoly zk = XPoly::monomial(Coeff(1), need);
  XPoly s = (num * inverse_mod(d0, zk)) % zk;
  for (int j = 0; j <= s.degree(); ++j)
    if (!s.coeff(j).is_zero()) terms[{Rational(j - k), 0}] = s.coeff(j);
  return Series::truncated(std::move(terms), Rational(prec));
}

LocalAnalyzer::LocalAnalyzer(AmbientPtr ambient, int truncation)
    : ambient_(std::move(ambient)), truncation_override_(truncation) {}

int LocalAnalyzer::default_truncation(const Place& place) const {
  if (truncation_override_ > 0) return truncation_override_;
  const OreOperator& l = ambient_->op();
  int pole = 0;
  for (int i = 0; i < l.order(); ++i) {
    XRat a = l.coeff(i) / l.lc();
    if (!a.is_zero()) pole = std::max(pole, -valuation_at_place(a, place));
  }
  return ambient_->order() + pole + 8;
}

template <class Fn>
auto LocalAnalyzer::with_retries(const Place& place, Fn fn) const {
  int t = default_truncation(place);
  for (int attempt = 0;; ++attempt) {
    try {
      return fn(t);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kValuationUncertain || attempt == 3) throw;
      t *= 2;
    }
  }
}

std::vector<ExponentialPart> LocalAnalyzer::exponential_parts(const Place& place) const {
  return with_retries(place, [&](int t) {
    Solver solver(ambient_->order(), place);
    auto parts = solver.parts_only(theta_form(*ambient_, place, t));
    // merge parts with equal exponential data
    std::vector<ExponentialPart> merged;
    for (const auto& p : parts) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const ExponentialPart& m) { return m.q == p.q; });
      if (it == merged.end())
        merged.push_back(p);
      else
        it->multiplicity += p.multiplicity;
    }
    return merged;
  });
}

std::shared_ptr<const LocalSolutionBasis> LocalAnalyzer::solution_basis(const Place& place, int truncation) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    for (const auto& [key, basis] : cache_)
      if (key.first == place && key.second == truncation) return basis;
  }
  Solver solver(ambient_->order(), place);
  solver.budget_ = truncation;
  auto basis = std::make_shared<LocalSolutionBasis>();
  basis->place = place;
  basis->truncation = truncation;
  basis->solutions = solver.run(theta_form(*ambient_, place, truncation));
  for (auto& sol : basis->solutions) {
    const Series tq = theta_of_q(sol.part);
    sol.derivatives.push_back(sol.u);
    for (int i = 1; i < ambient_->order(); ++i)
      sol.derivatives.push_back(twisted_derivative(sol.derivatives.back(), tq, place));
  }
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.push_back({{place, truncation}, basis});
  return basis;
}

Series LocalAnalyzer::series_apply(const RVec& coords, const LocalSolution& y, const Place& place, int truncation) const {
  Series out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].is_zero()) continue;
    Series b = expand_at(coords[i], place, 2 * truncation + 4);
    out = out + b * y.derivatives[i];
  }
  return out;
}

Series LocalAnalyzer::residual(const LocalSolution& y, const Place& place, int truncation) const {
  const int n = ambient_->order();
  const Series tq = theta_of_q(y.part);
  Series top = twisted_derivative(y.derivatives.back(), tq, place);
  Series out = top;
  const OreOperator& l = ambient_->op();
  for (int i = 0; i < n; ++i) {
    XRat a = l.coeff(i) / l.lc();
    if (a.is_zero()) continue;
    out = out + expand_at(a, place, 2 * truncation + 4) * y.derivatives[static_cast<std::size_t>(i)];
  }
  return out;
}

std::optional<Rational> LocalAnalyzer::val(const RVec& coords, const Place& place) const {
  if (is_zero_vector(coords)) return std::nullopt;
  return with_retries(place, [&](int t) -> std::optional<Rational> {
    auto basis = solution_basis(place, t);
    std::optional<Rational> best;
    std::vector<Rational> bounds;
    for (const auto& y : basis->solutions) {
      Series s = series_apply(coords, y, place, t);
      if (auto v = s.valuation()) {
        if (!best || *v < *best) best = v;
      } else if (s.prec()) {
        bounds.push_back(*s.prec());
      }
    }
    if (!best) fail(ErrorCode::kValuationUncertain, "no nonzero term within the truncation");
    for (const auto& b : bounds)
      if (b < *best) fail(ErrorCode::kValuationUncertain, "truncation does not certify the minimum");
    return best;
  });
}

bool LocalAnalyzer::is_locally_integral(const RVec& coords, const Place& place) const {
  auto v = val(coords, place);
  return !v || *v >= 0;
}

std::vector<Place> LocalAnalyzer::singular_places() const {
  const OreOperator& l = ambient_->op();
  XPoly den(Coeff(1));
  for (int i = 0; i < l.order(); ++i) den = lcm(den, (l.coeff(i) / l.lc()).den());
  std::vector<Place> out;
  if (den.degree() <= 0) return out;
  int total = 0;
  for (const auto& r : find_roots(den)) {
    out.push_back(Place::finite(r.value));
    total += r.multiplicity;
  }
  if (total != den.degree()) fail(ErrorCode::kUnsupportedField, "singular place not rational over the constant field");
  return out;
}

bool LocalAnalyzer::is_globally_integral(const RVec& coords) const {
  auto places = singular_places();
  XPoly sing(Coeff(1));
  for (const auto& p : places) sing = sing * (x_var() - XPoly(p.alpha));
  for (const auto& c : coords) {
    if (c.is_zero()) continue;
    XPoly d = c.den();
    XPoly g;
    while ((g = gcd(d, sing)).degree() > 0) d = exact_div(d, g);
    if (d.degree() > 0) return false;
  }
  for (const auto& p : places)
    if (!is_locally_integral(coords, p)) return false;
  return true;
}

Matrix<Coeff> LocalAnalyzer::low_term_conditions(const RMatrix& elements, const Place& place, const Rational& bound) const {
  return with_retries(place, [&](int t) {
    auto basis = solution_basis(place, t);
    Matrix<Coeff> rows;
    for (const auto& y : basis->solutions) {
      std::vector<Series> s;
      for (const auto& e : elements) {
        s.push_back(series_apply(e, y, place, t));
        if (s.back().prec() && *s.back().prec() < bound)
          fail(ErrorCode::kValuationUncertain, "truncation below the integrality bound");
      }
      std::map<Series::Key, std::size_t> keys;
      for (const auto& si : s)
        for (const auto& [k, c] : si.terms())
          if (k.first < bound) keys.emplace(k, 0);
      for (const auto& [k, unused] : keys) {
        std::vector<Coeff> row;
        for (const auto& si : s) row.push_back(si.coeff(k.first, k.second));
        rows.push_back(std::move(row));
      }
    }
    return rows;
  });
}

}  // namespace dfred

#include "mollify/oracle.hpp"

#include "mollify/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace mollify::oracle {
namespace {

// Double-precision polynomial, kept separate from the exact engine.
struct DPoly {
    std::vector<double> c;  // c[i] is the x^i coefficient

    double operator()(double x) const {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
};

DPoly shifted_poly(const std::vector<Rational>& from_x1) {
    DPoly p;
    p.c.push_back(0.0);
    for (const auto& r : from_x1) p.c.push_back(r.to_double());
    return p;
}

DPoly antiderivative(const DPoly& q) {
    DPoly r;
    r.c.assign(q.c.size() + 1, 0.0);
    for (std::size_t i = 0; i < q.c.size(); ++i) r.c[i + 1] = q.c[i] / static_cast<double>(i + 1);
    return r;
}

struct Mollifier {
    double d1, d2;
    DPoly P, Q, Q1;
    bool has_q;

    explicit Mollifier(const MollifierSpec& s)
        : d1(s.delta1.to_double()),
          d2(s.delta2.to_double()),
          P(shifted_poly(s.p_coeffs)),
          Q(shifted_poly(s.q_coeffs)),
          Q1(antiderivative(Q)),
          has_q(!s.one_piece()) {}
};

// Integrand of a lemma term at fixed (a, b): W * exp(r X + s Y).
struct Shifted {
    double W, X, Y;
};

struct LemmaTerm {
    double weight;
    Region region;
    std::function<Shifted(const QuadPoint&, double a, double b)> integrand;
};

std::vector<LemmaTerm> j1_terms(const Mollifier& m) {
    return {{1.0, {true, 0}, [m](const QuadPoint& p, double a, double b) {
                 const double C = 2.0 + m.d1 * (a + b);
                 return Shifted{(2.0 / m.d1 + a + b) * m.P(p.x + a) * m.P(p.x + b), m.d1 * b - C * p.t,
                                m.d1 * a - C * p.t};
             }}};
}

std::vector<LemmaTerm> j3_terms(const Mollifier& m) {
    if (!m.has_q) return {};
    const double ratio = m.d2 / m.d1;
    auto p_arg = [m](double x, double a) { return m.P(1.0 - m.d2 * (1.0 - x) / m.d1 + a); };
    return {
        {ratio, {true, 1},
         [m, p_arg](const QuadPoint& p, double a, double b) {
             const double C = 2.0 + m.d1 * a + m.d2 * (b - p.u);
             return Shifted{C * p_arg(p.x, a) * m.Q(p.x - p.u + b), m.d2 * b - C * p.t,
                            m.d1 * a - m.d2 * p.u - C * p.t};
         }},
        {-ratio / 2.0, {true, 0},
         [m, p_arg](const QuadPoint& p, double a, double b) {
             const double C = 2.0 + m.d1 * a + m.d2 * b;
             return Shifted{C * p_arg(p.x, a) * m.Q1(p.x + b), m.d2 * b - C * p.t, m.d1 * a - C * p.t};
         }},
    };
}

std::vector<LemmaTerm> j2_terms(const Mollifier& m) {
    if (!m.has_q) return {};
    const double d2 = m.d2;
    return {
        {d2 / 2.0, {true, 0},
         [m](const QuadPoint& p, double a, double b) {
             const double C = 2.0 + m.d2 * (a + b);
             const double w = 1.0 - p.x;
             return Shifted{C * w * w * m.Q(p.x + a) * m.Q(p.x + b), m.d2 * b - C * p.t, m.d2 * a - C * p.t};
         }},
        {d2, {true, 2},
         [m](const QuadPoint& p, double a, double b) {
             const double C = 2.0 + m.d2 * (a + b - p.u - p.v);
             return Shifted{C * m.Q(p.x - p.u + a) * m.Q(p.x - p.v + b), m.d2 * (b - p.u) - C * p.t,
                            m.d2 * (a - p.v) - C * p.t};
         }},
        {-d2 / 2.0, {true, 1},
         [m](const QuadPoint& p, double a, double b) {
             const double C = 2.0 + m.d2 * (a + b - p.u);
             return Shifted{C * m.Q(p.x - p.u + a) * m.Q1(p.x + b), m.d2 * (b - p.u) - C * p.t,
                            m.d2 * a - C * p.t};
         }},
        {-d2 / 2.0, {true, 1},
         [m](const QuadPoint& p, double a, double b) {
             const double C = 2.0 + m.d2 * (a + b - p.u);
             return Shifted{C * m.Q(p.x - p.u + a) * m.Q1(p.x + b), m.d2 * a - C * p.t,
                            m.d2 * (b - p.u) - C * p.t};
         }},
        {d2 / 4.0, {true, 0},
         [m](const QuadPoint& p, double a, double b) {
             const double C = 2.0 + m.d2 * (a + b);
             return Shifted{C * m.Q1(p.x + a) * m.Q1(p.x + b), m.d2 * b - C * p.t, m.d2 * a - C * p.t};
         }},
    };
}

// Mixed central difference d^2/da db at 0, optionally Richardson-extrapolated,
// as a list of (a, b, coefficient).
std::vector<std::array<double, 3>> ab_stencil(const Options& opts) {
    std::vector<std::array<double, 3>> pts;
    const auto add = [&](double h, double scale) {
        const double c = scale / (4.0 * h * h);
        pts.push_back({h, h, c});
        pts.push_back({h, -h, -c});
        pts.push_back({-h, h, -c});
        pts.push_back({-h, -h, c});
    };
    const double h = opts.ab_step;
    if (opts.richardson) {
        add(h / 2.0, 4.0 / 3.0);
        add(h, -1.0 / 3.0);
    } else {
        add(h, 1.0);
    }
    return pts;
}

void check_shift(ScaledShift s) {
    if (std::abs(s.r) > 1.0 || std::abs(s.s) > 1.0) throw DomainError("scaled shifts must satisfy |r|, |s| <= 1");
}

struct Quadrature {
    double value;
    double magnitude;  // integral of |f|
};

Quadrature tensor_gauss(const std::function<double(const QuadPoint&)>& f, Region region, int order);

// Escalates until two orders agree to within the tolerance, measured against
// the integral of |f| since the difference quotients cancel heavily.
double integrate_checked(const std::function<double(const QuadPoint&)>& f, Region region, const Options& opts) {
    for (int n = opts.order; n <= opts.max_order; n *= 2) {
        const Quadrature fine = tensor_gauss(f, region, n);
        const Quadrature coarse = tensor_gauss(f, region, std::max(2, n / 2));
        const double scale = std::max({1.0, std::abs(fine.value), fine.magnitude});
        if (std::abs(fine.value - coarse.value) <= opts.convergence_tolerance * scale) return fine.value;
    }
    throw NumericalFailure("quadrature did not converge up to order " + std::to_string(opts.max_order));
}

// sum over terms of weight * int sum_ab coef * W * g(X, Y)
template <class ShiftFunctional>
double integrate_terms(const std::vector<LemmaTerm>& terms, const Options& opts, ShiftFunctional&& g) {
    const auto stencil = ab_stencil(opts);
    double total = 0.0;
    for (const auto& term : terms) {
        const auto f = [&](const QuadPoint& p) {
            double acc = 0.0;
            for (const auto& [a, b, c] : stencil) {
                const Shifted s = term.integrand(p, a, b);
                acc += c * s.W * g(s.X, s.Y);
            }
            return acc;
        };
        total += term.weight * integrate_checked(f, term.region, opts);
    }
    return total;
}

double evaluate_lemma(const std::vector<LemmaTerm>& terms, ScaledShift shift, const Options& opts) {
    check_shift(shift);
    return integrate_terms(terms, opts, [&](double X, double Y) { return std::exp(shift.r * X + shift.s * Y); });
}

// Order of accuracy of a central stencil for the given derivative.
int stencil_order(const std::vector<double>& w, int derivative) {
    const int m = static_cast<int>(w.size() / 2);
    for (int j = derivative + 1; j < derivative + 2 * m + 4; ++j) {
        double moment = 0.0;
        for (int i = -m; i <= m; ++i) moment += w[static_cast<std::size_t>(i + m)] * std::pow(i, j);
        if (std::abs(moment) > 1e-9) return j - derivative;
    }
    return 2;
}

// k-th derivative at 0 of r -> exp(r X) by the central stencil, at steps h and h/2.
class ExpDifference {
public:
    ExpDifference(int k, double h, bool richardson) : k_(k), h_(h), richardson_(richardson) {
        weights_ = central_difference_weights(k, k);
        const int p = stencil_order(weights_, k);
        factor_ = std::pow(2.0, p);
        scale_ = {std::pow(h_, -k_), std::pow(0.5 * h_, -k_)};
    }

    // Returns the Richardson-combined mixed derivative of exp(r X + s Y).
    double mixed(double X, double Y) const {
        if (k_ == 0) return 1.0;
        const auto dx = derivatives(X);
        const auto dy = derivatives(Y);
        if (!richardson_) return dx[0] * dy[0];
        return (factor_ * dx[1] * dy[1] - dx[0] * dy[0]) / (factor_ - 1.0);
    }

    double single(const std::function<double(double)>& f) const {
        if (k_ == 0) return f(0.0);
        const auto at = [&](double h) {
            double acc = 0.0;
            for (int i = -k_; i <= k_; ++i) acc += weights_[static_cast<std::size_t>(i + k_)] * f(i * h);
            return acc / std::pow(h, k_);
        };
        if (!richardson_) return at(h_);
        return (factor_ * at(h_ / 2.0) - at(h_)) / (factor_ - 1.0);
    }

private:
    // {D(h), D(h/2)} for exp(r X); powers of exp(h X / 2) cover both grids.
    std::array<double, 2> derivatives(double X) const {
        const double e = std::exp(0.5 * h_ * X);
        const double einv = 1.0 / e;
        std::array<double, 2> d{0.0, 0.0};
        // j indexes multiples of h/2; h-grid points are the even j.
        std::array<double, 9> pos{}, neg{};
        double up = 1.0, down = 1.0;
        for (int j = 0; j <= 2 * k_; ++j) {
            pos[static_cast<std::size_t>(j)] = up;
            neg[static_cast<std::size_t>(j)] = down;
            up *= e;
            down *= einv;
        }
        for (int i = -k_; i <= k_; ++i) {
            const double w = weights_[static_cast<std::size_t>(i + k_)];
            const auto ai = static_cast<std::size_t>(std::abs(i));
            d[1] += w * (i >= 0 ? pos[ai] : neg[ai]);
            d[0] += w * (i >= 0 ? pos[2 * ai] : neg[2 * ai]);
        }
        d[0] *= scale_[0];
        d[1] *= scale_[1];
        return d;
    }

    int k_;
    double h_;
    bool richardson_;
    double factor_ = 4.0;
    std::array<double, 2> scale_{1.0, 1.0};
    std::vector<double> weights_;
};

void check_order(int k) {
    if (k < 0 || k > 4) throw DomainError("oracle supports derivative orders 0..4");
}

// Balances truncation against rounding in h^-k for each order.
double shift_step(int k, const Options& opts) {
    if (opts.shift_step > 0.0) return opts.shift_step;
    constexpr std::array<double, 5> steps{0.02, 0.02, 0.05, 0.05, 0.1};
    return steps[static_cast<std::size_t>(k)];
}

}  // namespace

GaussRule gauss_legendre_rule(int order) {
    if (order < 2) throw DomainError("Gauss-Legendre order must be at least 2");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    const int n = order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = z;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // Legendre node z on [-1, 1] maps to (1 -/+ z) / 2 on [0, 1].
        const double w = 1.0 / ((1.0 - z * z) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = 0.5 * (1.0 - z);
        rule.nodes[hi] = 0.5 * (1.0 + z);
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    return rule;
}

namespace {

Quadrature tensor_gauss(const std::function<double(const QuadPoint&)>& f, Region region, int order) {
    if (region.triangular < 0 || region.triangular > 2) throw DomainError("at most two triangular axes");
    const GaussRule rule = gauss_legendre_rule(order);
    const std::size_t n = rule.nodes.size();
    const std::size_t nt = region.with_t ? n : 1;
    const std::size_t nu = region.triangular >= 1 ? n : 1;
    const std::size_t nv = region.triangular >= 2 ? n : 1;

    double total = 0.0;
    double magnitude = 0.0;
    for (std::size_t ix = 0; ix < n; ++ix) {
        const double x = rule.nodes[ix];
        double sx = 0.0;
        double ax = 0.0;
        for (std::size_t iu = 0; iu < nu; ++iu) {
            const double u = region.triangular >= 1 ? x * rule.nodes[iu] : 0.0;
            const double wu = region.triangular >= 1 ? x * rule.weights[iu] : 1.0;
            for (std::size_t iv = 0; iv < nv; ++iv) {
                const double v = region.triangular >= 2 ? x * rule.nodes[iv] : 0.0;
                const double wv = region.triangular >= 2 ? x * rule.weights[iv] : 1.0;
                double st = 0.0;
                double at = 0.0;
                for (std::size_t it = 0; it < nt; ++it) {
                    const double t = region.with_t ? rule.nodes[it] : 0.0;
                    const double wt = region.with_t ? rule.weights[it] : 1.0;
                    const double fv = f(QuadPoint{t, x, u, v});
                    st += wt * fv;
                    at += wt * std::abs(fv);
                }
                sx += wu * wv * st;
                ax += wu * wv * at;
            }
        }
        total += rule.weights[ix] * sx;
        magnitude += rule.weights[ix] * ax;
    }
    return {total, magnitude};
}

}  // namespace

double gauss_legendre(const std::function<double(const QuadPoint&)>& f, Region region, int order) {
    return tensor_gauss(f, region, order).value;
}

// Fornberg's recursion on the grid 0, 1, -1, 2, -2, ... (unit spacing).
std::vector<double> central_difference_weights(int derivative, int half_width) {
    if (derivative < 0 || half_width < 0 || 2 * half_width < derivative) {
        throw DomainError("stencil too narrow for the requested derivative");
    }
    const int npts = 2 * half_width + 1;
    std::vector<double> grid;
    grid.push_back(0.0);
    for (int i = 1; i <= half_width; ++i) {
        grid.push_back(i);
        grid.push_back(-i);
    }
    const int M = derivative;
    // delta[m][j] for the current number of points
    std::vector<std::vector<double>> delta(static_cast<std::size_t>(M + 1), std::vector<double>(grid.size(), 0.0));
    delta[0][0] = 1.0;
    double c1 = 1.0;
    for (int n = 1; n < npts; ++n) {
        double c2 = 1.0;
        const auto un = static_cast<std::size_t>(n);
        for (int nu = 0; nu < n; ++nu) {
            const auto unu = static_cast<std::size_t>(nu);
            const double c3 = grid[un] - grid[unu];
            c2 *= c3;
            if (nu == n - 1) {
                for (int m = std::min(n, M); m >= 0; --m) {
                    const auto um = static_cast<std::size_t>(m);
                    const double prev = m > 0 ? delta[um - 1][un - 1] : 0.0;
                    delta[um][un] = c1 / c2 * (m * prev - grid[un - 1] * delta[um][un - 1]);
                }
            }
            for (int m = std::min(n, M); m >= 0; --m) {
                const auto um = static_cast<std::size_t>(m);
                const double prev = m > 0 ? delta[um - 1][unu] : 0.0;
                delta[um][unu] = (grid[un] * delta[um][unu] - m * prev) / c3;
            }
        }
        c1 = c2;
    }
    std::vector<double> w(static_cast<std::size_t>(npts), 0.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        w[static_cast<std::size_t>(static_cast<int>(grid[j]) + half_width)] = delta[static_cast<std::size_t>(M)][j];
    }
    return w;
}

double lemma_first_moment(const MollifierSpec& spec, double r, const Options& opts) {
    if (std::abs(r) > 1.0) throw DomainError("scaled shift must satisfy |r| <= 1");
    const Mollifier m(spec);
    const double integral = gauss_legendre(
        [&](const QuadPoint& p) { return std::exp(-m.d2 * r * (1.0 - p.x)) * m.Q(p.x); }, Region{}, opts.order);
    return m.P(1.0) + m.d2 * integral - 0.5 * m.d2 * m.Q1(1.0);
}

double twisted_first_moment(const MollifierSpec& spec, double r, const Options& opts) {
    if (std::abs(r) > 1.0) throw DomainError("scaled shift must satisfy |r| <= 1");
    const Mollifier m(spec);
    const double integral = gauss_legendre(
        [&](const QuadPoint& p) { return std::exp(m.d2 * r * (1.0 - p.x)) * m.Q(p.x); }, Region{}, opts.order);
    return std::exp(-2.0 * r) * (m.P(1.0) + m.d2 * integral - 0.5 * m.d2 * m.Q1(1.0));
}

double lemma_J1(const MollifierSpec& spec, ScaledShift shift, const Options& opts) {
    return evaluate_lemma(j1_terms(Mollifier(spec)), shift, opts);
}

double lemma_J3(const MollifierSpec& spec, ScaledShift shift, const Options& opts) {
    return evaluate_lemma(j3_terms(Mollifier(spec)), shift, opts);
}

double lemma_J2(const MollifierSpec& spec, ScaledShift shift, const Options& opts) {
    return evaluate_lemma(j2_terms(Mollifier(spec)), shift, opts);
}

double oracle_first_bracket(const MollifierSpec& spec, int k, const Options& opts) {
    check_order(k);
    const ExpDifference diff(k, shift_step(k, opts), opts.richardson);
    return std::abs(diff.single([&](double r) { return twisted_first_moment(spec, r, opts); }));
}

double oracle_second_bracket(const MollifierSpec& spec, int k, const Options& opts) {
    check_order(k);
    const Mollifier m(spec);
    std::vector<LemmaTerm> terms = j1_terms(m);
    for (auto t : j3_terms(m)) {
        t.weight *= 2.0;  // M1 conj(M2) and its conjugate
        terms.push_back(std::move(t));
    }
    for (auto t : j2_terms(m)) terms.push_back(std::move(t));

    // The r, s differences are applied under the integral sign: the same linear
    // combination of lemma values, summed node by node.
    const ExpDifference diff(k, shift_step(k, opts), opts.richardson);
    return integrate_terms(terms, opts, [&](double X, double Y) { return diff.mixed(X, Y); });
}

double oracle_proportion(const MollifierSpec& spec, int k, const Options& opts) {
    const double c1 = oracle_first_bracket(spec, k, opts);
    const double c2 = oracle_second_bracket(spec, k, opts);
    if (c2 == 0.0) throw DegenerateInputError("oracle second moment vanishes");
    return c1 * c1 / c2;
}

}  // namespace mollify::oracle

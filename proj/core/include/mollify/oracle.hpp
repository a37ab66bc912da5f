#pragma once

#include "mollify/moments.hpp"

#include <functional>
#include <vector>

namespace mollify {

/// Independent floating-point evaluation of the shifted-moment main terms.
/// Shifts are scaled: r = alpha * log(q), s = beta * log(q), so that
/// y1^(alpha b) = exp(delta1 r b) and the lemmas become elementary integrals.
namespace oracle {

struct ScaledShift {
    double r = 0.0;
    double s = 0.0;
};

struct Options {
    int order = 32;               // Gauss-Legendre nodes per axis
    int max_order = 64;           // escalation limit before NumericalFailure
    double ab_step = 1.0 / 256.0; // central difference step in a and b
    double shift_step = 0.0;      // step in r and s; 0 picks a per-order default
    bool richardson = true;       // one Richardson level on every difference
    double convergence_tolerance = 1e-6;
};

struct QuadPoint {
    double t = 0.0;
    double x = 0.0;
    double u = 0.0;
    double v = 0.0;
};

/// Integration region: x in [0,1], optionally t in [0,1], and up to two
/// triangular axes u, v in [0, x] (mapped to [0,1] with Jacobian x).
struct Region {
    bool with_t = false;
    int triangular = 0;

    int dims() const { return 1 + (with_t ? 1 : 0) + triangular; }
};

struct GaussRule {
    std::vector<double> nodes;    // on [0, 1]
    std::vector<double> weights;  // summing to 1
};

GaussRule gauss_legendre_rule(int order);

/// Tensor-product Gauss-Legendre integral of f over `region`.
double gauss_legendre(const std::function<double(const QuadPoint&)>& f, Region region, int order);

/// Weights w_{-m..m} with f^(derivative)(0) ~ h^-derivative * sum w_i f(i h).
std::vector<double> central_difference_weights(int derivative, int half_width);

/// P(1) + d2 int_0^1 exp(-d2 r (1-x)) Q(x) dx - (d2/2) Q_1(1).
double lemma_first_moment(const MollifierSpec& spec, double r, const Options& opts = {});

/// exp(-2r) (P(1) + d2 int_0^1 exp(d2 r (1-x)) Q(x) dx - (d2/2) Q_1(1)): the
/// first moment after the functional-equation reflection, Gamma ratio set to 1.
double twisted_first_moment(const MollifierSpec& spec, double r, const Options& opts = {});

/// Main terms of the shifted second moments |M1|^2, M1 conj(M2) and |M2|^2;
/// d^2/da db at a = b = 0 taken by central differences.
double lemma_J1(const MollifierSpec& spec, ScaledShift shift, const Options& opts = {});
double lemma_J3(const MollifierSpec& spec, ScaledShift shift, const Options& opts = {});
double lemma_J2(const MollifierSpec& spec, ScaledShift shift, const Options& opts = {});

/// |d^k/dr^k twisted_first_moment| at 0.
double oracle_first_bracket(const MollifierSpec& spec, int k, const Options& opts = {});

/// d^k/dr^k d^k/ds^k [J1 + 2 J3 + J2] at 0.
double oracle_second_bracket(const MollifierSpec& spec, int k, const Options& opts = {});

/// oracle_first_bracket^2 / oracle_second_bracket, for 0 <= k <= 4.
double oracle_proportion(const MollifierSpec& spec, int k, const Options& opts = {});

}  // namespace oracle
}  // namespace mollify

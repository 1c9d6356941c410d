#include "fucik/quadrature.hpp"

#include <map>
#include <mutex>

namespace fucik {

namespace {

GaussRule compute_gauss(int n) {
    // Newton iteration on Legendre polynomials, nodes mapped to [0,1].
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5)); // initial guess on [-1,1]
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[n - 1 - i] = 0.5 * (1.0 + x);
        r.w[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

} // namespace

const GaussRule& gauss_rule(int order) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss(order)).first;
    return it->second;
}

namespace {
using namespace detail;

// Below this relative gap the antiderivative differences cancel
// catastrophically (the load formula loses two powers of b - a), so switch
// to Gauss quadrature; near-equal endpoints cannot bracket a sign change,
// which keeps the integrand smooth there.
constexpr double kDegenerate = 1e-4;

bool degenerate(double a, double b) {
    return std::abs(b - a) <= kDegenerate * (std::abs(a) + std::abs(b) + 1e-300);
}

template <typename F>
double gauss_mean(F f, double a, double b, double p) {
    const auto& g = gauss_rule(10);
    double acc = 0.0;
    for (std::size_t q = 0; q < g.x.size(); ++q)
        acc += g.w[q] * f(a + (b - a) * g.x[q], p);
    return acc;
}

template <typename Psi>
double mean_via(Psi psi, double a, double b, double p) {
    return (psi(b, p) - psi(a, p)) / (b - a);
}

template <typename Chi, typename Psi, typename F>
void load_via(Chi chi, Psi psi, F f, double a, double b, double p,
              double& out0, double& out1) {
    if (degenerate(a, b)) {
        const auto& g = gauss_rule(10);
        out0 = out1 = 0.0;
        for (std::size_t q = 0; q < g.x.size(); ++q) {
            const double t = g.x[q];
            const double v = g.w[q] * f(a + (b - a) * t, p);
            out0 += v * (1.0 - t);
            out1 += v * t;
        }
        return;
    }
    const double D = b - a;
    const double total = (chi(b, p) - chi(a, p)) / D;
    out1 = ((psi(b, p) - psi(a, p)) - a * (chi(b, p) - chi(a, p))) / (D * D);
    out0 = total - out1;
}

double f_signed(double u, double p) { return pow_abs(u, p - 1.0) * (u >= 0 ? 1.0 : -1.0); }
double f_pos(double u, double p) { return u > 0 ? std::pow(u, p - 1.0) : 0.0; }
double f_neg(double u, double p) { return u < 0 ? std::pow(-u, p - 1.0) : 0.0; }

} // namespace

double int_abs_pow(double a, double b, double p) {
    if (degenerate(a, b))
        return gauss_mean([](double u, double q) { return pow_abs(u, q); }, a, b, p);
    return mean_via(psi, a, b, p);
}

double int_pos_pow(double a, double b, double p) {
    if (degenerate(a, b))
        return gauss_mean(
            [](double u, double q) { return u > 0 ? std::pow(u, q) : 0.0; }, a, b, p);
    return mean_via(psi_pos, a, b, p);
}

double int_neg_pow(double a, double b, double p) {
    if (degenerate(a, b))
        return gauss_mean(
            [](double u, double q) { return u < 0 ? std::pow(-u, q) : 0.0; }, a, b, p);
    // primitive of (u^-)^p is -psi_neg (psi_neg itself is d/du -> (u^-)^{p-1} u)
    return mean_via([](double u, double q) { return -psi_neg(u, q); }, a, b, p);
}

void load_signed_pow(double a, double b, double p, double& out0, double& out1) {
    load_via(chi, psi, f_signed, a, b, p, out0, out1);
}

void load_pos_pow(double a, double b, double p, double& out0, double& out1) {
    load_via(chi_pos, psi_pos, f_pos, a, b, p, out0, out1);
}

void load_neg_pow(double a, double b, double p, double& out0, double& out1) {
    load_via(chi_neg, psi_neg, f_neg, a, b, p, out0, out1);
}

} // namespace fucik

#include "levyup/levy_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levyup/errors.hpp"
#include "levyup/quadrature.hpp"

namespace levyup {

namespace {

constexpr double kPi = std::numbers::pi;

struct Osc {
    double c = 0.0;  // int cos(a s) rho(s) ds
    double s = 0.0;  // int sin(a s) rho(s) ds
};

// Filon quadrature on a geometric grid: rho is replaced by its quadratic
// interpolant on each cell and the products with cos/sin integrated exactly.
template <class F>
Osc filon_log(const F& rho, double a, double lo, double hi, double ratio = 1.01) {
    Osc out;
    if (!(hi > lo)) return out;
    const int n = std::max(1, static_cast<int>(std::ceil(std::log(hi / lo) / std::log(ratio))));
    const double q = std::exp(std::log(hi / lo) / n);
    double s0 = lo;
    double r0 = rho(lo);
    for (int k = 0; k < n; ++k) {
        const double s2 = (k + 1 == n) ? hi : s0 * q;
        const double m = 0.5 * (s0 + s2);
        const double h = 0.5 * (s2 - s0);
        const double r1 = rho(m);
        const double r2 = rho(s2);
        const double c0 = r1;
        const double c1 = (r2 - r0) / (2.0 * h);
        const double c2 = (r0 - 2.0 * r1 + r2) / (2.0 * h * h);
        const double th = a * h;
        double C0, C2, S1;
        if (th < 0.05) {
            const double t2 = th * th;
            C0 = 2.0 * h * (1.0 - t2 / 6.0 + t2 * t2 / 120.0);
            C2 = 2.0 * h * h * h * (1.0 / 3.0 - t2 / 10.0 + t2 * t2 / 168.0);
            S1 = 2.0 * h * h * (th / 3.0 - th * t2 / 30.0 + th * t2 * t2 / 840.0);
        } else {
            const double st = std::sin(th), ct = std::cos(th);
            C0 = 2.0 * st / a;
            C2 = 2.0 / (a * a * a) * ((th * th - 2.0) * st + 2.0 * th * ct);
            S1 = 2.0 / (a * a) * (st - th * ct);
        }
        const double cm = std::cos(a * m), sm = std::sin(a * m);
        const double even = c0 * C0 + c2 * C2;
        const double odd = c1 * S1;
        out.c += cm * even - sm * odd;
        out.s += sm * even + cm * odd;
        s0 = s2;
        r0 = r2;
    }
    return out;
}

// sin(u) - u without cancellation for small u.
double sin_minus_id(double u) {
    if (std::abs(u) < 1e-3) {
        const double u2 = u * u;
        return -u * u2 / 6.0 * (1.0 - u2 / 20.0);
    }
    return std::sin(u) - u;
}

// Re and odd part of the jump integral for a one-dimensional radial law:
// re = int (1 - cos(a s)) mu(ds), odd = int (sin(a s) - a s 1{s<1}) mu(ds).
std::pair<double, double> radial_integrals(const RadialProfile& prof, double a, bool need_odd) {
    double re = 0.0, odd = 0.0;
    for (const auto& at : prof.atoms()) {
        const double h = std::sin(0.5 * a * at.radius);
        re += 2.0 * at.mass * h * h;
        if (need_odd)
            odd += at.mass * (at.radius < 1.0 ? sin_minus_id(a * at.radius) : std::sin(a * at.radius));
    }
    if (!prof.has_density()) return {re, odd};
    if (!prof.atoms().empty()) throw InvalidModel("profiles mixing atoms and a density are not supported");

    const double smax = prof.support_max();
    const double edge = std::isfinite(smax) ? smax * (1.0 - 1e-12) : smax;
    const double s_lo = std::min(1e-7 / a, 1e-3 * std::min(1.0, edge));
    auto rho = [&](double s) { return prof.density(s); };

    re += 0.5 * a * a * prof.trunc2(s_lo);

    const double A = std::min(edge, 16.0 * kPi / a);
    quad::Options opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-300;
    auto re_f = [&](double s) {
        const double h = std::sin(0.5 * a * s);
        return 2.0 * h * h * rho(s);
    };
    std::vector<double> cuts{s_lo};
    if (A > 1.0 && s_lo < 1.0) cuts.push_back(1.0);
    cuts.push_back(A);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        re += quad::integrate_log(re_f, cuts[i], cuts[i + 1], opt);

    if (need_odd) {
        quad::Options oo = opt;
        oo.abs_tol = 1e-13 * std::max(re, 1e-300);
        auto odd_f = [&](double s) {
            return (s < 1.0 ? sin_minus_id(a * s) : std::sin(a * s)) * rho(s);
        };
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            odd += quad::integrate_log(odd_f, cuts[i], cuts[i + 1], oo);
    }

    if (A < edge) {
        const double S = std::isfinite(edge) ? edge : A * 1e8;
        const Osc o = filon_log(rho, a, A, S);
        re += (prof.tail(A) - prof.tail(S)) - o.c;
        if (need_odd) {
            odd += o.s;
            if (A < 1.0) odd -= a * prof.moment1(A, std::min(1.0, S));
        }
        if (!std::isfinite(edge)) {
            const double rs = rho(S);
            re += prof.tail(S) + std::sin(a * S) * rs / a;
            if (need_odd) odd += std::cos(a * S) * rs / a;
        }
    }
    return {re, odd};
}

// Isotropic kernel E[cos(u <theta, e>)] for theta uniform on the sphere.
double isotropic_kernel(int d, double u) {
    if (u == 0.0) return 1.0;
    if (d == 3) return std::sin(u) / u;
    return std::cyl_bessel_j(0.0, u);
}

double isotropic_re(const RadialProfile& prof, int d, double a) {
    if (!prof.atoms().empty() || !prof.has_density()) {
        double re = 0.0;
        for (const auto& at : prof.atoms()) re += at.mass * (1.0 - isotropic_kernel(d, a * at.radius));
        if (prof.has_density()) throw InvalidModel("profiles mixing atoms and a density are not supported");
        return re;
    }
    const double smax = prof.support_max();
    const double edge = std::isfinite(smax) ? smax * (1.0 - 1e-12) : smax;
    const double s_lo = std::min(1e-7 / a, 1e-3 * std::min(1.0, edge));
    double re = 0.5 * a * a * prof.trunc2(s_lo) / d;
    const double A = std::min(edge, 1024.0 * kPi / a);
    quad::Options opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-300;
    opt.max_intervals = 100000;
    auto f = [&](double s) {
        const double u = a * s;
        const double k = u < 1e-3 ? u * u / (2.0 * d) : 1.0 - isotropic_kernel(d, u);
        return k * prof.density(s);
    };
    re += quad::integrate_log(f, s_lo, std::min(A, 1.0 / a), opt);
    if (A > 1.0 / a) {
        const double step = kPi / a;
        for (double s = 1.0 / a; s < A; s += step) re += quad::integrate(f, s, std::min(A, s + step), opt);
    }
    if (A < edge) re += prof.tail(A);
    return re;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "Holds";
        case Verdict::Fails: return "Fails";
        case Verdict::Indeterminate: return "Indeterminate";
    }
    return "?";
}

std::string to_string(ExtremumMode m) {
    switch (m) {
        case ExtremumMode::SupSup: return "SupSup";
        case ExtremumMode::SupSupAbs: return "SupSupAbs";
        case ExtremumMode::InfSup: return "InfSup";
        case ExtremumMode::InfSupRe: return "InfSupRe";
        case ExtremumMode::SupInfRe: return "SupInfRe";
    }
    return "?";
}

Concentration concentration(const LevyMeasure& nu, double r) {
    Concentration c;
    c.G = nu.tail(r);
    c.K = nu.trunc2(r) / (r * r);
    c.h = c.K + c.G;
    c.I = r * r * c.h;
    return c;
}

Concentration concentration(const ProcessSpec& spec, const Vec& x, double r) {
    Concentration c;
    c.G = spec.tail(x, r);
    c.K = spec.trunc2(x, r) / (r * r);
    c.h = c.K + c.G;
    c.I = r * r * c.h;
    return c;
}

Complex eval_exponent(const Triplet& tr, const Vec& xi) {
    const int d = tr.dim();
    if (xi.dim() != d) throw PreconditionViolated("frequency dimension does not match the triplet");
    double re = 0.0, im = -tr.drift.dot(xi);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) re += 0.5 * xi[i] * tr.gauss_at(i, j) * xi[j];
    const double a = xi.norm();
    if (a == 0.0 || tr.measure.is_zero()) return {re, im};
    const RadialProfile& prof = tr.measure.radial();
    if (d == 1) {
        const bool odd = tr.measure.p_plus() != 0.5;
        const auto [r, o] = radial_integrals(prof, a, odd);
        re += r;
        if (odd) im -= (2.0 * tr.measure.p_plus() - 1.0) * (xi[0] > 0 ? 1.0 : -1.0) * o;
    } else {
        re += isotropic_re(prof, d, a);
    }
    return {re, im};
}

std::vector<Vec> unit_directions(int dim, int count) {
    std::vector<Vec> out;
    if (dim == 1) {
        out.push_back(Vec{1.0});
        return out;
    }
    if (dim == 2) {
        for (int k = 0; k < count; ++k) {
            const double t = kPi * k / count;
            out.push_back(Vec{std::cos(t), std::sin(t)});
        }
        return out;
    }
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
        const double z = 1.0 - (k + 0.5) / count;  // upper hemisphere suffices
        const double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
        out.push_back(Vec{rr * std::cos(golden * k), rr * std::sin(golden * k), z});
    }
    return out;
}

std::vector<Vec> ball_points(const Vec& x, double radius, const GridOptions& opt) {
    std::vector<Vec> out;
    if (!(radius > 0.0)) {
        out.push_back(x);
        return out;
    }
    if (x.dim() == 1) {
        const int n = std::max(3, opt.z_points | 1);
        for (int k = 0; k < n; ++k) out.push_back(Vec{x[0] - radius + 2.0 * radius * k / (n - 1)});
        return out;
    }
    out.push_back(x);
    for (const Vec& u : unit_directions(x.dim(), 16)) {
        for (double f : {0.5, 1.0}) {
            out.push_back(x + u * (f * radius));
            out.push_back(x - u * (f * radius));
        }
    }
    return out;
}

namespace {

// sup over |xi| <= r of g(xi), g >= 0 with g(0) = 0.
template <class G>
double sup_frequency(int dim, double r, const G& g, const GridOptions& opt) {
    if (!(r > 0.0)) return 0.0;
    const int n = std::max(2, opt.radii);
    const double lo = std::log(r * opt.inner_ratio), hi = std::log(r);
    double best = 0.0;
    for (const Vec& u : unit_directions(dim, opt.directions)) {
        auto at = [&](double lr) { return g(u * std::exp(lr)); };
        std::vector<double> v(n);
        for (int k = 0; k < n; ++k) v[k] = at((k + 1 == n) ? hi : lo + (hi - lo) * k / (n - 1));
        double local = *std::max_element(v.begin(), v.end());
        const double step = (hi - lo) / (n - 1);
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        for (int arg = 1; arg + 1 < n; ++arg) {
            if (v[arg] < v[arg - 1] || v[arg] < v[arg + 1]) continue;
            double a = lo + step * (arg - 1), b = lo + step * (arg + 1);
            double c = b - gr * (b - a), d = a + gr * (b - a);
            double fc = at(c), fd = at(d);
            for (int it = 0; it < opt.refine_steps; ++it) {
                if (fc > fd) {
                    b = d; d = c; fd = fc;
                    c = b - gr * (b - a); fc = at(c);
                } else {
                    a = c; c = d; fc = fd;
                    d = a + gr * (b - a); fd = at(d);
                }
            }
            local = std::max({local, fc, fd});
        }
        best = std::max(best, local);
    }
    return best;
}

}  // namespace

double psi_star(const ProcessSpec& spec, const Vec& x, double r, const GridOptions& opt) {
    return sup_frequency(spec.dim(), r, [&](const Vec& xi) { return spec.symbol(x, xi).real(); }, opt);
}

double symbol_extremum(const ProcessSpec& spec, const Vec& x, double ball_radius, double xi_radius,
                       ExtremumMode mode, const GridOptions& opt) {
    if (ball_radius < 0.0 || !(xi_radius > 0.0))
        throw PreconditionViolated("symbol_extremum needs ball_radius >= 0 and xi_radius > 0");
    const bool constant = spec.family().state_independent();
    const std::vector<Vec> zs = constant ? std::vector<Vec>{x} : ball_points(x, ball_radius, opt);
    const int d = spec.dim();
    if (mode == ExtremumMode::SupInfRe) {
        return sup_frequency(d, xi_radius, [&](const Vec& xi) {
            double m = std::numeric_limits<double>::infinity();
            for (const Vec& z : zs) m = std::min(m, spec.symbol(z, xi).real());
            return std::max(m, 0.0);
        }, opt);
    }
    const bool use_abs = mode == ExtremumMode::SupSupAbs || mode == ExtremumMode::InfSup;
    const bool take_sup = mode == ExtremumMode::SupSup || mode == ExtremumMode::SupSupAbs;
    double out = take_sup ? 0.0 : std::numeric_limits<double>::infinity();
    for (const Vec& z : zs) {
        const double v = sup_frequency(d, xi_radius, [&](const Vec& xi) {
            const Complex q = spec.symbol(z, xi);
            return use_abs ? std::abs(q) : q.real();
        }, opt);
        out = take_sup ? std::max(out, v) : std::min(out, v);
    }
    return out;
}

std::vector<double> default_xi_grid(int per_decade) {
    std::vector<double> g;
    const int n = 10 * per_decade;
    for (int k = 0; k <= n; ++k) g.push_back(std::pow(10.0, -4.0 + 10.0 * k / n));
    return g;
}

ConditionReport sector_check(const ProcessSpec& spec, const Vec& center, double radius,
                             const std::vector<double>& xi_grid, const GridOptions& opt) {
    if (xi_grid.empty()) throw PreconditionViolated("empty frequency grid");
    for (double m : xi_grid)
        if (!(m > 0.0)) throw PreconditionViolated("frequency grid must exclude 0");
    ConditionReport rep;
    rep.grid = xi_grid;
    rep.values.assign(xi_grid.size(), 0.0);
    const bool constant = spec.family().state_independent();
    const auto zs = constant ? std::vector<Vec>{center} : ball_points(center, radius, opt);
    const auto dirs = unit_directions(spec.dim(), std::min(opt.directions, 8));
    bool any_nonzero = false;
    for (std::size_t k = 0; k < xi_grid.size(); ++k) {
        for (const Vec& z : zs) {
            for (const Vec& u : dirs) {
                for (double sgn : {1.0, -1.0}) {
                    const Complex q = spec.symbol(z, u * (sgn * xi_grid[k]));
                    if (q.real() != 0.0 || q.imag() != 0.0) any_nonzero = true;
                    if (q.real() <= 0.0) {
                        if (q.imag() != 0.0) {
                            rep.verdict = Verdict::Fails;
                            rep.witness = std::numeric_limits<double>::infinity();
                            rep.note = "Re q vanishes where Im q does not";
                            rep.values[k] = rep.witness;
                            return rep;
                        }
                        continue;
                    }
                    rep.values[k] = std::max(rep.values[k], std::abs(q.imag()) / q.real());
                }
            }
        }
    }
    if (!any_nonzero) throw DegenerateSymbol("Re q = Im q = 0 on the whole grid");
    const auto& v = rep.values;
    const std::size_t n = v.size(), mid = n / 2;
    auto rising = [&](std::size_t from, std::size_t to) {
        for (std::size_t k = from; k < to; ++k)
            if (!(v[k + 1] > v[k])) return false;
        return true;
    };
    if (n >= 4 && rising(mid, n - 1) && v[n - 1] > 1.0 && v[n - 1] > 10.0 * v[mid]) {
        rep.verdict = Verdict::Fails;
        rep.witness = v[n - 1];
        rep.note = "ratio |Im q|/Re q grows without bound as |xi| -> inf";
        return rep;
    }
    bool falling = n >= 4;
    for (std::size_t k = 0; falling && k < mid; ++k)
        if (!(v[k] > v[k + 1])) falling = false;
    if (falling && v[0] > 1.0 && v[0] > 10.0 * v[mid]) {
        rep.verdict = Verdict::Fails;
        rep.witness = v[0];
        rep.note = "ratio |Im q|/Re q grows without bound as |xi| -> 0";
        return rep;
    }
    rep.verdict = Verdict::Holds;
    rep.witness = *std::max_element(v.begin(), v.end());
    return rep;
}

double doubling_excess(const ProcessSpec& spec, const std::vector<Vec>& xs,
                       const std::vector<double>& mags) {
    double worst = -std::numeric_limits<double>::infinity();
    const auto dirs = unit_directions(spec.dim(), 4);
    for (const Vec& x : xs)
        for (const Vec& u : dirs)
            for (double m : mags)
                for (double sgn : {1.0, -1.0}) {
                    const Vec xi = u * (sgn * m);
                    const double q1 = std::abs(spec.symbol(x, xi));
                    const double q2 = std::abs(spec.symbol(x, xi * 2.0));
                    worst = std::max(worst, (q2 - 4.0 * q1) / (1.0 + 4.0 * q1));
                }
    return worst;
}

double fit_h_psi_constant(const ProcessSpec& spec, const Vec& x, const std::vector<double>& r_grid,
                          const GridOptions& opt) {
    double c = 1.0;
    for (double r : r_grid) {
        const double h = concentration(spec, x, r).h;
        const double p = psi_star(spec, x, 1.0 / r, opt);
        if (!(h > 0.0) || !(p > 0.0)) return std::numeric_limits<double>::infinity();
        c = std::max({c, h / p, p / h});
    }
    return c;
}

}  // namespace levyup

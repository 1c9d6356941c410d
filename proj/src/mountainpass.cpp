#include "fucik/mountainpass.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace fucik {

namespace {

SphereState make_state(const NonlocalEnergy& E, const Vector& u, double s) {
    SphereState st = project_to_S(E.mesh(), u);
    st.level = J_s(st.u, s, E);
    return st;
}

int argmax_level(const PathOnS& path) {
    int best = 0;
    for (int i = 1; i + 1 < static_cast<int>(path.samples.size()); ++i)
        if (path.samples[i].level > path.samples[best].level) best = i;
    return best;
}

double max_level(const PathOnS& path) {
    double m = path.samples.front().level;
    for (const auto& st : path.samples) m = std::max(m, st.level);
    return m;
}

// One projected-gradient descent step with Armijo backtracking on J_s.
// The move is capped at max_move so a sample can never overtake its path
// neighbors: an uncapped step can carry a high sample across the ridge and
// tear the path, letting the discrete maximum drop below the minimax level.
bool descend_sample(const NonlocalEnergy& E, double s, SphereState& st,
                    double max_move) {
    const Mesh& mesh = E.mesh();
    const Vector g = grad_J_s(st.u, s, E);
    const Vector n = constraint_gradient(mesh, st.u);
    const double nn = n.squaredNorm();
    const Vector d = g - (nn > 0 ? g.dot(n) / nn : 0.0) * n;
    const double dn2 = d.squaredNorm();
    if (dn2 == 0.0) return false;
    double step = 1.0 / (1.0 + std::sqrt(dn2));
    if (max_move > 0.0) step = std::min(step, max_move / std::sqrt(dn2));
    for (int bt = 0; bt < 40; ++bt) {
        SphereState trial;
        try {
            trial = make_state(E, st.u - step * d, s);
        } catch (const NotProjectable&) {
            step *= 0.5;
            continue;
        }
        if (trial.level <= st.level - 1e-4 * step * dn2) {
            st = std::move(trial);
            return true;
        }
        step *= 0.5;
    }
    return false;
}

// Path maximum refined by the projected midpoints of adjacent samples. The
// sample maximum alone can silently drop below the minimax level when two
// neighbors drift into opposite basins: the segment between them then passes
// near zero collar mass, its projection onto S is (nearly) discontinuous and
// the ridge between the samples goes unseen. The midpoint levels blow up in
// exactly that situation (and are set to +inf when the midpoint is not
// projectable at all), so guarding the refined maximum keeps the discrete
// path an honest sampling of a continuous path on S.
struct PathMax {
    double level = -1e300;
    SphereState state; // attaining sample or projected midpoint
    int pos = -1;      // insertion index when a midpoint attains the max
};

PathMax refined_max(const NonlocalEnergy& E, const PathOnS& path, double s) {
    PathMax out;
    for (const auto& st : path.samples)
        if (st.level > out.level) out.level = st.level, out.state = st;
    for (std::size_t i = 1; i < path.samples.size(); ++i) {
        try {
            SphereState mid = make_state(
                E, 0.5 * (path.samples[i - 1].u + path.samples[i].u), s);
            if (mid.level > out.level) {
                out.level = mid.level;
                out.state = std::move(mid);
                out.pos = static_cast<int>(i);
            }
        } catch (const NotProjectable&) {
            out.level = 1e300;
            return out;
        }
    }
    return out;
}

// Resample the polyline uniformly by nodal arc length; endpoints kept.
PathOnS reparametrize(const NonlocalEnergy& E, const PathOnS& path, double s) {
    const int m = static_cast<int>(path.samples.size());
    std::vector<double> cum(m, 0.0);
    for (int i = 1; i < m; ++i)
        cum[i] = cum[i - 1] + (path.samples[i].u - path.samples[i - 1].u).norm();
    const double total = cum[m - 1];
    if (total <= 0.0) return path;
    PathOnS out;
    out.samples.reserve(m);
    out.samples.push_back(path.samples.front());
    int seg = 0;
    for (int i = 1; i + 1 < m; ++i) {
        const double target = total * i / (m - 1);
        while (seg + 2 < m && cum[seg + 1] < target) ++seg;
        const double denom = cum[seg + 1] - cum[seg];
        const double w = denom > 0 ? (target - cum[seg]) / denom : 0.0;
        Vector v = (1.0 - w) * path.samples[seg].u + w * path.samples[seg + 1].u;
        out.samples.push_back(make_state(E, v, s));
    }
    out.samples.push_back(path.samples.back());
    return out;
}

} // namespace

PathOnS initial_path(const NonlocalEnergy& E, const Vector& phi1,
                     const Vector& witness, int m) {
    if (m < 17) throw ConfigError("path needs at least 17 samples");
    const double cosang = std::abs(phi1.dot(witness)) / (phi1.norm() * witness.norm());
    if (cosang > 1.0 - 1e-10)
        throw ConfigError("witness is parallel to phi1; choose a different witness");
    PathOnS path;
    path.samples.reserve(m);
    for (int i = 0; i < m; ++i) {
        const double t = -1.0 + 2.0 * i / (m - 1);
        Vector v = t * phi1 + (1.0 - std::abs(t)) * witness;
        try {
            path.samples.push_back(make_state(E, v, 0.0));
        } catch (const NotProjectable&) {
            throw ConfigError("path sample vanishes on the collar; "
                              "choose a different witness");
        }
    }
    // exact endpoints by construction
    path.samples.front().u = -phi1;
    path.samples.back().u = phi1;
    return path;
}

MinimaxResult deform(const PathOnS& start, double s, const NonlocalEnergy& E,
                     const DeformOptions& opts) {
    PathOnS path = start;
    const int m0 = static_cast<int>(path.samples.size());
    for (auto& st : path.samples) st.level = J_s(st.u, s, E);

    MinimaxResult res;
    CriticalPoint polished;
    bool have_polish = false;
    int stall = 0;
    PathMax cur = refined_max(E, path, s);
    double prev_level = cur.level;
    double step_scale = 1.0;

    // Escape hatch against stopping on a higher critical point: the stall
    // conditions hold at any saddle the path happens to drape over, not only
    // at the minimax one. A small deterministic perturbation followed by
    // renewed descent slides the path off saddles with more than one downhill
    // direction; at the mountain-pass saddle itself it re-stalls at the same
    // level, so repeated failures certify the value.
    std::mt19937 escape_rng(20240901u);
    int escapes = 0;
    const int max_escapes = 8;
    auto escape = [&] {
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int mm = static_cast<int>(path.samples.size());
        double total = 0.0;
        for (int i = 1; i < mm; ++i)
            total += (path.samples[i].u - path.samples[i - 1].u).norm();
        const double eta = 0.1 * total / (mm - 1);
        for (int i = 1; i + 1 < mm; ++i) {
            Vector xi(path.samples[i].u.size());
            for (int j = 0; j < xi.size(); ++j) xi[j] = gauss(escape_rng);
            xi *= eta / xi.norm();
            try {
                path.samples[i] = make_state(E, Vector(path.samples[i].u + xi), s);
            } catch (const NotProjectable&) {
                // keep the unperturbed sample
            }
        }
        cur = refined_max(E, path, s);
        prev_level = cur.level;
        stall = 0;
        step_scale = 1.0;
    };

    for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
        res.iterations = sweep;
        const double guard = 1e-14 * (1.0 + std::abs(cur.level));

        // move the top-k interior samples, highest level first (ties: lowest
        // index), each capped by the distance to its path neighbors
        const int m = static_cast<int>(path.samples.size());
        PathOnS cand = path;
        std::vector<int> idx(m - 2);
        std::iota(idx.begin(), idx.end(), 1);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return cand.samples[a].level > cand.samples[b].level;
        });
        double total = 0.0;
        for (int i = 1; i < m; ++i)
            total += (cand.samples[i].u - cand.samples[i - 1].u).norm();
        const double mean_gap = total / (m - 1);
        for (int r = 0; r < std::min(opts.top_k, static_cast<int>(idx.size())); ++r) {
            const int i = idx[r];
            const double gap =
                std::min((cand.samples[i].u - cand.samples[i - 1].u).norm(),
                         (cand.samples[i + 1].u - cand.samples[i].u).norm());
            descend_sample(E, s, cand.samples[i],
                           step_scale * 0.5 * std::max(gap, 0.25 * mean_gap));
        }

        // trust-region acceptance: the refined maximum must not increase
        PathMax cand_max = refined_max(E, cand, s);
        if (cand_max.level <= cur.level + guard) {
            path = std::move(cand);
            cur = std::move(cand_max);
            step_scale = std::min(1.0, 2.0 * step_scale);
        } else {
            step_scale = std::max(0.5 * step_scale, 1.0 / 1024.0);
        }

        // guarded arc-length reparametrization
        try {
            PathOnS rep = reparametrize(E, path, s);
            PathMax rep_max = refined_max(E, rep, s);
            if (rep_max.level <= cur.level + guard) {
                path = std::move(rep);
                cur = std::move(rep_max);
            }
        } catch (const NotProjectable&) {
            // keep the unreparametrized path
        }

        const double scale = 1.0 + std::abs(cur.level);
        const bool slow = prev_level - cur.level < opts.rel_tol * scale;
        prev_level = cur.level;
        stall = slow ? stall + 1 : 0;

        // a polished point left behind by a successful escape is stale
        if (have_polish && cur.level < polished.level - 0.02 * scale)
            have_polish = false;

        if (opts.polish && !have_polish && stall >= 3) {
            CriticalPoint cp = newton_polish(E, cur.state.u, s);
            if (cp.converged && std::abs(cp.level - cur.level) <= 0.02 * scale)
                polished = cp, have_polish = true;
        }
        // once stalled with the maximum at a midpoint, promote that midpoint
        // to a sample: the local gap halves and the midpoint overshoot of the
        // refined maximum shrinks quadratically
        if (stall >= 3 && cur.pos >= 0 &&
            static_cast<int>(path.samples.size()) < 4 * m0) {
            path.samples.insert(path.samples.begin() + cur.pos, cur.state);
            cur = refined_max(E, path, s);
            prev_level = cur.level;
            stall = 0;
        }
        // the refined maximum carries an O(gap^2) midpoint overshoot, so once
        // a matching critical point is in hand, persistent stall inside the
        // polish window counts as convergence to the polished level
        if (have_polish &&
            (cur.level <= polished.level + opts.rel_tol * scale ||
             (stall >= 6 && cur.level <= polished.level + 0.02 * scale))) {
            if (escapes < max_escapes) {
                ++escapes;
                escape();
                continue;
            }
            res.converged = true;
            res.c_value = polished.level;
            res.argmax_state.u = polished.u;
            res.argmax_state.level = polished.level;
            res.reduced_grad_at_max = reduced_grad_norm(polished.u, s, E);
            res.critical = polished;
            break;
        }
        if (!have_polish && stall >= 3) {
            const double rg = reduced_grad_norm(cur.state.u, s, E);
            if (rg < opts.grad_tol * scale) {
                if (escapes < max_escapes) {
                    ++escapes;
                    escape();
                    continue;
                }
                res.converged = true;
                res.c_value = cur.level;
                res.argmax_state = cur.state;
                res.reduced_grad_at_max = rg;
                break;
            }
        }
    }
    if (!res.converged) { // best so far, flagged
        res.c_value = cur.level;
        res.argmax_state = cur.state;
        res.reduced_grad_at_max = reduced_grad_norm(cur.state.u, s, E);
        if (have_polish) res.critical = polished;
    }
    res.path = std::move(path);
    return res;
}

double canonical_level(const NonlocalEnergy& E, const Vector& u, double s,
                       CanonicalFamily fam, double t) {
    const Mesh& mesh = E.mesh();
    const KernelParams& k = E.params();
    const double p = k.p;
    const double eps = mesh.spec.epsilon;
    const double Pc = region_integral_pow(mesh, u, p, true, SignPart::Plus);
    const double Nc = region_integral_pow(mesh, u, p, true, SignPart::Minus);
    const double Po = region_integral_pow(mesh, u, p, false, SignPart::Plus);
    const double No = region_integral_pow(mesh, u, p, false, SignPart::Minus);

    double sem, local, pos_collar, constraint;
    if (fam == CanonicalFamily::U2) {
        const double w0 = 1.0 - t, w1 = t;
        sem = E.seminorm_mapped(u, [&](double x) {
            const double xp = x > 0 ? x : 0.0, xn = x < 0 ? -x : 0.0;
            return std::pow(w0 * std::pow(xp, p) + w1 * std::pow(xn, p), 1.0 / p);
        });
        local = w0 * Po + w1 * No;
        pos_collar = w0 * Pc + w1 * Nc;
        constraint = pos_collar / eps;
    } else {
        const double A = fam == CanonicalFamily::U1 ? 1.0 : 1.0 - t;
        const double B = fam == CanonicalFamily::U1 ? 1.0 - t : 1.0;
        sem = E.seminorm_mapped(u, [&](double x) {
            return A * (x > 0 ? x : 0.0) - B * (x < 0 ? -x : 0.0);
        });
        const double Ap = std::pow(A, p), Bp = std::pow(B, p);
        local = Ap * Po + Bp * No;
        pos_collar = Ap * Pc;
        constraint = (Ap * Pc + Bp * Nc) / eps;
    }
    if (!(constraint > 0.0))
        throw NotProjectable("canonical path point vanishes on the collar");
    return (k.lambda * (1.0 - k.alpha) * sem + local - s / eps * pos_collar) / constraint;
}

Vector canonical_snapshot(const Mesh& mesh, const Vector& u, CanonicalFamily fam,
                          double t) {
    const double p = mesh.spec.p;
    Vector v(u.size());
    for (int i = 0; i < u.size(); ++i) {
        const double xp = u[i] > 0 ? u[i] : 0.0, xn = u[i] < 0 ? -u[i] : 0.0;
        switch (fam) {
            case CanonicalFamily::U1: v[i] = xp - (1.0 - t) * xn; break;
            case CanonicalFamily::U2:
                v[i] = std::pow((1.0 - t) * std::pow(xp, p) + t * std::pow(xn, p), 1.0 / p);
                break;
            case CanonicalFamily::U3: v[i] = (1.0 - t) * xp - xn; break;
        }
    }
    return project_to_S(mesh, v).u;
}

PathLevelReport verify_path_levels(const NonlocalEnergy& E, const Vector& u,
                                   double s, int samples, double tol) {
    PathLevelReport rep;
    const Vector us = project_to_S(E.mesh(), u).u;
    rep.mu = J_s(us, s, E);
    const CanonicalFamily fams[3] = {CanonicalFamily::U1, CanonicalFamily::U2,
                                     CanonicalFamily::U3};
    rep.ok = true;
    for (int f = 0; f < 3; ++f) {
        double best = -1e300, best_t = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double t = static_cast<double>(i) / (samples - 1);
            const double lv = canonical_level(E, us, s, fams[f], t);
            if (lv > best) best = lv, best_t = t;
        }
        rep.max_level[f] = best;
        rep.arg_t[f] = best_t;
        if (!(best <= rep.mu + tol)) rep.ok = false;
    }
    return rep;
}

} // namespace fucik

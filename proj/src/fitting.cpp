#include "wpert/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wpert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
    double a = 0.0, b = 0.0;
    double value = kInf;
};

// per-segment objective: KS contribution of the data falling inside the
// segment, against the segment's own CDF piece (with global ranks, so the
// maximum over segments is the global KS statistic)
class SegmentObjective {
  public:
    SegmentObjective(const FitRequest& req, int seg, int m)
        : req_(req), seg_(seg), m_(m) {
        const auto n = req.data.size();
        first_ = 0;
        while (first_ < n && segment_of(req.data[first_]) < seg) ++first_;
        last_ = first_;
        while (last_ < n && segment_of(req.data[last_]) == seg) ++last_;
    }

    bool has_data() const { return last_ > first_; }

    double operator()(double alpha, double beta_param) const {
        if (alpha < req_.box_lo || alpha > req_.box_hi ||
            beta_param < req_.box_lo || beta_param > req_.box_hi)
            return kInf;
        Wavelet w = Wavelet::beta(alpha, beta_param);
        const double sup = w.sup_abs();
        const double gain = req_.gain;
        double amplitude;
        const bool direct_ok = req_.base.kind() == DistKind::uniform &&
                               gain * m_ * sup <= 1.0;
        if (direct_ok)
            amplitude = gain;
        else
            amplitude = std::isfinite(sup) && sup > 0.0 ? gain / (m_ * sup) : 0.0;

        CumulativeWavelet cum(w);
        const double n = double(req_.data.size());
        double worst = 0.0;
        for (std::size_t i = first_; i < last_; ++i) {
            const double u = req_.base.cdf(req_.data[i]);
            const double fx =
                std::clamp(u + amplitude * cum(u * m_ - seg_), 0.0, 1.0);
            const double hi = double(i + 1) / n - fx;
            const double lo = fx - double(i) / n;
            worst = std::max({worst, hi, lo});
        }
        return worst;
    }

  private:
    int segment_of(double x) const {
        const double u = req_.base.cdf(x);
        return std::min(int(u * m_), m_ - 1);
    }
    const FitRequest& req_;
    int seg_;
    int m_;
    std::size_t first_ = 0, last_ = 0;
};

// deterministic 2-d Nelder-Mead; every probe goes through eval(), which
// enforces the budget and tracks the best point seen
template <typename Eval>
void nelder_mead(Candidate start, double step, Eval&& eval, bool& converged) {
    std::array<Candidate, 3> s = {start, start, start};
    s[1].a += step;
    s[2].b += step;
    for (int i = 1; i < 3; ++i) {
        s[i].value = eval(s[i].a, s[i].b);
        if (std::isnan(s[i].value)) return;
    }

    auto order = [&s]() {
        std::sort(s.begin(), s.end(), [](const Candidate& x, const Candidate& y) {
            if (x.value != y.value) return x.value < y.value;
            if (x.a != y.a) return x.a < y.a;
            return x.b < y.b;
        });
    };

    converged = false;
    for (int it = 0; it < 200; ++it) {
        order();
        const double diam = std::max(
            {std::fabs(s[0].a - s[1].a), std::fabs(s[0].a - s[2].a),
             std::fabs(s[0].b - s[1].b), std::fabs(s[0].b - s[2].b)});
        if (diam < 1e-4 || (s[2].value - s[0].value) < 1e-12) {
            converged = true;
            return;
        }
        const double ca = 0.5 * (s[0].a + s[1].a);
        const double cb = 0.5 * (s[0].b + s[1].b);
        Candidate refl{ca + (ca - s[2].a), cb + (cb - s[2].b), kInf};
        refl.value = eval(refl.a, refl.b);
        if (std::isnan(refl.value)) return;  // budget exhausted
        if (refl.value < s[0].value) {
            Candidate exp_{ca + 2.0 * (ca - s[2].a), cb + 2.0 * (cb - s[2].b), kInf};
            exp_.value = eval(exp_.a, exp_.b);
            if (std::isnan(exp_.value)) return;
            s[2] = exp_.value < refl.value ? exp_ : refl;
        } else if (refl.value < s[1].value) {
            s[2] = refl;
        } else {
            Candidate contr{ca + 0.5 * (s[2].a - ca), cb + 0.5 * (s[2].b - cb), kInf};
            contr.value = eval(contr.a, contr.b);
            if (std::isnan(contr.value)) return;
            if (contr.value < s[2].value) {
                s[2] = contr;
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].a = s[0].a + 0.5 * (s[i].a - s[0].a);
                    s[i].b = s[0].b + 0.5 * (s[i].b - s[0].b);
                    s[i].value = eval(s[i].a, s[i].b);
                    if (std::isnan(s[i].value)) return;
                }
            }
        }
    }
}

}  // namespace

double ks_statistic(const std::vector<double>& sorted_data,
                    const std::function<double(double)>& cdf) {
    const auto n = sorted_data.size();
    if (n == 0) throw std::invalid_argument("ks_statistic: empty sample");
    for (std::size_t i = 1; i < n; ++i)
        if (sorted_data[i] < sorted_data[i - 1])
            throw std::invalid_argument("ks_statistic: data must be sorted ascending");
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fx = cdf(sorted_data[i]);
        worst = std::max({worst, double(i + 1) / double(n) - fx,
                          fx - double(i) / double(n)});
    }
    return worst;
}

FitResult fit(const FitRequest& req, std::int64_t budget) {
    if (budget < 50) throw std::invalid_argument("fit: requires budget >= 50");
    if (req.data.empty()) throw std::invalid_argument("fit: empty data");
    for (std::size_t i = 1; i < req.data.size(); ++i)
        if (req.data[i] < req.data[i - 1])
            throw std::invalid_argument("fit: data must be sorted ascending");
    if (!(req.box_lo < req.box_hi) || req.box_lo <= 1.0)
        throw std::invalid_argument("fit: invalid parameter box");

    PerturbationSpec proto;
    proto.mode = req.mode;
    proto.gain = req.gain;
    const int m = proto.segment_count();
    if (m > 1 && !req.base.is_uniform01())
        throw std::invalid_argument(
            "fit: level2/level4 modes require the uniform [0,1] base");
    if (req.base.kind() == DistKind::uniform &&
        (req.data.front() < req.base.param1() ||
         req.data.back() > req.base.param2()))
        throw std::invalid_argument("fit: data outside the uniform base support");

    FitResult res;
    res.ks_before =
        ks_statistic(req.data, [&](double x) { return req.base.cdf(x); });

    std::int64_t used = 0;
    const std::int64_t share = budget / m;

    // below 2 the derivative endpoint blow-up drives the normalized
    // amplitude to zero, so this corner reproduces the unperturbed base
    const double neutral = req.box_lo;
    std::vector<Candidate> chosen(std::size_t(m),
                                  Candidate{neutral, neutral, kInf});
    bool all_converged = true;
    bool any_feasible = false;

    for (int j = 0; j < m; ++j) {
        SegmentObjective obj(req, j, m);
        if (!obj.has_data()) continue;

        Candidate best{neutral, neutral, kInf};
        std::int64_t seg_used = 0;
        auto eval = [&](double a, double b) -> double {
            if (seg_used >= share || used >= budget)
                return std::numeric_limits<double>::quiet_NaN();
            ++seg_used;
            ++used;
            const double v = obj(a, b);
            if (v < best.value ||
                (v == best.value && (a < best.a || (a == best.a && b < best.b)))) {
                best = {a, b, v};
            }
            if (std::isfinite(v)) any_feasible = true;
            return v;
        };

        // 8x8 coarse grid, row-major
        constexpr int kGrid = 8;
        bool grid_done = true;
        for (int ia = 0; ia < kGrid && grid_done; ++ia) {
            for (int ib = 0; ib < kGrid; ++ib) {
                const double a =
                    req.box_lo + (req.box_hi - req.box_lo) * ia / (kGrid - 1);
                const double b =
                    req.box_lo + (req.box_hi - req.box_lo) * ib / (kGrid - 1);
                if (std::isnan(eval(a, b))) {
                    grid_done = false;
                    break;
                }
            }
        }

        bool nm_converged = false;
        if (grid_done && best.value < kInf) {
            const double step = 0.5 * (req.box_hi - req.box_lo) / (kGrid - 1);
            nelder_mead(best, step, eval, nm_converged);
        }
        all_converged = all_converged && grid_done && nm_converged;
        chosen[std::size_t(j)] = best;
    }

    if (!any_feasible)
        throw std::runtime_error("fit: no feasible wavelet parameters in the box");

    auto assemble = [&](const std::vector<Candidate>& picks) {
        PerturbationSpec sp = proto;
        for (const Candidate& c : picks)
            sp.wavelets.push_back(Wavelet::beta(c.a, c.b));
        return sp;
    };

    PerturbationSpec fitted = assemble(chosen);
    PerturbedDistribution pd(req.base, fitted);
    double ks_fitted = ks_statistic(req.data, [&](double x) { return pd.cdf(x); });

    if (ks_fitted <= res.ks_before + 1e-12) {
        res.spec = std::move(fitted);
        res.ks_after = ks_fitted;
    } else {
        // never return worse than the unperturbed reference
        std::vector<Candidate> flat(std::size_t(m),
                                    Candidate{neutral, neutral, kInf});
        res.spec = assemble(flat);
        res.ks_after = res.ks_before;
        all_converged = false;
    }
    res.evaluations = used;
    res.converged = all_converged;
    return res;
}

}  // namespace wpert

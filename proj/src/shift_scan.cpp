#include "zetalab/shift_scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "zetalab/errors.hpp"
#include "zetalab/parallel.hpp"

namespace zetalab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Axis {
    double start = 0.0;
    double step = 0.0;
    std::size_t n = 0;
};

Axis make_axis(const std::vector<double>& v, const char* name) {
    if (v.empty()) throw DomainError(std::string("shift scan: empty grid axis ") + name);
    Axis a{v.front(), v.size() > 1 ? (v.back() - v.front()) / static_cast<double>(v.size() - 1) : 0.0, v.size()};
    const double scale = std::max(1.0, std::abs(v.front()) + std::abs(v.back()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw DomainError("shift scan: non-finite grid coordinate");
        if (std::abs(v[i] - (a.start + a.step * static_cast<double>(i))) > 1e-9 * scale)
            throw DomainError(std::string("shift scan: grid axis ") + name + " is not equally spaced");
    }
    return a;
}

struct GridAxes {
    Axis sigma;
    Axis t;
    std::size_t offset = 0;  // first value index of this grid
};

/// Per-term, per-grid factors: e^{-sigma_0 lambda}, e^{-dsigma lambda}, e^{-i t_0 lambda}, e^{-i dt lambda}.
struct TermTables {
    std::size_t terms = 0;
    std::vector<double> coef_re, coef_im, lambda;
    std::vector<double> step_re, step_im;  // e^{-i h lambda}
    struct PerGrid {
        std::vector<double> w0, wr, e0_re, e0_im, er_re, er_im;
    };
    std::vector<PerGrid> grids;
};

}  // namespace

struct ShiftedFunction::Impl {
    enum class Kind { series, hurwitz, direct };

    Kind kind = Kind::series;
    GridSet grids;
    std::vector<GridAxes> axes;
    std::size_t points = 0;
    double h = 1.0;
    GridExtent ext{};

    // series
    std::vector<Complex> coeffs;
    std::vector<double> lambdas;
    std::optional<TermTables> series_tables;

    // hurwitz
    std::optional<PeriodicSequence> seq;
    double alpha = 1.0;
    AccuracyBudget acc;
    bool entire = true;
    double class_tol = 0.0;
    std::optional<EulerProductSpec> removed_spec;  // multiply by the product of removed Euler factors

    // direct
    std::function<Complex(Complex)> f;

    void init_grids(GridSet g, double step) {
        if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("shift scan: h must be positive and finite");
        if (g.empty()) throw DomainError("shift scan: no grids");
        grids = std::move(g);
        h = step;
        for (const auto& grid : grids) {
            axes.push_back({make_axis(grid.sigmas, "sigma"), make_axis(grid.ts, "t"), points});
            points += grid.size();
        }
        ext = extent(grids);
    }

    bool has_pole() const { return kind == Kind::hurwitz && !entire; }

    /// Euler-Maclaurin cutoff N(k) shared by every residue class.
    std::int64_t cutoff_at(std::int64_t k) const {
        const double shift = static_cast<double>(k) * h;
        const double t_abs = std::max(std::abs(ext.t_min + shift), std::abs(ext.t_max + shift));
        const double beta_min = alpha / static_cast<double>(seq->period());
        return em::cutoff({ext.sigma_min, t_abs}, beta_min, 0.5 * class_tol);
    }

    std::size_t terms_at(std::int64_t k) const {
        if (kind == Kind::series) return coeffs.size();
        const std::int64_t n = cutoff_at(k);
        const auto q = static_cast<std::int64_t>(seq->period());
        if (n > acc.max_terms / q) {
            std::ostringstream os;
            os << "shift scan: " << n * q << " terms needed at shift k = " << k << " exceed max_terms "
               << acc.max_terms;
            throw AccuracyError(os.str());
        }
        return static_cast<std::size_t>(n * q);
    }

    TermTables build_tables(std::size_t terms) const {
        TermTables tb;
        tb.terms = terms;
        tb.coef_re.resize(terms);
        tb.coef_im.resize(terms);
        tb.lambda.resize(terms);
        tb.step_re.resize(terms);
        tb.step_im.resize(terms);
        for (std::size_t m = 0; m < terms; ++m) {
            Complex c;
            double lam;
            if (kind == Kind::series) {
                c = coeffs[m];
                lam = lambdas[m];
            } else {
                c = (*seq)[m];
                lam = std::log(static_cast<double>(m) + alpha);
            }
            tb.coef_re[m] = c.real();
            tb.coef_im[m] = c.imag();
            tb.lambda[m] = lam;
            tb.step_re[m] = std::cos(h * lam);
            tb.step_im[m] = -std::sin(h * lam);
        }
        tb.grids.resize(axes.size());
        for (std::size_t g = 0; g < axes.size(); ++g) {
            auto& pg = tb.grids[g];
            const auto& ax = axes[g];
            for (auto* v : {&pg.w0, &pg.wr, &pg.e0_re, &pg.e0_im, &pg.er_re, &pg.er_im}) v->resize(terms);
            for (std::size_t m = 0; m < terms; ++m) {
                const double lam = tb.lambda[m];
                pg.w0[m] = std::exp(-ax.sigma.start * lam);
                pg.wr[m] = std::exp(-ax.sigma.step * lam);
                pg.e0_re[m] = std::cos(ax.t.start * lam);
                pg.e0_im[m] = -std::sin(ax.t.start * lam);
                pg.er_re[m] = std::cos(ax.t.step * lam);
                pg.er_im[m] = -std::sin(ax.t.step * lam);
            }
        }
        return tb;
    }
};

namespace {

/// Per-thread phasor state for one segment of consecutive shifts.
class Cursor {
public:
    Cursor(const ShiftedFunction::Impl& f, const TermTables* tables) : f_(f), tb_(tables) {}

    void evaluate(std::int64_t k, bool reset, std::vector<Complex>& out) {
        out.assign(f_.points, Complex{});
        if (f_.kind == ShiftedFunction::Impl::Kind::direct) {
            evaluate_direct(k, out);
            return;
        }
        const std::size_t terms = f_.terms_at(k);
        if (reset) {
            // Start from the segment boundary at or below k, so the value at k depends on k alone.
            const std::int64_t base = k - k % ShiftedFunction::kSegment;
            rebuild(base);
            for (std::int64_t j = base; j < k; ++j) advance();
        }
        sum_terms(terms, out);
        advance();
        if (f_.kind == ShiftedFunction::Impl::Kind::hurwitz) add_tails(k, terms / f_.seq->period(), out);
    }

    /// Phasors for the whole segment are sized once, for its last shift.
    void reserve(std::size_t terms) { capacity_ = std::min(terms, tb_->terms); }

private:
    void rebuild(std::int64_t k) {
        const std::size_t n = capacity_;
        ph_re_.resize(n);
        ph_im_.resize(n);
        const double kh = static_cast<double>(k) * f_.h;
        for (std::size_t m = 0; m < n; ++m) {
            const double angle = std::fmod(kh * tb_->lambda[m], kTwoPi);
            ph_re_[m] = std::cos(angle);
            ph_im_[m] = -std::sin(angle);
        }
    }

    void advance() {
        const std::size_t n = ph_re_.size();
        const double* sr = tb_->step_re.data();
        const double* si = tb_->step_im.data();
        double* pr = ph_re_.data();
        double* pi = ph_im_.data();
        for (std::size_t m = 0; m < n; ++m) {
            const double r = pr[m] * sr[m] - pi[m] * si[m];
            const double i = pr[m] * si[m] + pi[m] * sr[m];
            pr[m] = r;
            pi[m] = i;
        }
    }

    void sum_terms(std::size_t terms, std::vector<Complex>& out) {
        if (terms > ph_re_.size()) throw Error("shift scan: internal phasor capacity exceeded");
        for (std::size_t g = 0; g < f_.axes.size(); ++g) {
            const auto& ax = f_.axes[g];
            const auto& pg = tb_->grids[g];
            const std::size_t ns = ax.sigma.n;
            const std::size_t nt = ax.t.n;
            acc_re_.assign(ns * nt, 0.0);
            acc_im_.assign(ns * nt, 0.0);
            row_re_.resize(nt);
            row_im_.resize(nt);
            for (std::size_t m = 0; m < terms; ++m) {
                // coefficient * phasor * e^{-i t_0 lambda}
                const double cr = tb_->coef_re[m] * ph_re_[m] - tb_->coef_im[m] * ph_im_[m];
                const double ci = tb_->coef_re[m] * ph_im_[m] + tb_->coef_im[m] * ph_re_[m];
                double br = cr * pg.e0_re[m] - ci * pg.e0_im[m];
                double bi = cr * pg.e0_im[m] + ci * pg.e0_re[m];
                const double er = pg.er_re[m];
                const double ei = pg.er_im[m];
                for (std::size_t b = 0; b < nt; ++b) {
                    row_re_[b] = br;
                    row_im_[b] = bi;
                    const double r = br * er - bi * ei;
                    bi = br * ei + bi * er;
                    br = r;
                }
                double w = pg.w0[m];
                const double wr = pg.wr[m];
                double* ar = acc_re_.data();
                double* ai = acc_im_.data();
                for (std::size_t a = 0; a < ns; ++a) {
                    for (std::size_t b = 0; b < nt; ++b) {
                        ar[b] += w * row_re_[b];
                        ai[b] += w * row_im_[b];
                    }
                    ar += nt;
                    ai += nt;
                    w *= wr;
                }
            }
            for (std::size_t i = 0; i < ns * nt; ++i) out[ax.offset + i] = {acc_re_[i], acc_im_[i]};
        }
    }

    void add_tails(std::int64_t k, std::size_t n_classes_terms, std::vector<Complex>& out) const {
        const auto& seq = *f_.seq;
        const double q = static_cast<double>(seq.period());
        const double log_q = std::log(q);
        const double n = static_cast<double>(n_classes_terms);
        const double shift = static_cast<double>(k) * f_.h;
        for (std::size_t g = 0; g < f_.grids.size(); ++g) {
            const auto& grid = f_.grids[g];
            const std::size_t offset = f_.axes[g].offset;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const Complex s = grid.point(i) + Complex(0.0, shift);
                if (!f_.entire && std::abs(s - 1.0) < kPoleGuard)
                    throw PoleError("shift scan: shifted grid point hits the pole at s = 1");
                Complex tails;
                for (std::size_t l = 0; l < seq.period(); ++l) {
                    const Complex b = seq.values()[l];
                    if (b == Complex{}) continue;
                    tails += b * em::tail(s, n + (static_cast<double>(l) + f_.alpha) / q, f_.entire);
                }
                Complex v = out[offset + i] + std::exp(-s * log_q) * tails;
                if (f_.removed_spec) v *= removed_factor_product(s, *f_.removed_spec);
                out[offset + i] = v;
            }
        }
    }

    void evaluate_direct(std::int64_t k, std::vector<Complex>& out) const {
        const double shift = static_cast<double>(k) * f_.h;
        for (std::size_t g = 0; g < f_.grids.size(); ++g) {
            const auto& grid = f_.grids[g];
            for (std::size_t i = 0; i < grid.size(); ++i)
                out[f_.axes[g].offset + i] = f_.f(grid.point(i) + Complex(0.0, shift));
        }
    }

    const ShiftedFunction::Impl& f_;
    const TermTables* tb_;
    std::size_t capacity_ = 0;
    std::vector<double> ph_re_, ph_im_, acc_re_, acc_im_, row_re_, row_im_;
};

}  // namespace

ShiftedFunction ShiftedFunction::finite_series(std::vector<Complex> coeffs, std::vector<double> lambdas, GridSet grids,
                                               double h) {
    if (coeffs.size() != lambdas.size()) throw DomainError("finite_series: coefficient/frequency length mismatch");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        require_finite(coeffs[i], "finite_series coefficient");
        if (!std::isfinite(lambdas[i])) throw DomainError("finite_series: non-finite frequency");
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::series;
    impl->init_grids(std::move(grids), h);
    impl->coeffs = std::move(coeffs);
    impl->lambdas = std::move(lambdas);
    impl->series_tables = impl->build_tables(impl->coeffs.size());
    return ShiftedFunction(std::move(impl));
}

ShiftedFunction ShiftedFunction::periodic_hurwitz(const PeriodicSequence& seq, double alpha, GridSet grids, double h,
                                                  const AccuracyBudget& acc) {
    acc.validate();
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("periodic_hurwitz: alpha must lie in (0, 1]");
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::hurwitz;
    impl->init_grids(std::move(grids), h);
    if (impl->ext.sigma_min + 2.0 * em::kOrder - 1.0 <= 1.0)
        throw DomainError("periodic_hurwitz: real part too negative for the Euler-Maclaurin evaluator");
    impl->seq = seq;
    impl->alpha = alpha;
    impl->acc = acc;
    impl->entire = seq.is_entire();
    double weight = 0.0;
    for (const auto& b : seq.values()) weight += std::abs(b);
    const double k_pow_sigma = std::pow(static_cast<double>(seq.period()), impl->ext.sigma_min);
    impl->class_tol = std::max(1e-15, acc.abs_tol * std::min(1.0, k_pow_sigma) / weight);
    return ShiftedFunction(std::move(impl));
}

ShiftedFunction ShiftedFunction::phi(const EulerProductSpec& spec, GridSet grids, double h,
                                     const AccuracyBudget& acc) {
    if (!spec.has_continuation()) {
        return direct([spec, acc](Complex s) { return matsumoto_eval(s, spec, acc).value; }, std::move(grids), h);
    }
    // Tolerance is shared with the removed-factor product exactly as phi_value does.
    GridExtent ext = extent(grids);
    double removed_bound = 1.0;
    for (const auto& [p, list] : spec.removed())
        for (const auto& lf : list)
            removed_bound *= 1.0 + std::abs(lf.coefficient) *
                                       std::pow(static_cast<double>(p), -lf.exponent * (ext.sigma_min + spec.shift()));
    AccuracyBudget inner = acc;
    inner.abs_tol = std::max(1e-15, acc.abs_tol / removed_bound);
    auto fn = periodic_hurwitz(*spec.continuation_sequence(), 1.0, std::move(grids), h, inner);
    if (!spec.removed().empty()) {
        auto impl = std::make_shared<Impl>(*fn.impl_);
        impl->removed_spec = spec;
        return ShiftedFunction(std::move(impl));
    }
    return fn;
}

ShiftedFunction ShiftedFunction::direct(std::function<Complex(Complex)> f, GridSet grids, double h) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::direct;
    impl->init_grids(std::move(grids), h);
    impl->f = std::move(f);
    return ShiftedFunction(std::move(impl));
}

const GridSet& ShiftedFunction::grids() const { return impl_->grids; }
std::size_t ShiftedFunction::size() const { return impl_->points; }
double ShiftedFunction::h() const { return impl_->h; }

bool ShiftedFunction::hits_pole(std::int64_t k) const {
    if (!impl_->has_pole()) return false;
    const double shift = static_cast<double>(k) * impl_->h;
    for (const auto& grid : impl_->grids)
        for (double s : grid.sigmas)
            for (double t : grid.ts)
                if (std::abs(Complex(s, t + shift) - 1.0) < kPoleGuard) return true;
    return false;
}

void ShiftedFunction::for_each_shift(const std::vector<std::int64_t>& ks, const Visitor& visit) const {
    if (ks.empty()) return;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] < 0) throw DomainError("shift scan: shifts must be non-negative");
        if (i > 0 && ks[i] <= ks[i - 1]) throw DomainError("shift scan: shifts must be strictly increasing");
    }
    const Impl& f = *impl_;

    // Segment starts: fixed by the k values alone.
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < ks.size(); ++i)
        if (i == 0 || ks[i] != ks[i - 1] + 1 || ks[i] % kSegment == 0) starts.push_back(i);
    starts.push_back(ks.size());

    std::optional<TermTables> local_tables;
    const TermTables* tables = nullptr;
    if (f.kind == Impl::Kind::series) {
        tables = &*f.series_tables;
    } else if (f.kind == Impl::Kind::hurwitz) {
        std::size_t most = 0;
        for (std::size_t j = 0; j + 1 < starts.size(); ++j) most = std::max(most, f.terms_at(ks[starts[j + 1] - 1]));
        for (std::size_t j = 0; j + 1 < starts.size(); ++j) most = std::max(most, f.terms_at(ks[starts[j]]));
        local_tables = f.build_tables(most);
        tables = &*local_tables;
    }

    parallel_for(starts.size() - 1, [&](std::size_t j) {
        Cursor cursor(f, tables);
        if (tables) {
            std::size_t need = 0;
            for (std::size_t i = starts[j]; i < starts[j + 1]; ++i) need = std::max(need, f.terms_at(ks[i]));
            cursor.reserve(need);
        }
        std::vector<Complex> values;
        for (std::size_t i = starts[j]; i < starts[j + 1]; ++i) {
            cursor.evaluate(ks[i], i == starts[j], values);
            visit(i, ks[i], values);
        }
    });
}

std::vector<Complex> ShiftedFunction::values_at(std::int64_t k) const {
    std::vector<Complex> out;
    for_each_shift({k}, [&](std::size_t, std::int64_t, std::span<const Complex> v) { out.assign(v.begin(), v.end()); });
    return out;
}

void for_each_shift_pair(const ShiftedFunction& f, const ShiftedFunction& g, const std::vector<std::int64_t>& ks,
                         const PairVisitor& visit) {
    const std::size_t points = std::max<std::size_t>(f.size(), 1);
    const std::size_t budget = (64u << 20) / (points * sizeof(Complex));
    const std::size_t block = std::max<std::size_t>(256, budget / 256 * 256);
    std::vector<Complex> buffer;
    for (std::size_t lo = 0; lo < ks.size(); lo += block) {
        const std::size_t hi = std::min(ks.size(), lo + block);
        const std::vector<std::int64_t> part(ks.begin() + static_cast<std::ptrdiff_t>(lo),
                                             ks.begin() + static_cast<std::ptrdiff_t>(hi));
        buffer.assign(part.size() * f.size(), Complex{});
        f.for_each_shift(part, [&](std::size_t i, std::int64_t, std::span<const Complex> v) {
            std::copy(v.begin(), v.end(), buffer.begin() + static_cast<std::ptrdiff_t>(i * f.size()));
        });
        g.for_each_shift(part, [&](std::size_t i, std::int64_t k, std::span<const Complex> v) {
            visit(lo + i, k, std::span<const Complex>(buffer.data() + i * f.size(), f.size()), v);
        });
    }
}

std::vector<std::int64_t> shift_range(std::int64_t n) {
    if (n < 0) throw DomainError("shift range: N must be non-negative");
    std::vector<std::int64_t> ks(static_cast<std::size_t>(n) + 1);
    for (std::int64_t k = 0; k <= n; ++k) ks[static_cast<std::size_t>(k)] = k;
    return ks;
}

}  // namespace zetalab

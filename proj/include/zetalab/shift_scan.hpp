#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "zetalab/grid.hpp"
#include "zetalab/numerics.hpp"
#include "zetalab/zetas.hpp"

namespace zetalab {

/// A function evaluated on a fixed grid set along the shifts s + i k h.
///
/// Dirichlet-type sums are evaluated with one phasor e^{-i k h log(m + alpha)} per term,
/// advanced by a fixed step from one k to the next instead of recomputed. Phasors are
/// rebuilt exactly at multiples of kSegment and stepped from there, so the value at a
/// given k is the same bits whichever shift list or thread split produced it.
///
/// Grid axes must be equally spaced (RectGrid::uniform produces such grids).
class ShiftedFunction {
public:
    static constexpr std::int64_t kSegment = 256;

    /// sum_j coeffs[j] exp(-s lambdas[j]).
    static ShiftedFunction finite_series(std::vector<Complex> coeffs, std::vector<double> lambdas, GridSet grids,
                                         double h);

    /// zeta(s, alpha; B), Euler-Maclaurin with the cutoff chosen per shift for acc.abs_tol.
    static ShiftedFunction periodic_hurwitz(const PeriodicSequence& seq, double alpha, GridSet grids, double h,
                                            const AccuracyBudget& acc);

    /// phi(s) of a spec. Registry members run through their continuation (times the product of any
    /// removed Euler factors); custom specs are evaluated pointwise by matsumoto_eval.
    static ShiftedFunction phi(const EulerProductSpec& spec, GridSet grids, double h, const AccuracyBudget& acc);

    /// Any pointwise evaluator; no ladders, only parallelism.
    static ShiftedFunction direct(std::function<Complex(Complex)> f, GridSet grids, double h);

    const GridSet& grids() const;
    std::size_t size() const;
    double h() const;

    /// True when a grid point shifted by i k h lies within kPoleGuard of a pole.
    bool hits_pole(std::int64_t k) const;

    using Visitor = std::function<void(std::size_t index, std::int64_t k, std::span<const Complex> values)>;

    /// Calls visit(i, ks[i], values) for every i; ks must be strictly increasing and non-negative.
    /// visit runs concurrently on several threads for distinct i.
    void for_each_shift(const std::vector<std::int64_t>& ks, const Visitor& visit) const;

    /// Values on the grid set at shift k (concatenated grid by grid).
    std::vector<Complex> values_at(std::int64_t k) const;

    struct Impl;

private:
    explicit ShiftedFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

using PairVisitor = std::function<void(std::size_t index, std::int64_t k, std::span<const Complex> f_values,
                                       std::span<const Complex> g_values)>;

/// Visits f and g at the same shifts. Shifts are processed in blocks sized so the buffered
/// values of f stay below about 64 MB; values are unaffected by the blocking.
void for_each_shift_pair(const ShiftedFunction& f, const ShiftedFunction& g, const std::vector<std::int64_t>& ks,
                         const PairVisitor& visit);

/// 0, 1, ..., n.
std::vector<std::int64_t> shift_range(std::int64_t n);

}  // namespace zetalab

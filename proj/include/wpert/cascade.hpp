#pragma once

#include <vector>

namespace wpert {

//! Dyadic sample table of a compactly supported function, spacing 2^-depth.
//!
//! Between samples the function is taken as linear; outside the support it
//! is zero. The running integral of the interpolant is available in closed
//! form (piecewise quadratic), which keeps table-backed wavelets exact.
struct CascadeTable {
    double support_lo = 0.0;
    double support_hi = 0.0;
    int depth = 0;
    std::vector<double> values;           // samples at support_lo + k * 2^-depth
    std::vector<double> integral_prefix;  // exact interpolant integral up to knot k

    double spacing() const { return support_len() / double(values.size() - 1); }
    double support_len() const { return support_hi - support_lo; }

    //! Linear interpolation; 0 outside [support_lo, support_hi].
    double operator()(double x) const;

    //! Exact integral of the interpolant over [support_lo, x].
    double integral_to(double x) const;

    double integral_total() const { return integral_prefix.back(); }
    double max_abs() const;
};

struct CascadePair {
    CascadeTable scaling;
    CascadeTable wavelet;
};

//! Orthonormal Daubechies scaling filter with `order` vanishing moments
//! (2 * order taps). Orders 1 through 4 are built in.
const std::vector<double>& daubechies_filter(int order);

//! Builds scaling/wavelet tables for a scaling filter by exact dyadic
//! refinement of the two-scale relation.
//!
//! Integer-grid values come from the eigenvector of the refinement operator
//! (normalized to unit sum); midpoints are then filled level by level, so
//! the sampled values are exact, not iterates. Wavelet samples follow from
//! the quadrature-mirror filter g_n = (-1)^n h_{N-1-n}.
//!
//! Requires the filter to sum to sqrt(2) within 1e-12 and depth in [6, 16].
CascadePair cascade(const std::vector<double>& scaling_filter, int depth);

}  // namespace wpert

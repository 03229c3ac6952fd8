// SPDX-License-Identifier: Apache-2.0
//
// Radial interaction potentials and their 3D Fourier transforms
//   Vt(q) = integral d^3x exp(i q.x / hbar) V(|x|)
//         = 4 pi integral_0^inf r^2 V(r) sin(q r / hbar) / (q r / hbar) dr
// in internal units (hbar = 1). Every kind carries an analytic transform
// where one exists; fourier_numeric() is the quadrature route used as an
// independent cross-check and for tabulated data.
#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cohscat/error.hpp"
#include "cohscat/quadrature.hpp"

namespace cohscat {

namespace detail {

inline std::string format_param(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// sin(x)/x with a series fallback near zero.
inline double sinc(double x)
{
    double const ax = std::abs(x);
    if (ax < 1e-4)
    {
        double const x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

// Natural cubic spline on strictly increasing abscissae.
class CubicSpline {
  public:
    CubicSpline() = default;

    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y))
    {
        std::size_t const n = x_.size();
        if (n < 2 || y_.size() != n)
        {
            fail("potential.tabulated_bad_samples",
                 "tabulated potential needs >= 2 samples of equal length");
        }
        for (std::size_t i = 1; i < n; ++i)
        {
            if (!(x_[i] > x_[i - 1]))
            {
                fail("potential.tabulated_bad_samples",
                     "tabulated radii must be strictly increasing");
            }
        }
        // Second derivatives from the natural-spline tridiagonal system
        // (Thomas algorithm).
        m_.assign(n, 0.0);
        if (n > 2)
        {
            std::vector<double> diag(n - 2), rhs(n - 2), upper(n - 2);
            for (std::size_t i = 1; i + 1 < n; ++i)
            {
                double const h0 = x_[i] - x_[i - 1];
                double const h1 = x_[i + 1] - x_[i];
                diag[i - 1] = 2.0 * (h0 + h1);
                upper[i - 1] = h1;
                rhs[i - 1] = 6.0
                             * ((y_[i + 1] - y_[i]) / h1
                                - (y_[i] - y_[i - 1]) / h0);
            }
            for (std::size_t i = 1; i < n - 2; ++i)
            {
                double const h = x_[i] - x_[i - 1];
                double const w = h / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            for (std::size_t i = n - 2; i-- > 0;)
            {
                double const next = (i + 1 < n - 2) ? m_[i + 2] : 0.0;
                m_[i + 1] = (rhs[i] - upper[i] * next) / diag[i];
            }
        }
    }

    double front() const { return x_.front(); }
    double back() const { return x_.back(); }

    double operator()(double x) const
    {
        if (x < x_.front() || x > x_.back())
        {
            fail("potential.tabulated_out_of_domain",
                 "tabulated potential evaluated outside its sample domain");
        }
        std::size_t lo = 0, hi = x_.size() - 1;
        while (hi - lo > 1)
        {
            std::size_t const mid = (lo + hi) / 2;
            (x_[mid] <= x ? lo : hi) = mid;
        }
        double const h = x_[hi] - x_[lo];
        double const a = (x_[hi] - x) / h;
        double const b = (x - x_[lo]) / h;
        return a * y_[lo] + b * y_[hi]
               + ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * h * h
                     / 6.0;
    }

  private:
    std::vector<double> x_, y_, m_;
};

}  // namespace detail

class Potential {
  public:
    enum class Kind { coulomb, yukawa, gaussian, tabulated };

    // V(r) = g / r.
    static Potential coulomb(double coupling)
    {
        Potential p(Kind::coulomb);
        p.coupling_ = coupling;
        return p;
    }

    // V(r) = g exp(-r / d) / r with screening length d.
    static Potential yukawa(double coupling, double screening_length)
    {
        if (!(screening_length > 0))
        {
            fail("potential.bad_parameter", "screening length must be > 0");
        }
        Potential p(Kind::yukawa);
        p.coupling_ = coupling;
        p.screening_length_ = screening_length;
        return p;
    }

    // V(r) = V0 exp(-r^2 / (2 w^2)).
    static Potential gaussian(double strength, double width)
    {
        if (!(width > 0))
        {
            fail("potential.bad_parameter", "gaussian width must be > 0");
        }
        Potential p(Kind::gaussian);
        p.strength_ = strength;
        p.width_ = width;
        return p;
    }

    // Radial samples interpolated with a natural cubic spline. The
    // potential is taken as zero outside the sampled domain for the
    // transform; pointwise evaluation there is an error, never silent
    // extrapolation.
    static Potential tabulated(std::vector<double> radii,
                               std::vector<double> values)
    {
        Potential p(Kind::tabulated);
        if (!radii.empty() && radii.front() < 0)
        {
            fail("potential.tabulated_bad_samples", "radii must be >= 0");
        }
        p.spline_ = detail::CubicSpline(std::move(radii), std::move(values));
        return p;
    }

    Kind kind() const { return kind_; }

    double operator()(double r) const
    {
        switch (kind_)
        {
            case Kind::coulomb:
                return coupling_ / r;
            case Kind::yukawa:
                return coupling_ * std::exp(-r / screening_length_) / r;
            case Kind::gaussian:
                return strength_ * std::exp(-0.5 * (r / width_) * (r / width_));
            case Kind::tabulated:
                return spline_(r);
        }
        fail("potential.bad_kind", "unreachable potential kind");
    }

    // Analytic transform where closed forms exist; numeric for tabulated
    // samples. Real-valued: a real radial potential has a real transform
    // depending only on |q|.
    double fourier(double q) const
    {
        if (q < 0)
        {
            fail("potential.negative_momentum_transfer", "require q >= 0");
        }
        switch (kind_)
        {
            case Kind::coulomb:
                if (q == 0)
                {
                    fail("potential.coulomb_forward_divergence",
                         "Coulomb transform diverges at q = 0; use a "
                         "screened potential or exclude forward scattering");
                }
                return 4.0 * pi_ * coupling_ / (q * q);
            case Kind::yukawa:
            {
                double const mu = 1.0 / screening_length_;
                return 4.0 * pi_ * coupling_ / (q * q + mu * mu);
            }
            case Kind::gaussian:
            {
                double const w = width_;
                return strength_ * std::pow(2.0 * pi_, 1.5) * w * w * w
                       * std::exp(-0.5 * q * q * w * w);
            }
            case Kind::tabulated:
                return numeric_fourier(q, 1e-9);
        }
        fail("potential.bad_kind", "unreachable potential kind");
    }

    double fourier(Eigen::Vector3d const& q) const { return fourier(q.norm()); }

    // Radius beyond which |V| is negligible; +inf for the bare Coulomb tail.
    double range_hint() const
    {
        switch (kind_)
        {
            case Kind::coulomb:
                return std::numeric_limits<double>::infinity();
            case Kind::yukawa:
                return 50.0 * screening_length_;
            case Kind::gaussian:
                return 10.0 * width_;
            case Kind::tabulated:
                return spline_.back();
        }
        return 0;
    }

    std::string describe() const
    {
        using detail::format_param;
        switch (kind_)
        {
            case Kind::coulomb:
                return "coulomb(g=" + format_param(coupling_) + ")";
            case Kind::yukawa:
                return "yukawa(g=" + format_param(coupling_)
                       + ",screening=" + format_param(screening_length_) + ")";
            case Kind::gaussian:
                return "gaussian(V0=" + format_param(strength_)
                       + ",w=" + format_param(width_) + ")";
            case Kind::tabulated:
                return "tabulated[" + format_param(spline_.front()) + ","
                       + format_param(spline_.back()) + "]";
        }
        return "?";
    }

    double coupling() const { return coupling_; }
    double screening_length() const { return screening_length_; }
    double strength() const { return strength_; }
    double width() const { return width_; }

    // Quadrature route for the transform, split into half-oscillation
    // panels at the zeros of the sinc kernel. Fails loudly when the
    // integral does not converge (e.g. the bare Coulomb tail).
    double numeric_fourier(double q, double rel_tol) const
    {
        if (q < 0)
        {
            fail("potential.negative_momentum_transfer", "require q >= 0");
        }
        double lo = 0.0;
        double hi = range_hint();
        if (kind_ == Kind::tabulated)
        {
            lo = spline_.front();
        }

        auto integrand = [&](double r) {
            return 4.0 * pi_ * r * r * (*this)(r) * detail::sinc(q * r);
        };
        QuadratureOptions opt;
        opt.rel_tol = 5e-13;
        opt.max_depth = 40;

        bool const unbounded = !std::isfinite(hi);
        double const period = (q > 0) ? pi_ / q : 0.0;

        if (!unbounded && (q == 0.0 || hi - lo <= period))
        {
            return integrate(integrand, lo, hi, opt);
        }
        if (unbounded && q == 0.0)
        {
            fail("quadrature.no_convergence",
                 "radial transform does not converge at q = 0 for an "
                 "unscreened potential");
        }

        // Walk the kernel zeros r_n = n pi / q.
        double acc = 0.0;
        int small_run = 0;
        std::size_t const max_panels = 20000;
        double a = lo;
        std::size_t const first = static_cast<std::size_t>(
            std::max(1.0, std::ceil(lo / period)));
        for (std::size_t n = first; n < first + max_panels; ++n)
        {
            double b = static_cast<double>(n) * period;
            if (b <= a)
            {
                continue;
            }
            bool last = false;
            if (!unbounded && b >= hi)
            {
                b = hi;
                last = true;
            }
            double const contrib = integrate(integrand, a, b, opt);
            acc += contrib;
            a = b;
            if (last)
            {
                return acc;
            }
            if (unbounded)
            {
                // Converged once several consecutive half-oscillations are
                // negligible against the accumulated value.
                if (std::abs(contrib)
                    <= 0.01 * rel_tol * std::max(std::abs(acc), 1e-300))
                {
                    if (++small_run >= 3)
                    {
                        return acc;
                    }
                }
                else
                {
                    small_run = 0;
                }
            }
        }
        fail("quadrature.no_convergence",
             "radial transform did not converge within the panel budget");
    }

  private:
    explicit Potential(Kind k) : kind_(k) {}

    static constexpr double pi_ = 3.14159265358979323846;

    Kind kind_;
    double coupling_ = 0;
    double screening_length_ = 0;
    double strength_ = 0;
    double width_ = 0;
    detail::CubicSpline spline_;
};

// Free-function spelling used by tests and callers that want the
// quadrature route explicitly.
inline double fourier_numeric(Potential const& pot, double q,
                              double rel_tol = 1e-9)
{
    return pot.numeric_fourier(q, rel_tol);
}

}  // namespace cohscat

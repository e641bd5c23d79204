#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace neurite {

/// Equidistant grid of control volumes on the reference interval (0,1).
struct Grid1D {
    int n_cells = 0;
    double h = 0.0;

    static Grid1D uniform(int n) {
        if (n < 1) throw std::invalid_argument("Grid1D: n_cells must be positive");
        Grid1D g;
        g.n_cells = n;
        g.h = 1.0 / static_cast<double>(n);
        return g;
    }

    double face(int i) const { return static_cast<double>(i) / static_cast<double>(n_cells); }
    double center(int k) const { return (static_cast<double>(k) + 0.5) * h; }

    std::vector<double> face_coords() const {
        std::vector<double> f(static_cast<size_t>(n_cells) + 1);
        for (int i = 0; i <= n_cells; ++i) f[static_cast<size_t>(i)] = face(i);
        return f;
    }
    std::vector<double> center_coords() const {
        std::vector<double> c(static_cast<size_t>(n_cells));
        for (int k = 0; k < n_cells; ++k) c[static_cast<size_t>(k)] = center(k);
        return c;
    }
};

/// Plain tridiagonal operator; sub[0] and super[n-1] are unused.
struct TridiagonalOperator {
    std::vector<double> sub, diag, super;

    int size() const { return static_cast<int>(diag.size()); }

    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        const int n = size();
        for (int i = 0; i < n; ++i) {
            double v = diag[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
            if (i > 0) v += sub[static_cast<size_t>(i)] * x[static_cast<size_t>(i - 1)];
            if (i < n - 1) v += super[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 1)];
            y[static_cast<size_t>(i)] = v;
        }
    }
};

/// Central-difference diffusion operator with no-flux boundary rows:
/// interior stencil (-1, 2, -1)/h, boundary stencils (1, -1)/h.
/// The semi-discrete diffusion term of cell k is (kappa_D/L^2) (A f)_k / h.
inline TridiagonalOperator assemble_diffusion(const Grid1D& g) {
    if (g.n_cells < 3) throw std::invalid_argument("assemble_diffusion: need n_cells >= 3");
    const int n = g.n_cells;
    const double ih = 1.0 / g.h;
    TridiagonalOperator A;
    A.sub.assign(static_cast<size_t>(n), -ih);
    A.diag.assign(static_cast<size_t>(n), 2.0 * ih);
    A.super.assign(static_cast<size_t>(n), -ih);
    A.diag.front() = ih;
    A.diag.back() = ih;
    A.sub.front() = 0.0;
    A.super.back() = 0.0;
    return A;
}

/// Thomas algorithm. Solves (sub,diag,super) x = rhs in-place into x.
/// `cp` is scratch of the same size.
inline void thomas_solve(const std::vector<double>& sub, const std::vector<double>& diag,
                         const std::vector<double>& super, std::vector<double>& x,
                         std::vector<double>& cp) {
    const size_t n = diag.size();
    double denom = diag[0];
    if (denom == 0.0) throw std::runtime_error("thomas_solve: singular system");
    cp[0] = super[0] / denom;
    x[0] = x[0] / denom;
    for (size_t i = 1; i < n; ++i) {
        denom = diag[i] - sub[i] * cp[i - 1];
        if (denom == 0.0) throw std::runtime_error("thomas_solve: singular system");
        cp[i] = super[i] / denom;
        x[i] = (x[i] - sub[i] * x[i - 1]) / denom;
    }
    for (size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
}

}  // namespace neurite

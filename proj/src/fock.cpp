#include "mzsim/fock.hpp"

#include <cmath>

namespace mzsim {

double BlockUnitary::unitarity_defect() const {
    double worst = 0.0;
    for (const auto& u : blocks) {
        Eigen::MatrixXcd d = u.adjoint() * u;
        d.diagonal().array() -= 1.0;
        worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
    return worst;
}

double TwoModeState::norm_sq() const {
    double total = 0.0;
    for (const auto& b : blocks) total += b.squaredNorm();
    return total;
}

TwoModeState TwoModeState::zero(int S) {
    if (S < 0) throw ParameterError("TwoModeState: cutoff must be >= 0");
    TwoModeState psi;
    psi.blocks.reserve(S + 1);
    for (int s = 0; s <= S; ++s) psi.blocks.push_back(Eigen::VectorXcd::Zero(s + 1));
    return psi;
}

Eigen::Matrix2cd mode_beam_splitter() {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd u;
    u << Complex(r, 0), Complex(0, r), Complex(0, r), Complex(r, 0);
    return u;
}

Eigen::Matrix2cd mode_phase_shifter(double phi) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    u(0, 0) = std::polar(1.0, phi);
    return u;
}

Eigen::Matrix2cd mode_matrix(Injection injection, double phi) {
    const Eigen::Matrix2cd b = mode_beam_splitter();
    const Eigen::Matrix2cd p = mode_phase_shifter(phi);
    return injection == Injection::Full ? Eigen::Matrix2cd(b * p * b) : Eigen::Matrix2cd(b * p);
}

namespace {

// Compensated (double-double) arithmetic for the block lift. The lifted
// matrix entries are alternating polynomials in the mode-matrix entries;
// near the center of large blocks their evaluation cancels ~8 decimal
// digits, so plain doubles cannot hold the 1e-12 unitarity contract past
// cutoff ~40. Carrying ~31 digits through the recursion removes the
// evaluation error entirely; the result is exact to double rounding.
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD quick_two_sum(double a, double b) {  // requires |a| >= |b| or a == 0
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline DD dd_sub(DD a, DD b) { return dd_add(a, DD{-b.hi, -b.lo}); }

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD dd_div(DD a, DD b) {
    const double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(DD{q1, 0.0}, b));
    const double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(DD{q2, 0.0}, b));
    const double q3 = r.hi / b.hi;
    return dd_add(quick_two_sum(q1, q2), DD{q3, 0.0});
}

inline DD dd_sqrt(double x) {  // x >= 0 and exactly representable
    if (x == 0.0) return {0.0, 0.0};
    const double r = std::sqrt(x);
    DD residual = dd_sub(DD{x, 0.0}, two_prod(r, r));
    return dd_add(DD{r, 0.0}, DD{residual.hi / (2.0 * r), 0.0});
}

struct CDD {
    DD re, im;
};

inline CDD cdd_add(CDD a, CDD b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }

inline CDD cdd_mul(CDD a, CDD b) {
    return {dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im)),
            dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

inline CDD cdd_scale(CDD a, DD s) { return {dd_mul(a.re, s), dd_mul(a.im, s)}; }

inline CDD cdd_from(Complex z) { return {{z.real(), 0.0}, {z.imag(), 0.0}}; }

}  // namespace

// Build block s from block s-1 by adding one photon. Writing the one-photon
// map as a_out^dag = u00 a^dag + u10 b^dag (and likewise for b^dag), the
// matrix elements in the |j, s-j> basis satisfy
//   B_s[p][j] = (u00 sqrt(p) B_{s-1}[p-1][j-1] + u10 sqrt(s-p) B_{s-1}[p][j-1]) / sqrt(j)
// for j >= 1 and the b^dag ladder for j = 0.
BlockUnitary lift_mode_matrix(const Eigen::Matrix2cd& u, int S) {
    if (S < 0) throw ParameterError("lift_mode_matrix: cutoff must be >= 0");

    const CDD u00 = cdd_from(u(0, 0)), u01 = cdd_from(u(0, 1));
    const CDD u10 = cdd_from(u(1, 0)), u11 = cdd_from(u(1, 1));

    std::vector<DD> root(S + 1), inv_root(S + 1);
    for (int k = 0; k <= S; ++k) {
        root[k] = dd_sqrt(double(k));
        inv_root[k] = k ? dd_div(DD{1.0, 0.0}, root[k]) : DD{0.0, 0.0};
    }

    // Working blocks in extended precision, row-major (s+1) x (s+1).
    const auto at = [](std::vector<CDD>& block, int dim, int p, int j) -> CDD& {
        return block[static_cast<std::size_t>(p) * dim + j];
    };

    BlockUnitary out;
    out.blocks.reserve(S + 1);
    out.blocks.push_back(Eigen::MatrixXcd::Ones(1, 1));
    std::vector<CDD> prev{CDD{{1.0, 0.0}, {0.0, 0.0}}};
    for (int s = 1; s <= S; ++s) {
        std::vector<CDD> cur(static_cast<std::size_t>(s + 1) * (s + 1));
        for (int p = 0; p <= s; ++p) {
            CDD sum{};
            if (p >= 1) sum = cdd_scale(cdd_mul(u01, at(prev, s, p - 1, 0)), root[p]);
            if (p <= s - 1)
                sum = cdd_add(sum, cdd_scale(cdd_mul(u11, at(prev, s, p, 0)), root[s - p]));
            at(cur, s + 1, p, 0) = cdd_scale(sum, inv_root[s]);
        }
        for (int j = 1; j <= s; ++j) {
            for (int p = 0; p <= s; ++p) {
                CDD sum{};
                if (p >= 1) sum = cdd_scale(cdd_mul(u00, at(prev, s, p - 1, j - 1)), root[p]);
                if (p <= s - 1)
                    sum = cdd_add(sum,
                                  cdd_scale(cdd_mul(u10, at(prev, s, p, j - 1)), root[s - p]));
                at(cur, s + 1, p, j) = cdd_scale(sum, inv_root[j]);
            }
        }
        Eigen::MatrixXcd rounded(s + 1, s + 1);
        for (int p = 0; p <= s; ++p)
            for (int j = 0; j <= s; ++j) {
                const CDD& v = at(cur, s + 1, p, j);
                rounded(p, j) = Complex(v.re.hi, v.im.hi);
            }
        out.blocks.push_back(std::move(rounded));
        prev = std::move(cur);
    }
    return out;
}

BlockUnitary beam_splitter(int S) { return lift_mode_matrix(mode_beam_splitter(), S); }

BlockUnitary phase_shifter(double phi, int S) {
    if (S < 0) throw ParameterError("phase_shifter: cutoff must be >= 0");
    BlockUnitary out;
    out.blocks.reserve(S + 1);
    for (int s = 0; s <= S; ++s) {
        Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(s + 1, s + 1);
        for (int j = 0; j <= s; ++j) d(j, j) = std::polar(1.0, phi * j);
        out.blocks.push_back(std::move(d));
    }
    return out;
}

// The interferometer blocks are lifted from the composed 2x2 mode matrix
// rather than by multiplying lifted factors: one O(S^3) lift replaces two
// O(S^4) block products and inherits the lift's unitarity accuracy.
BlockUnitary full_mzi(double phi, int S) {
    return lift_mode_matrix(mode_matrix(Injection::Full, phi), S);
}

BlockUnitary half_mzi(double phi, int S) {
    return lift_mode_matrix(mode_matrix(Injection::Half, phi), S);
}

BlockUnitary compose(const BlockUnitary& lhs, const BlockUnitary& rhs) {
    if (lhs.cutoff() != rhs.cutoff())
        throw DimensionError("compose: block unitaries have different cutoffs");
    BlockUnitary out;
    out.blocks.reserve(lhs.blocks.size());
    for (size_t s = 0; s < lhs.blocks.size(); ++s)
        out.blocks.push_back(lhs.blocks[s] * rhs.blocks[s]);
    return out;
}

TwoModeState apply(const BlockUnitary& u, const TwoModeState& state) {
    if (state.cutoff() > u.cutoff())
        throw DimensionError("apply: state cutoff exceeds unitary cutoff");
    TwoModeState out;
    out.truncation_tail = state.truncation_tail;
    out.blocks.reserve(state.blocks.size());
    for (size_t s = 0; s < state.blocks.size(); ++s)
        out.blocks.push_back(u.blocks[s] * state.blocks[s]);
    return out;
}

}  // namespace mzsim

#include "zs/monodromy.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace zs {

namespace {

// ---------------------------------------------------------------------------
// entire functions of w = omega^2 for the sl(2) exponential
//   exp(O) = C(w) Id + S(w) O   with w = det O,
//   C(w) = cos(sqrt w),  S(w) = sin(sqrt w)/sqrt w,  S1 = dS/dw,  S2 = d2S/dw2.
// Series branch keeps everything branch-free; the cell construction keeps
// |w| <~ 1/16 so the series is the hot path.
// ---------------------------------------------------------------------------
struct TrigW {
    cd C, S, S1, S2;
};

TrigW trig_w(cd w)
{
    TrigW r;
    if (std::abs(w) < 0.35) {
        const cd t = -w;
        cd term{1.0, 0.0};
        r.C = 1.0;
        for (int k = 1; k <= 14; ++k) {
            term *= t / static_cast<double>((2 * k - 1) * (2 * k));
            r.C += term;
        }
        term = 1.0;
        r.S = 1.0;
        for (int k = 1; k <= 14; ++k) {
            term *= t / static_cast<double>((2 * k) * (2 * k + 1));
            r.S += term;
        }
        // S1 = -sum_{k>=1} k t^{k-1} / (2k+1)!,  S2 = sum_{k>=2} k(k-1) t^{k-2} / (2k+1)!
        cd s1{0.0, 0.0}, s2{0.0, 0.0};
        double fact = 6.0;  // (2k+1)! at k=1
        cd tp{1.0, 0.0};    // t^{k-1}
        for (int k = 1; k <= 14; ++k) {
            s1 += static_cast<double>(k) * tp / fact;
            tp *= t;
            fact *= (2 * k + 2) * (2 * k + 3);
        }
        fact = 120.0;  // (2k+1)! at k=2
        tp = 1.0;      // t^{k-2}
        for (int k = 2; k <= 15; ++k) {
            s2 += static_cast<double>(k) * static_cast<double>(k - 1) * tp / fact;
            tp *= t;
            fact *= (2 * k + 2) * (2 * k + 3);
        }
        r.S1 = -s1;
        r.S2 = s2;
    } else {
        const cd rt = std::sqrt(w);
        r.C = std::cos(rt);
        r.S = std::sin(rt) / rt;
        r.S1 = (r.C - r.S) / (2.0 * w);
        r.S2 = ((-0.5 * r.S - r.S1) * w - (r.C - r.S)) / (2.0 * w * w);
    }
    return r;
}

// phi values at the two Gauss nodes of every cell
struct NodeTable {
    std::vector<cd> p1a, p2a, p1b, p2b;
};

constexpr double gauss_lo = 0.5 - 0.28867513459481287;  // 1/2 - sqrt(3)/6
constexpr double gauss_hi = 0.5 + 0.28867513459481287;

void accumulate_nodes(const ModeMap& modes, int cells, double h, double offset,
                      std::vector<cd>& out)
{
    // direct phase evaluation per cell: incremental phase multiplication drifts by
    // ~ cells * eps and that drift showed up as a residual noise floor; the cost is
    // paid once per (potential, cells) and cached
    for (const auto& [n, c] : modes) {
        const double wph = 2.0 * pi * n * h;
        for (int k = 0; k < cells; ++k)
            out[k] += c * std::polar(1.0, wph * (k + offset));
    }
}

std::shared_ptr<const NodeTable> build_nodes(const Potential& p, int cells, double x)
{
    auto nt = std::make_shared<NodeTable>();
    nt->p1a.assign(cells, cd{0.0, 0.0});
    nt->p2a.assign(cells, cd{0.0, 0.0});
    nt->p1b.assign(cells, cd{0.0, 0.0});
    nt->p2b.assign(cells, cd{0.0, 0.0});
    const double h = x / cells;
    accumulate_nodes(p.modes(1), cells, h, gauss_lo, nt->p1a);
    accumulate_nodes(p.modes(2), cells, h, gauss_lo, nt->p2a);
    accumulate_nodes(p.modes(1), cells, h, gauss_hi, nt->p1b);
    accumulate_nodes(p.modes(2), cells, h, gauss_hi, nt->p2b);
    return nt;
}

std::shared_ptr<const NodeTable> nodes_for(const Potential& p, int cells, double x)
{
    // only full-period solves are cached; partial-interval solves are rare (tests)
    if (x != 1.0)
        return build_nodes(p, cells, x);

    struct Key {
        std::uint64_t fp;
        int cells;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const
        {
            return std::hash<std::uint64_t>()(k.fp * 1000003ULL + static_cast<unsigned>(k.cells));
        }
    };
    static std::mutex mu;
    static std::unordered_map<Key, std::shared_ptr<const NodeTable>, KeyHash> cache;

    const Key key{p.fingerprint(), cells};
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    auto nt = build_nodes(p, cells, x);
    std::lock_guard lock(mu);
    return cache.emplace(key, std::move(nt)).first->second;
}

inline Mat2 coeff_matrix(cd lambda, cd phi1, cd phi2)
{
    return {-iu * lambda, iu * phi1, -iu * phi2, iu * lambda};
}

// One pass over all cells.  When jets is false only M is propagated.
void propagate(const NodeTable& nt, int cells, double h, cd lambda, bool jets, Mat2& M, Mat2& dM,
               Mat2& ddM)
{
    M = Mat2::identity();
    dM = Mat2{};
    ddM = Mat2{};
    const double c4 = std::sqrt(3.0) * h * h / 12.0;

    for (int k = 0; k < cells; ++k) {
        const Mat2 A1 = coeff_matrix(lambda, nt.p1a[k], nt.p2a[k]);
        const Mat2 A2 = coeff_matrix(lambda, nt.p1b[k], nt.p2b[k]);
        const Mat2 O = (0.5 * h) * (A1 + A2) + c4 * commutator(A2, A1);

        const cd w = O.det();
        const TrigW t = trig_w(w);

        Mat2 E{t.C, 0.0, 0.0, t.C};
        E = E + t.S * O;

        if (!jets) {
            M = E * M;
            if ((k & 255) == 255 || k == cells - 1)
                M = (1.0 / std::sqrt(M.det())) * M;
            continue;
        }

        // X = dO/dlambda; the commutator with R collapses to an off-diagonal update
        const cd dp1 = nt.p1b[k] - nt.p1a[k];
        const cd dp2 = nt.p2b[k] - nt.p2a[k];
        const Mat2 X{cd{0.0, -h}, -2.0 * c4 * dp1, -2.0 * c4 * dp2, cd{0.0, h}};

        const cd u = -(O.m1 * X.m1 + O.m2 * X.m3 + O.m3 * X.m2 + O.m4 * X.m4);  // d(det O)
        const cd v = X.det();
        const cd C1 = -0.5 * t.S;
        const cd C2 = -0.5 * t.S1;

        const cd e1_id = C1 * u;
        Mat2 E1{e1_id, 0.0, 0.0, e1_id};
        E1 = E1 + (t.S1 * u) * O + t.S * X;

        const cd e2_id = C2 * u * u + 2.0 * C1 * v;
        Mat2 E2{e2_id, 0.0, 0.0, e2_id};
        E2 = E2 + (t.S2 * u * u + 2.0 * t.S1 * v) * O + (2.0 * t.S1 * u) * X;

        ddM = E * ddM + 2.0 * (E1 * dM) + E2 * M;
        dM = E * dM + E1 * M;
        M = E * M;

        // multiplication round-off makes det(M) random-walk away from 1; rescaling
        // the whole jet by det^{-1/2} pins the Wronskian without touching the flow
        if ((k & 255) == 255 || k == cells - 1) {
            const cd c = 1.0 / std::sqrt(M.det());
            M = c * M;
            if (jets) {
                dM = c * dM;
                ddM = c * ddM;
            }
        }
    }
}

struct SolveOut {
    Mat2 M, dM, ddM;
};

SolveOut solve(const Potential& p, double x, cd lambda, double tol, bool jets, int* cells_hint)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("fundamental_matrix: tol must be positive");
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("fundamental_matrix: x must lie in [0, 1]");
    if (x == 0.0)
        return {Mat2::identity(), Mat2{}, Mat2{}};

    const int base = std::max({static_cast<int>(std::ceil(x * p.grid_size())),
                               static_cast<int>(std::ceil(4.0 * std::abs(lambda) * x)), 16});
    int n0 = base;
    if (cells_hint && *cells_hint / 2 > base)
        n0 = *cells_hint / 2;

    constexpr int cell_cap = 1 << 22;
    const double scale = std::exp(std::abs(lambda.imag()) * x);

    SolveOut coarse;
    {
        auto nt = nodes_for(p, n0, x);
        propagate(*nt, n0, x / n0, lambda, jets, coarse.M, coarse.dM, coarse.ddM);
    }
    double prev_diff = std::numeric_limits<double>::infinity();
    for (int n = 2 * n0;; n *= 2) {
        if (n > cell_cap) {
            std::ostringstream msg;
            msg << "fundamental_matrix: refinement exceeded " << cell_cap
                << " cells at lambda = (" << lambda.real() << ", " << lambda.imag()
                << "), tol = " << tol;
            throw std::runtime_error(msg.str());
        }
        SolveOut fine;
        auto nt = nodes_for(p, n, x);
        propagate(*nt, n, x / n, lambda, jets, fine.M, fine.dM, fine.ddM);

        double diff = (fine.M - coarse.M).max_abs();
        if (jets) {
            diff = std::max(diff, (fine.dM - coarse.dM).max_abs());
            diff = std::max(diff, 0.5 * (fine.ddM - coarse.ddM).max_abs());
        }
        // the step is 4th order, so the fine-level error is ~ diff/15 (Richardson);
        // a level-to-level drop below 4x means the round-off floor has been reached
        // and further refinement cannot pay
        const bool converged = diff <= 3.0 * tol * scale;
        const bool at_floor = n >= 8 * base && diff >= 0.25 * prev_diff;
        if (converged || at_floor) {
            if (cells_hint)
                *cells_hint = n;
            return fine;
        }
        prev_diff = diff;
        coarse = fine;
    }
}

}  // namespace

Mat2 fundamental_matrix(const Potential& p, double x, cd lambda, double tol, int* cells_hint)
{
    return solve(p, x, lambda, tol, false, cells_hint).M;
}

MonodromyJet monodromy_jet(const Potential& p, double x, cd lambda, double tol, int* cells_hint)
{
    SolveOut s = solve(p, x, lambda, tol, true, cells_hint);
    return {s.M, s.dM, s.ddM, x, lambda};
}

cd discriminant(const Potential& p, cd lambda, double tol)
{
    return fundamental_matrix(p, 1.0, lambda, tol).trace();
}

cd antidiscriminant(const Potential& p, cd lambda, double tol)
{
    return fundamental_matrix(p, 1.0, lambda, tol).antitrace();
}

cd dirichlet_char(const Potential& p, cd lambda, double tol)
{
    return chi_d_of(fundamental_matrix(p, 1.0, lambda, tol));
}

DiscriminantJet discriminant_jet(const Potential& p, cd lambda, double tol, int* cells_hint)
{
    MonodromyJet j = monodromy_jet(p, 1.0, lambda, tol, cells_hint);
    return {j.M.trace(), j.dM.trace(), j.ddM.trace()};
}

namespace {

// int_0^x e^{d t} dt, series branch for small |d| to avoid cancellation
cd exp_integral(double x, cd d)
{
    if (std::abs(d) * x < 1e-4) {
        cd sum{1.0, 0.0}, term{1.0, 0.0};
        for (int k = 1; k <= 6; ++k) {
            term *= d * x / static_cast<double>(k + 1);
            sum += term;
        }
        return x * sum;
    }
    return (std::exp(d * x) - 1.0) / d;
}

}  // namespace

Mat2 approx_monodromy_a1(const Potential& p, double x, cd lambda)
{
    if (lambda == cd{0.0, 0.0})
        throw std::invalid_argument("approx_monodromy_a1: lambda must be nonzero");
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("approx_monodromy_a1: x must lie in [0, 1]");

    const cd two_i_lam = 2.0 * iu * lambda;

    // P(x) = int_0^x E(-2t) Phi'(t) dt, entrywise mode sums
    cd P12{0.0, 0.0}, P21{0.0, 0.0};
    for (const auto& [n, c] : p.modes(1))
        P12 += c * cd{0.0, 2.0 * pi * n} * exp_integral(x, two_i_lam + cd{0.0, 2.0 * pi * n});
    for (const auto& [n, c] : p.modes(2))
        P21 += c * cd{0.0, 2.0 * pi * n} * exp_integral(x, -two_i_lam + cd{0.0, 2.0 * pi * n});
    const Mat2 P{0.0, P12, P21, 0.0};

    // Q(x) = int_0^x phi1 phi2 dt
    cd Q{0.0, 0.0};
    for (const auto& [m, q] : convolve(p.modes(1), p.modes(2)))
        Q += m == 0 ? q * x : q * exp_integral(x, cd{0.0, 2.0 * pi * m});

    const Mat2 E = E_lambda(lambda, x);
    const Mat2 Em = E_lambda(lambda, -x);
    const Mat2 Phix = Phi_mat(p.eval(1, x), p.eval(2, x));
    const Mat2 Phi0 = Phi_mat(p.eval(1, 0.0), p.eval(2, 0.0));

    const cd inv2lam = 1.0 / (2.0 * lambda);
    const Mat2 M1 = inv2lam * (Em * Phix - E * Phi0 - E * P);
    return E + M1 + (inv2lam * Q) * (E * R_mat());
}

Mat2 iterated_series(const Potential& p, double x, cd lambda, int n_terms)
{
    if (n_terms < 0 || n_terms > 12)
        throw std::invalid_argument("iterated_series: n_terms must lie in [0, 12]");
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("iterated_series: x must lie in [0, 1]");
    if (x == 0.0 || n_terms == 0)
        return E_lambda(lambda, x);

    const int nq =
        next_pow2(std::max(4096, static_cast<int>(std::ceil(64.0 * std::abs(lambda)))));
    const double h = x / nq;

    // e^{+i lambda t_j} and the two nonzero entries of E(-t) R Phi(t)
    std::vector<cd> b12(nq + 1), b21(nq + 1), em(nq + 1);
    for (int j = 0; j <= nq; ++j) {
        const double t = j * h;
        const cd e = std::exp(iu * lambda * t);
        em[j] = e;
        b12[j] = iu * p.eval(1, t) * e;
        b21[j] = -iu * p.eval(2, t) / e;
    }

    std::vector<Mat2> cur(nq + 1), f(nq + 1), F(nq + 1);
    for (int j = 0; j <= nq; ++j)
        cur[j] = Mat2{1.0 / em[j], 0.0, 0.0, em[j]};  // E_lambda(t_j)

    Mat2 sum = cur[nq];
    for (int level = 1; level <= n_terms; ++level) {
        for (int j = 0; j <= nq; ++j)
            f[j] = Mat2{b12[j] * cur[j].m3, b12[j] * cur[j].m4, b21[j] * cur[j].m1,
                        b21[j] * cur[j].m2};
        // cumulative composite Simpson (quadratic patch at odd indices)
        F[0] = Mat2{};
        for (int j = 1; j <= nq; ++j) {
            if (j % 2 == 0)
                F[j] = F[j - 2] + (h / 3.0) * (f[j - 2] + 4.0 * f[j - 1] + f[j]);
            else
                F[j] = F[j - 1] + (h / 12.0) * (5.0 * f[j - 1] + 8.0 * f[j] - f[j + 1]);
        }
        for (int j = 0; j <= nq; ++j)
            cur[j] = Mat2{F[j].m1 / em[j], F[j].m2 / em[j], F[j].m3 * em[j], F[j].m4 * em[j]};
        sum = sum + cur[nq];
    }
    return sum;
}

}  // namespace zs

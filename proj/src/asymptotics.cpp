#include "zs/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "zs/series.hpp"

namespace zs {

ExpansionSeries marchenko_coefficients(const std::vector<cd>& I)
{
    if (I.empty())
        throw std::invalid_argument("marchenko_coefficients: need at least I_1");
    const int top = static_cast<int>(I.size());  // highest power N+1 kept in F

    PowerSeries F(top);
    cd pw{1.0, 0.0};
    for (int k = 1; k <= top; ++k) {
        pw *= 2.0 * iu;
        F[k] = iu * I[k - 1] / pw;
    }

    // zeta(z) = -F(z / (pi + z zeta(z))); each sweep fixes at least one more order
    PowerSeries zeta(top);
    PowerSeries z(top);
    z[1] = 1.0;
    for (int sweep = 0; sweep <= top + 1; ++sweep) {
        PowerSeries denom = zeta;                    // z * zeta
        for (int k = top; k >= 1; --k)
            denom[k] = denom[k - 1];
        denom[0] = pi;                               // pi + z zeta
        PowerSeries w = z * denom.inverse();         // z / (pi + z zeta)
        zeta = cd{-1.0, 0.0} * F.compose(w);
    }

    ExpansionSeries out;
    out.order = top - 1;
    out.I = I;
    out.c.resize(top);
    for (int k = 1; k <= top; ++k)
        out.c[k - 1] = zeta[k];
    return out;
}

ExpansionSeries expansion_series(const Potential& p, int order)
{
    return marchenko_coefficients(wkb_coefficients(p, order).I);
}

std::string to_string(ClaimId id)
{
    switch (id) {
        case ClaimId::mu_expansion: return "1.1";
        case ClaimId::pair_set: return "1.2i";
        case ClaimId::pair_real: return "1.2ii";
        case ClaimId::gap_set: return "1.3i";
        case ClaimId::gap_real: return "1.3ii";
        case ClaimId::crit_expansion: return "1.4i";
        case ClaimId::tau_expansion: return "1.4ii";
        case ClaimId::disc_at_mu: return "1.5i";
        case ClaimId::antidisc_at_mu: return "1.5ii";
        case ClaimId::norming_const: return "4.1";
    }
    return "?";
}

std::optional<ClaimId> parse_claim(std::string_view tag)
{
    for (ClaimId id : all_claims)
        if (to_string(id) == tag)
            return id;
    return std::nullopt;
}

double claimed_decay_power(ClaimId id, int order)
{
    switch (id) {
        case ClaimId::pair_set:
        case ClaimId::gap_set:
            return order + 0.5;
        default:
            return order + 1.0;
    }
}

cd c_series_at(const ExpansionSeries& series, int n)
{
    if (n == 0)
        throw std::invalid_argument("c_series_at: n must be nonzero");
    cd sum{0.0, 0.0};
    double pw = 1.0;
    for (std::size_t k = 0; k < series.c.size(); ++k) {
        pw /= n;
        sum += series.c[k] * pw;
    }
    return sum;
}

Prediction predict(const Potential& p, const ExpansionSeries& series, ClaimId claim, int n)
{
    if (n == 0)
        throw std::invalid_argument("predict: n must be nonzero");

    Prediction out;
    out.claim = claim;
    out.n = n;
    out.decay_power = claimed_decay_power(claim, series.order);

    const cd f1 = p.fourier_coefficient(1, -n);
    const cd f2 = p.fourier_coefficient(2, n);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;  // (-1)^n
    const cd base = n * pi + c_series_at(series, n);

    switch (claim) {
        case ClaimId::mu_expansion:
            out.value = base + 0.5 * (f1 + f2);
            break;
        case ClaimId::pair_set: {
            const cd root = std::sqrt(f1 * f2);
            out.value = base - root;
            out.value2 = base + root;
            out.set_valued = true;
            break;
        }
        case ClaimId::pair_real: {
            if (!p.is_real_type(1e-10))
                throw std::invalid_argument("predict: pair_real requires a real-type potential");
            const double root = std::sqrt(std::max(0.0, (f1 * f2).real()));
            out.value = base - root;
            out.value2 = base + root;
            break;
        }
        case ClaimId::gap_set: {
            const cd root = 2.0 * std::sqrt(f1 * f2);
            out.value = root;
            out.value2 = -root;
            out.set_valued = true;
            break;
        }
        case ClaimId::gap_real:
            if (!p.is_real_type(1e-10))
                throw std::invalid_argument("predict: gap_real requires a real-type potential");
            out.value = 2.0 * std::abs(f1);
            break;
        case ClaimId::crit_expansion:
        case ClaimId::tau_expansion:
            out.value = base;
            break;
        case ClaimId::disc_at_mu:
            out.value = 2.0 * sign;
            break;
        case ClaimId::antidisc_at_mu:
            out.value = iu * sign * (f1 - f2);
            break;
        case ClaimId::norming_const:
            out.value = iu * (f1 - f2);
            break;
    }
    return out;
}

SetMatch match_set_prediction(std::pair<cd, cd> computed, std::pair<cd, cd> predicted)
{
    const cd a1 = computed.first - predicted.first;
    const cd a2 = computed.second - predicted.second;
    const cd b1 = computed.first - predicted.second;
    const cd b2 = computed.second - predicted.first;
    const double direct = std::max(std::abs(a1), std::abs(a2));
    const double crossed = std::max(std::abs(b1), std::abs(b2));
    if (crossed < direct)
        return {true, b1, b2};
    return {false, a1, a2};
}

}  // namespace zs

#include "radef/expansion.hpp"

#include "radef/monogenics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace radef {

cplx transform_eigenvalue(int n, int ell, cplx omega, const DeformParams& p) {
    return std::exp(-omega * (n + ell / (1.0 + p.c)));
}

namespace {

// Largest n whose phi can appear in a profile with these powers.
int max_index(const MonogenicSection& s) {
    const double beta = s.params.beta(s.ell);
    int n = -1;
    for (const auto& t : s.f.terms()) n = std::max(n, 2 * static_cast<int>(std::ceil((t.power - beta) / 2.0 - 1e-9)));
    for (const auto& t : s.g.terms())
        n = std::max(n, 2 * static_cast<int>(std::ceil((t.power - beta) / 2.0 - 1e-9)) + 1);
    return n;
}

}  // namespace

Expansion Expansion::project(const SectionSum& f, double tol) {
    Expansion e(f.params());
    const DeformParams& p = f.params();
    for (const auto& part : f.parts()) {
        if ((!part.f.empty() && part.f.gaussian() != 0.5) || (!part.g.empty() && part.g.gaussian() != 0.5))
            throw std::domain_error("projection needs the Gaussian e^{-r^2/2}");
        const int n_max = max_index(part);
        for (int n = 0; n <= n_max; ++n) {
            const MonogenicSection b = phi(n, part.ell, part.idx, p);
            const double nn = phi_norm_squared(n, part.ell, p);
            const cplx a = inner_product(b, part) / std::sqrt(nn);
            if (a != cplx{}) e.add({n, part.ell, part.idx}, a);
        }
    }
    const SectionSum rest = f - e.to_sections();
    const double fn = norm(f);
    const double rn = norm(rest);
    if (rn > tol * std::max(1.0, fn))
        throw std::domain_error("input is outside the span of the basis (relative remainder " + std::to_string(rn) +
                                ")");
    return e;
}

SectionSum Expansion::to_sections() const {
    SectionSum s(params_);
    for (const auto& [i, a] : coeffs_)
        s.add(phi(i.n, i.ell, i.idx, params_), a / std::sqrt(phi_norm_squared(i.n, i.ell, params_)));
    return s;
}

double Expansion::norm_squared() const {
    double s = 0.0;
    for (const auto& [i, a] : coeffs_) s += std::norm(a);
    return s;
}

Expansion Expansion::transformed(cplx omega) const {
    Expansion out(params_);
    for (const auto& [i, a] : coeffs_) out.add(i, a * transform_eigenvalue(i.n, i.ell, omega, params_));
    return out;
}

Expansion random_expansion(const DeformParams& p, int terms, int n_max, int ell_max, unsigned long long seed) {
    std::vector<BasisIndex> slots;
    for (int ell = 0; ell <= ell_max; ++ell) {
        const int dim = static_cast<int>(monogenic_dimension(ell, p.m));
        for (int n = 0; n <= n_max; ++n)
            for (int idx = 0; idx < dim; ++idx) slots.push_back({n, ell, idx});
    }
    if (terms > static_cast<int>(slots.size())) throw std::invalid_argument("random_expansion: too many terms requested");
    std::mt19937_64 gen(seed);
    std::shuffle(slots.begin(), slots.end(), gen);
    std::normal_distribution<double> N;
    Expansion e(p);
    for (int i = 0; i < terms; ++i) e.add(slots[i], cplx(N(gen), N(gen)));
    return e;
}

}  // namespace radef

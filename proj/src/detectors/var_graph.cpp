#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ccd/detectors.hpp"
#include "ccd/numerics.hpp"
#include "ccd/sampling.hpp"

namespace ccd::detect {

double VarFit::coefficient(std::size_t source, std::size_t target, std::size_t lag) const {
    if (source >= d || target >= d) throw std::out_of_range("VarFit: series index out of range");
    if (lag < 1 || lag > Q) throw std::out_of_range("VarFit: lag out of range");
    return equations[target](static_cast<Eigen::Index>(1 + source * Q + (lag - 1)));
}

VarFit fit_var(const signals::SignalSet& s, std::size_t Q, double ridge) {
    if (!(ridge >= 0.0)) throw std::invalid_argument("fit_var: ridge must be nonnegative");
    if (Q < 1) throw std::invalid_argument("fit_var: Q must be at least 1");
    const std::size_t D = s.dims();
    if (s.length() <= D * Q + 2) throw std::invalid_argument("fit_var: series too short (need T > D*Q + 2)");

    std::vector<std::size_t> all(D);
    std::iota(all.begin(), all.end(), std::size_t{0});

    VarFit fit;
    fit.d = D;
    fit.Q = Q;
    for (std::size_t j = 0; j < D; ++j) {
        const auto emb = sampling::lag_embed(s, j, Q, all);
        const Eigen::Map<const Eigen::VectorXd> y(emb.target.data(), static_cast<Eigen::Index>(emb.target.size()));
        if (ridge == 0.0) {
            fit.equations.push_back(numerics::ols_fit(emb.matrix.values(), Eigen::VectorXd(y)).coefficients);
            continue;
        }
        // Augmented rows sqrt(ridge)·I on the lag columns solve the ridge problem by QR.
        const Eigen::MatrixXd& X = emb.matrix.values();
        const Eigen::Index n = X.rows();
        const Eigen::Index p = X.cols();
        Eigen::MatrixXd Xa = Eigen::MatrixXd::Zero(n + p - 1, p);
        Xa.topRows(n) = X;
        Xa.bottomRightCorner(p - 1, p - 1).diagonal().setConstant(std::sqrt(ridge));
        Eigen::VectorXd ya = Eigen::VectorXd::Zero(n + p - 1);
        ya.head(n) = y;
        fit.equations.push_back(numerics::ols_fit(Xa, ya).coefficients);
    }
    return fit;
}

graphs::WindowGraph var_window_graph(const signals::SignalSet& s, std::size_t Q, double ridge, double edge_threshold) {
    if (!(edge_threshold > 0.0)) throw std::invalid_argument("var_window_graph: edge_threshold must be positive");
    const auto fit = fit_var(s, Q, ridge);
    graphs::WindowGraph g(fit.d, Q);
    for (std::size_t i = 0; i < fit.d; ++i)
        for (std::size_t j = 0; j < fit.d; ++j)
            for (std::size_t q = 1; q <= Q; ++q)
                if (std::abs(fit.coefficient(i, j, q)) > edge_threshold) g.set_lagged(i, j, q);
    return g;
}

}  // namespace ccd::detect

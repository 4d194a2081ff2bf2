#include "ltrsyn/lqg.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ltrsyn/errors.hpp"
#include "ltrsyn/linalg.hpp"

namespace ltr {

std::complex<double> kbf_loop(const AugmentedPlant& plant, const Eigen::MatrixXd& S,
                              double omega) {
    const Eigen::VectorXd v = S * plant.C.transpose();
    return resolvent_output(plant.A, plant.C, v, omega);
}

StateSpaceModel build_compensator(const AugmentedPlant& plant, const Eigen::MatrixXd& S,
                                  const Eigen::MatrixXd& P, double rho) {
    const Eigen::Index N = plant.partition.total();
    if (S.rows() != N || S.cols() != N || P.rows() != N || P.cols() != N)
        throw std::invalid_argument("Riccati solutions do not match the plant order");
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw std::invalid_argument("recovery parameter rho must be positive and finite");

    StateSpaceModel K;
    K.B = S * plant.C.transpose();
    K.C = rho * (plant.B.transpose() * P);
    K.A = plant.A - plant.B * K.C - K.B * plant.C;
    K.D = Eigen::MatrixXd::Zero(1, 1);

    // separation principle: the loop interconnection must be internally stable
    Eigen::MatrixXd Acl(2 * N, 2 * N);
    Acl.topLeftCorner(N, N) = plant.A;
    Acl.topRightCorner(N, N) = plant.B * K.C;
    Acl.bottomLeftCorner(N, N) = -K.B * plant.C;
    Acl.bottomRightCorner(N, N) = K.A;
    if (!is_hurwitz(Acl))
        throw CareFailure("compensator interconnection is not internally stable");
    return K;
}

std::complex<double> loop_eval(const LqgDesign& d, LoopKind kind, double omega) {
    const auto inv1p = [omega](std::complex<double> x) {
        const std::complex<double> one_plus = 1.0 + x;
        if (std::abs(one_plus) <= 1e-14 * (1.0 + std::abs(x)))
            throw SingularEvaluation("closed loop singular at omega = " + std::to_string(omega));
        return 1.0 / one_plus;
    };
    switch (kind) {
        case LoopKind::M:
            return kbf_loop(d.aug, d.S, omega);
        case LoopKind::M0:
            return resolvent_output(d.plant.A, d.plant.C.row(0),
                                    d.S_nom * d.plant.C.transpose(), omega);
        case LoopKind::L:
            return resolvent_output(d.aug.A, d.aug.C, d.aug.B, omega) *
                   evaluate(d.compensator, omega);
        case LoopKind::G0K:
            return evaluate(d.g0, omega) * evaluate(d.compensator, omega);
        case LoopKind::S_aug:
            return inv1p(loop_eval(d, LoopKind::L, omega));
        case LoopKind::S_nom:
            return inv1p(loop_eval(d, LoopKind::G0K, omega));
        case LoopKind::KS_nom:
            return evaluate(d.compensator, omega) * inv1p(loop_eval(d, LoopKind::G0K, omega));
        case LoopKind::S_kbf:
            return inv1p(loop_eval(d, LoopKind::M, omega));
    }
    throw std::invalid_argument("unknown loop kind");
}

double recovery_gap(const LqgDesign& d, double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw std::invalid_argument("recovery_gap needs 0 < lo < hi and points >= 2");
    const double step = std::log10(hi / lo) / (points - 1);
    double gap = 0.0;
    for (int i = 0; i < points; ++i) {
        const double w = lo * std::pow(10.0, step * i);
        const double ldb = 20.0 * std::log10(std::abs(loop_eval(d, LoopKind::L, w)));
        const double mdb = 20.0 * std::log10(std::abs(loop_eval(d, LoopKind::M, w)));
        gap = std::max(gap, std::abs(ldb - mdb));
    }
    return gap;
}

namespace {

LqgDesign synthesize_from_parts(const RationalTransferFunction& g0,
                                const RationalTransferFunction& w1tf,
                                const RationalTransferFunction& w2tf, double rho) {
    LqgDesign d;
    d.g0 = g0;
    d.w1 = w1tf;
    d.w2 = w2tf;
    d.plant = realize(g0);
    d.aug = build_augmented(d.plant, realize(w1tf), realize(w2tf));

    CareProblem kbf{d.aug.A.transpose(), d.aug.C.transpose() * d.aug.C,
                    d.aug.F * d.aug.F.transpose()};
    const CareSolution s_sol = solve_care(kbf);
    d.S = s_sol.X;
    d.kbf_residual = s_sol.residual_norm;

    CareProblem lqr{d.aug.A, rho * (d.aug.B * d.aug.B.transpose()),
                    d.aug.C.transpose() * d.aug.C};
    const CareSolution p_sol = solve_care(lqr);
    d.P = p_sol.X;
    d.lqr_residual = p_sol.residual_norm;

    d.rho = rho;
    d.compensator = build_compensator(d.aug, d.S, d.P, rho);

    CareProblem nominal{d.plant.A.transpose(), d.plant.C.transpose() * d.plant.C,
                        d.plant.B * d.plant.B.transpose()};
    const CareSolution n_sol = solve_care(nominal);
    d.S_nom = n_sol.X;
    d.nominal_kbf_residual = n_sol.residual_norm;
    return d;
}

} // namespace

LqgDesign synthesize(const RationalTransferFunction& g0, const WeightingPair& lead,
                     const WeightingPair& lag, double rho) {
    return synthesize_from_parts(g0, build_w1(lead), build_w2(lag), rho);
}

LqgDesign synthesize_with_policy(const RationalTransferFunction& g0,
                                 const WeightingPair& lead, const WeightingPair& lag,
                                 const RhoPolicy& policy, double band_lo, double band_hi,
                                 RhoSelection* selection) {
    if (!policy.automatic) {
        LqgDesign d = synthesize(g0, lead, lag, policy.fixed_value);
        if (selection) {
            selection->rho = policy.fixed_value;
            selection->gap_db = recovery_gap(d, band_lo, band_hi, 60);
            selection->satisfied = selection->gap_db < policy.gap_db;
        }
        return d;
    }
    LqgDesign d;
    double gap = 0.0;
    bool ok = false;
    for (double rho = 1e8; rho <= 1e12 * 1.000001; rho *= 10.0) {
        d = synthesize(g0, lead, lag, rho);
        gap = recovery_gap(d, band_lo, band_hi, 60);
        if (gap < policy.gap_db) {
            ok = true;
            break;
        }
    }
    if (selection) {
        selection->rho = d.rho;
        selection->gap_db = gap;
        selection->satisfied = ok;
    }
    return d;
}

RationalTransferFunction to_rational(const StateSpaceModel& ss) {
    if (!ss.siso() || !ss.strictly_proper())
        throw std::invalid_argument("rational export expects a strictly proper SISO model");
    const Eigen::Index n = ss.order();
    if (n == 0)
        return {Polynomial::constant(0.0), Polynomial::constant(1.0)};

    const Eigen::VectorXcd pole_vec = balanced_eigenvalues(ss.A);
    const std::vector<std::complex<double>> poles(pole_vec.data(), pole_vec.data() + n);

    // transmission zeros: finite generalized eigenvalues of ([A B; C 0], diag(I, 0)).
    // A diagonal similarity leaves diag(I, 0) unchanged, so the pencil matrix
    // can be balanced outright before the QZ sweep.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
    M.topLeftCorner(n, n) = ss.A;
    M.topRightCorner(n, 1) = ss.B;
    M.bottomLeftCorner(1, n) = ss.C;
    balance_in_place(M);
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n + 1, n + 1);
    E.topLeftCorner(n, n).setIdentity();
    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges(M, E, true);
    if (ges.info() != Eigen::Success)
        throw NumericalError("transmission-zero computation failed");
    std::vector<std::complex<double>> zeros;
    const double beta_scale = ges.betas().cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i <= n; ++i) {
        const double beta = ges.betas()(i);
        if (std::abs(beta) > 1e-8 * std::max(1.0, beta_scale))
            zeros.push_back(ges.alphas()(i) / beta);
    }

    Polynomial den = Polynomial::from_roots(poles);
    Polynomial num = Polynomial::from_roots(zeros);

    // calibrate the gain at a frequency away from every root
    double best_omega = 1.0;
    double best_sep = -1.0;
    for (double w : {0.0, 1.0, 10.0, 100.0, 1e3, 1e4}) {
        double sep = 1e300;
        const std::complex<double> s(0.0, w);
        for (const auto& r : poles)
            sep = std::min(sep, std::abs(s - r) / (1.0 + std::abs(r)));
        for (const auto& r : zeros)
            sep = std::min(sep, std::abs(s - r) / (1.0 + std::abs(r)));
        if (sep > best_sep) {
            best_sep = sep;
            best_omega = w;
        }
    }
    const std::complex<double> s_ref(0.0, best_omega);
    const std::complex<double> target = evaluate(ss, best_omega);
    const std::complex<double> raw = num.eval(s_ref) / den.eval(s_ref);
    const double gain = (target / raw).real();
    return {num.scaled(gain), den};
}

} // namespace ltr

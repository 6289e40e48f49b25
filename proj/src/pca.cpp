#include "intent/pca.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace intent {

namespace {

PcaModel decompose(ConstMatrixRef X) {
    if (X.rows() < 2) throw std::runtime_error("PCA needs at least 2 rows");
    if (!X.allFinite()) throw std::runtime_error("PCA input contains non-finite values");

    PcaModel model;
    model.mean = X.colwise().mean();
    const MatrixXs centered = X.rowwise() - model.mean.transpose();
    const MatrixXs cov =
        centered.transpose() * centered / static_cast<double>(X.rows() - 1);

    Eigen::SelfAdjointEigenSolver<MatrixXs> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    const Eigen::Index d = cov.rows();
    model.components.resize(d, d);
    model.explained_variance.resize(d);
    // solver returns ascending eigenvalues; reverse to descending
    for (Eigen::Index j = 0; j < d; ++j) {
        const Eigen::Index src = d - 1 - j;
        model.explained_variance[j] = std::max(solver.eigenvalues()[src], 0.0);
        model.components.col(j) = solver.eigenvectors().col(src);
    }
    // sign convention: largest-magnitude entry of each component positive
    for (Eigen::Index j = 0; j < d; ++j) {
        Eigen::Index arg = 0;
        model.components.col(j).cwiseAbs().maxCoeff(&arg);
        if (model.components(arg, j) < 0.0) model.components.col(j) *= -1.0;
    }
    return model;
}

} // namespace

PcaModel pca_fit(ConstMatrixRef X, double variance_target) {
    if (!(variance_target > 0.0) || variance_target > 1.0) {
        throw std::runtime_error("PCA variance target must be in (0, 1]");
    }
    PcaModel model = decompose(X);
    const double total = model.explained_variance.sum();
    if (total <= 0.0) {
        model.k = 1; // constant data: a single (arbitrary) direction
        return model;
    }
    double cum = 0.0;
    model.k = static_cast<int>(model.explained_variance.size());
    for (Eigen::Index j = 0; j < model.explained_variance.size(); ++j) {
        cum += model.explained_variance[j];
        if (cum / total >= variance_target - 1e-12) {
            model.k = static_cast<int>(j) + 1;
            break;
        }
    }
    return model;
}

PcaModel pca_fit_k(ConstMatrixRef X, int k) {
    PcaModel model = decompose(X);
    if (k < 1 || k > model.components.cols()) {
        throw std::runtime_error("PCA component count out of range");
    }
    model.k = k;
    return model;
}

MatrixXs pca_transform(const PcaModel& model, ConstMatrixRef X) {
    if (X.cols() != model.mean.size()) {
        throw std::runtime_error("PCA transform: dimension mismatch");
    }
    const MatrixXs centered = X.rowwise() - model.mean.transpose();
    return centered * model.components.leftCols(model.k);
}

} // namespace intent

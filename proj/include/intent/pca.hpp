#pragma once

#include "intent/types.hpp"

namespace intent {

/// Principal components of the column-centered covariance, descending
/// eigenvalue order. Component signs are fixed so each column's
/// largest-magnitude entry is positive.
struct PcaModel {
    VectorXs mean;
    MatrixXs components;         // d x m, one component per column
    VectorXs explained_variance; // all m eigenvalues, non-increasing
    int k = 0;                   // retained component count
};

/// Retains the smallest k whose cumulative explained-variance ratio
/// reaches variance_target.
PcaModel pca_fit(ConstMatrixRef X, double variance_target);

PcaModel pca_fit_k(ConstMatrixRef X, int k);

MatrixXs pca_transform(const PcaModel& model, ConstMatrixRef X);

} // namespace intent

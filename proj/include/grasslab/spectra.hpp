#pragma once

#include <string>
#include <vector>

#include "grasslab/grassmann.hpp"
#include "grasslab/numeric.hpp"
#include "grasslab/qalg.hpp"

namespace grasslab::spectra {

using grassmann::GraphContext;
using gflinalg::Subspace;

struct NamedCheck {
    std::string name;
    bool pass;
};

/// Exact spectral verdict: claimed eigenvalues, derived multiplicities, and
/// the individual zero-residual checks (every comparison is exact).
struct SpectrumReport {
    std::vector<Int> eigenvalues;
    std::vector<Int> multiplicities;
    std::vector<NamedCheck> checks;

    bool all_pass() const;
    std::string to_json() const;
};

/// Lemma-level checks on the 5x5 structure matrix: the characteristic
/// polynomial splits over the five claimed integers, every printed row and
/// column eigenvector is annihilated exactly, and the diagonal-conjugation
/// transpose relation holds.
SpectrumReport verify_structure_eigen(const qalg::Params& p);

/// Local-graph spectrum via the exact 0/1 adjacency matrix: annihilating
/// polynomial over the five claimed eigenvalues, then multiplicities from the
/// traces of A^m (m = 0..4) through an exact Vandermonde solve, compared with
/// the closed table. Declines (budget_error) when the valency exceeds the
/// budget.
SpectrumReport verify_local_spectrum(const GraphContext& ctx, const Subspace& x,
                                     long valency_budget = 1500);

}  // namespace grasslab::spectra

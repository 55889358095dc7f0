#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qbayes/instruments.hpp"
#include "qbayes/qbn.hpp"

namespace qbayes::testkit {

using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Worked examples
// ---------------------------------------------------------------------------

/// |Phi+><Phi+| as a factor over (∅, {q1,q2}).
QFactor bell_state_factor(const std::string& q1 = "q1",
                          const std::string& q2 = "q2");

/// Measurement factor for outcome variable `head` controlled by coin
/// `coin` acting on `qubit`: coin=t measures in the computational basis,
/// coin=f in the Hadamard basis, outcome t picks |0> resp. |+>.
QFactor measurement_qcpt(const std::string& head, const std::string& coin,
                         const std::string& qubit);

/// Same measurement with the basis fixed to computational (no coin parent).
QFactor fixed_measurement_qcpt(const std::string& head,
                               const std::string& qubit);

/// Fair (or deterministic heads) coin.
QFactor coin_cpt(const std::string& name, double p_true = 0.5);

/// The two-coin two-measurement entangled-pair model. With
/// deterministic_coins both coins always come up t, so both parties
/// measure the computational basis.
QbnModel bell_model(bool deterministic_coins = false);

/// Four-node mixed model: a two-qubit source Q1 feeding a classically
/// controlled channel Q2 (control coin Y) and a joint two-qubit
/// measurement X.
QbnModel chained_channel_model();

/// Classic four-variable sprinkler network (classical only).
QbnModel sprinkler_model();

// ---------------------------------------------------------------------------
// Random generators (deterministic under a caller-provided RNG)
// ---------------------------------------------------------------------------

ComplexMatrix random_matrix(Rng& rng, std::size_t dim);
ComplexMatrix random_psd_matrix(Rng& rng, std::size_t dim);

/// Factor with random PSD values over the given scopes.
QFactor random_psd_factor(Rng& rng, const std::vector<std::string>& vars,
                          const std::vector<std::string>& qubits);

/// Random instrument family with the given shape; branch maps are random
/// CP maps jointly normalized to a trace-preserving sum.
InstrumentFamily random_instrument_family(
    Rng& rng, const std::vector<std::string>& outcome_vars,
    const std::vector<std::string>& parent_vars,
    const std::vector<std::string>& in_qubits,
    const std::vector<std::string>& out_qubits, std::size_t kraus_per_branch);

/// Random conditional factor for the role, built through the Choi image of
/// a random instrument family (hence always passes the normalization
/// check).
QFactor random_qcpt(Rng& rng, const QcptRole& role);

/// Random classical CPT for `head` given `parents`.
QFactor random_cpt(Rng& rng, const std::string& head,
                   const std::vector<std::string>& parents);

/// Classical-only model on the DAG encoded by `adjacency` (parent ->
/// child, upper-triangular over node indices) with random CPTs.
QbnModel classical_model_from_dag(Rng& rng,
                                  const std::vector<std::string>& names,
                                  const std::vector<std::vector<bool>>& adjacency);

/// All DAGs on n labeled nodes as adjacency matrices.
std::vector<std::vector<std::vector<bool>>> enumerate_dags(std::size_t n);

/// Random valid mixed model: a few coins, a random register layer, random
/// measurements; always validates.
QbnModel random_mixed_model(Rng& rng);

// ---------------------------------------------------------------------------
// Independent references
// ---------------------------------------------------------------------------

/// Joint distribution of a classical-only model by direct enumeration:
/// for every assignment, the product of CPT entries. Never touches the
/// factor algebra.
std::vector<double> classical_joint_by_enumeration(const QbnModel& model);

}  // namespace qbayes::testkit

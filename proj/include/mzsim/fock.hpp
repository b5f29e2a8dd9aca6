#ifndef MZSIM_FOCK_HPP
#define MZSIM_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "mzsim/errors.hpp"

namespace mzsim {

using Complex = std::complex<double>;

// Two-mode Fock space truncated at S total photons, organized in blocks of
// fixed total photon number. Block s holds the s+1 states |j, s-j> for
// j = 0..s, ordered by j ascending (j = photons in the first mode).
struct BlockBasis {
    int total_cutoff = 0;

    explicit BlockBasis(int S) : total_cutoff(S) {
        if (S < 0) throw ParameterError("BlockBasis: cutoff must be >= 0");
    }

    int block_count() const { return total_cutoff + 1; }
    static int block_dim(int s) { return s + 1; }

    // |j,k> -> (block, position). Position within block j+k is j itself.
    static std::pair<int, int> index_of(int j, int k) { return {j + k, j}; }
    // (block s, position p) -> (j, k)
    static std::pair<int, int> element_of(int s, int p) { return {p, s - p}; }
};

// A photon-number-conserving unitary, one (s+1)x(s+1) matrix per block.
struct BlockUnitary {
    std::vector<Eigen::MatrixXcd> blocks;

    int cutoff() const { return static_cast<int>(blocks.size()) - 1; }
    const Eigen::MatrixXcd& block(int s) const { return blocks[s]; }

    // max-norm of U^dag U - I over all blocks
    double unitarity_defect() const;
};

// Pure two-mode state over the same block layout. truncation_tail records
// the probability mass discarded by the cutoff, so that
// sum |amplitudes|^2 + truncation_tail == 1.
struct TwoModeState {
    std::vector<Eigen::VectorXcd> blocks;
    double truncation_tail = 0.0;

    int cutoff() const { return static_cast<int>(blocks.size()) - 1; }
    double norm_sq() const;

    static TwoModeState zero(int S);
};

enum class Injection { Full, Half };

// Single-photon (mode-basis) matrices. Convention: the balanced splitter is
// (1/sqrt2) [[1, i], [i, 1]] acting on (mode-a, mode-b) amplitudes, which
// makes the full MZI carry sin^2(phi/2) to the first output port.
Eigen::Matrix2cd mode_beam_splitter();
Eigen::Matrix2cd mode_phase_shifter(double phi);
Eigen::Matrix2cd mode_matrix(Injection injection, double phi);

// Lift a one-photon mode matrix to its induced action on every block s <= S.
BlockUnitary lift_mode_matrix(const Eigen::Matrix2cd& u, int S);

BlockUnitary beam_splitter(int S);
BlockUnitary phase_shifter(double phi, int S);
BlockUnitary full_mzi(double phi, int S);
BlockUnitary half_mzi(double phi, int S);

// Per-block matrix product: result applies rhs first, then lhs.
BlockUnitary compose(const BlockUnitary& lhs, const BlockUnitary& rhs);

// Per-block matrix-vector product. The state cutoff may not exceed the
// unitary cutoff.
TwoModeState apply(const BlockUnitary& u, const TwoModeState& state);

}  // namespace mzsim

#endif

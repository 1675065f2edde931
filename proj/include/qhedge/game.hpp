#pragma once

// Operators of the two-round hedging game.
//
// Single-game registers are qubits: X (Alice -> Bob), Y (Bob -> Alice) and Z
// (kept by Alice). Q-type operators act on (Y, X) and measurements on (Y, Z).
// Multi-game operators built here are game-major unless a ChannelBlocked
// layout is requested: game i occupies tensor slot i, i.e. (Y1 X1)(Y2 X2)...
// The channel layout (Y1 ... Yn)(X1 ... Xn) is the one a Choi matrix of a
// channel on X1...Xn lives in, and the one the SDP solver consumes.

#include "qhedge/linops.hpp"

namespace qhedge {

struct GameSpec {
    double alpha = 0.0;
    double theta = 0.0;
    int n = 1;
    int k = 1;

    void validate() const;
};

void validate_alpha(double alpha);
void validate_theta(double theta);
void validate_repetitions(int n, int k);

struct MeasurementPair {
    ComplexMatrix P0;  // losing outcome
    ComplexMatrix P1;  // winning outcome, rank one
};

struct QOperators {
    ComplexMatrix Q0;
    ComplexMatrix Q1;
    ComplexMatrix E;
    int dim_y = 2;
    int dim_x = 2;
};

enum class Layout { GameMajor, ChannelBlocked };

// u = alpha|00> + sqrt(1 - alpha^2)|11> on (X, Z).
ComplexVector initial_state(double alpha);

// v = cos(theta)|00> + sin(theta)|11> on (Y, Z); P1 = vv*, P0 = 1 - P1.
MeasurementPair measurement(double theta);

// diag(alpha, sqrt(1 - alpha^2)); Psi_rho(gamma) = M gamma M.
ComplexMatrix psi_rho_conjugator(double alpha);

QOperators build_q_operators(double alpha, double theta);

// Sum over all outcome strings with fewer than k wins of Q_{a_1} (x) ... (x) Q_{a_n}.
// For k = 1 this is Q0^{(x)n}.
ComplexMatrix objective_lose_more_than(const QOperators& q, int n, int k,
                                       Layout layout = Layout::ChannelBlocked);

// Q_{a_1} (x) ... (x) Q_{a_n} for an outcome string given as bits (bit i = game i,
// most significant first).
ComplexMatrix outcome_operator(const QOperators& q, int n, unsigned outcome_bits,
                               Layout layout = Layout::ChannelBlocked);

// Reorders (Y1 X1)...(Yn Xn) into (Y1 ... Yn)(X1 ... Xn).
ComplexMatrix game_major_to_blocked(const ComplexMatrix& m, int n, int dim_y, int dim_x);

// Inverse of game_major_to_blocked.
ComplexMatrix blocked_to_game_major(const ComplexMatrix& m, int n, int dim_y, int dim_x);

// Factor permutation taking an interleaved (A1 B1)...(An Bn) register to
// (A1 ... An)(B1 ... Bn), in the convention of permute_subsystems.
std::vector<int> interleaved_to_blocked_perm(int n);
std::vector<int> blocked_to_interleaved_perm(int n);

}  // namespace qhedge

#pragma once

#include "varjacobi/frame_trajectory.hpp"

#include <string>
#include <vector>

namespace varjacobi {

enum class SymplecticClass {
  Isotropic,
  Lagrangian,
  Coisotropic,
  Full,
  None,
};

std::string symplectic_class_string(SymplecticClass c);

// Jets of the curve frame at one time: jets[j] is the 2kn x n matrix whose
// columns are the j-th derivatives of the frame columns. jets[0] consists of
// the first n columns of Psi(t)^T, and for j <= k-1 the j-th jet equals
// columns jn..(j+1)n-1 of Psi(t)^T.
struct FrameJetStack {
  double t = 0.0;
  Eigen::Index dim_n = 0;
  std::vector<Eigen::MatrixXd> jets;

  Eigen::Index half_dim() const {  // kn
    return jets.empty() ? 0 : jets.front().rows() / 2;
  }
  int order_k() const {
    return dim_n == 0 ? 0 : static_cast<int>(half_dim() / dim_n);
  }
};

// Exact jets via the frame recursion: with M = Psi^T, M' = M H^T, so
// M^(j) = M G_j where G_0 = I and G_{j+1} = H^T G_j + G_j' (the Leibniz
// expansion uses the exact polynomial derivatives of H; no finite
// differences anywhere).
FrameJetStack frame_jet(const FrameTrajectory& traj, std::size_t t_index,
                        int max_order);
FrameJetStack frame_jet_at(const FrameTrajectory& traj, double t,
                           int max_order);

// rank(A | A' | ... | A^(k)) - kn by SVD with a relative threshold.
int curve_rank(const FrameJetStack& stack, double rank_tol = 1e-8);

struct FanningResult {
  bool is_fanning = false;
  double condition_number = 0.0;
};

// Invertibility of the square juxtaposition (A | ... | A^(2k-1)).
FanningResult fanning_check(const FrameJetStack& stack,
                            double cond_limit = 1e10);

// Classification of span(A | ... | A^(i)) against the symplectic form:
// isotropic, lagrangian (isotropic of dimension kn), coisotropic (symplectic
// orthogonal contained in the span, tested by kernel containment), or full.
SymplecticClass classify_symplectic(const FrameJetStack& stack, int order_i,
                                    double tol = 1e-8);

std::vector<SymplecticClass> flag_profile(const FrameJetStack& stack,
                                          double tol = 1e-8);

// dim of the intersection of span(A | ... | A^(k-1)) with the vertical space
// = kn - rank of the top kn x kn block.
int vertical_intersection_dim(const FrameJetStack& stack,
                              double rank_tol = 1e-8);

}  // namespace varjacobi

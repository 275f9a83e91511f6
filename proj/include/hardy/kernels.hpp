#pragma once

#include <vector>

#include "hardy/mesh.hpp"

/// Mesh evaluation of the characterizing constants. Every function returns
/// the natural logarithm of the value (-inf for zero, +inf for divergence).
/// Exec::parallel spreads rows over OpenMP threads; rows are reduced in
/// index order, so both modes return bit-identical results.
namespace hardy::kernels {

enum class Exec { serial, parallel };

/// log(exp(a) + exp(b)).
double lse(double a, double b);
/// log of (A_l^k - A_r^k) / k, with la_l = log A_l, la_r = log A_r and
/// d = la_l - la_r supplied separately (it is known more accurately than the
/// difference). This is the Stieltjes mass of A^{k-1} over a cell when A is a
/// tail integral; k may be negative.
double log_mass_pow(double la_l, double la_r, double d, double k);

/// Row i of V: log V_r(x_i, x_c) for c >= i; entry i holds log V_r(x_i, x_i+).
void v_row(const NodeTable& t, int i, std::vector<double>& out);
/// Column j of V: log V_r(x_c, x_j) for c <= j; entry j holds the limit
/// from the left, log V_r(x_j-, x_j).
void v_col(const NodeTable& t, int j, std::vector<double>& out);

/// log int_{x_i}^{hi} U^alpha u V_r(x_i, t)^alpha dt for every node i.
std::vector<double> inner_u(const NodeTable& t, double alpha, Exec ex);
/// log int_{lo}^{x_j} W^-beta w V_r(t, x_j)^gamma dt for every node j.
std::vector<double> inner_w(const NodeTable& t, double beta, double gamma,
                            Exec ex);

double c1(const NodeTable& t, double p, double q, Exec ex);
double c2(const NodeTable& t, double p, double q, Exec ex);
double c3(const NodeTable& t, double p, double q, Exec ex);
double c4(const NodeTable& t, double p, double q, Exec ex);
double c5(const NodeTable& t, double p, double q, Exec ex);
double c6(const NodeTable& t, double p, double q, Exec ex);
double c7(const NodeTable& t, double p, double q, Exec ex);

/// The two summands of script C5 (the second is -inf when W(lo) = inf).
struct TwoTerms {
  double first;
  double second;
};
TwoTerms script_c5(const NodeTable& t, double p, double q, Exec ex);
double script_c6(const NodeTable& t, double p, double q, Exec ex);

/// H over a closed mesh whose first node is the left end x: the supremum
/// branch (q >= 1) and the integral branch (q < 1).
double h_sup(const NodeTable& t, double q);
double h_int(const NodeTable& t, double q);

/// Direct transcriptions of the same mesh formulas in linear arithmetic,
/// recomputing every V_r and tail from cell masses inside the loops.
/// Quartic in the node count; meant for small meshes in tests.
namespace reference {
double c1(const NodeTable& t, double p, double q);
double c2(const NodeTable& t, double p, double q);
double c3(const NodeTable& t, double p, double q);
double c4(const NodeTable& t, double p, double q);
double c5(const NodeTable& t, double p, double q);
double c6(const NodeTable& t, double p, double q);
double c7(const NodeTable& t, double p, double q);
TwoTerms script_c5(const NodeTable& t, double p, double q);
double script_c6(const NodeTable& t, double p, double q);
double h_sup(const NodeTable& t, double q);
double h_int(const NodeTable& t, double q);
}  // namespace reference

}  // namespace hardy::kernels
